"""asrtk: corpus preparation, augmentation, and evaluation for low-resource ASR."""

from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
