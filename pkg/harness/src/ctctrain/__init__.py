"""ctctrain: thin CTC fine-tuning driver over asrtk corpus manifests."""

from .spec import TrainSpec

__version__ = "0.1.0"

__all__ = ["TrainSpec", "__version__"]
