import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Source tree without Cython: the package falls back to the pure-Python
    # kernels at import time, so build without the extension.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "asrtk._kernels._core",
                ["src/asrtk/_kernels/_core.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
