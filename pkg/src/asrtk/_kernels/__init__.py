"""Kernel backend selection.

The compiled Cython extension is preferred; the NumPy fallback is used when
it is missing or when ``ASRTK_KERNEL=python`` is set.  Both expose the same
two functions:

- ``edit_matrix(ref_ids, hyp_ids)``: int32 Levenshtein DP matrix
- ``sinc_mix(x, n_out, step, table, half_width)``: windowed-sinc resampling
"""

import os

from .filters import SincFilter, design

if os.environ.get("ASRTK_KERNEL", "").lower() == "python":
    from . import _fallback as _impl

    BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        from . import _fallback as _impl  # type: ignore[no-redef]

        BACKEND = "python"

edit_matrix = _impl.edit_matrix
sinc_mix = _impl.sinc_mix

__all__ = ["BACKEND", "SincFilter", "design", "edit_matrix", "sinc_mix"]
