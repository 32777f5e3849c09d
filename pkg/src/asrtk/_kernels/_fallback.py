"""NumPy implementations of the hot kernels.

Used when the compiled extension is unavailable (or forced via
``ASRTK_KERNEL=python``).  Results match the compiled backend exactly for
the integer edit-distance matrix and to float round-off for resampling.
"""

from __future__ import annotations

import numpy as np

from .filters import PHASES

_CHUNK = 2048


def edit_matrix(ref: np.ndarray, hyp: np.ndarray) -> np.ndarray:
    """Full Levenshtein DP matrix with unit costs.

    Row i is derived from row i-1 in two vectorized passes.  The
    left-to-right insertion recurrence dp[j] = min(c[j], dp[j-1] + 1)
    unrolls to dp[j] = j + min_{k<=j}(c[k] - k), a running minimum.
    """
    n = ref.shape[0]
    m = hyp.shape[0]
    dp = np.empty((n + 1, m + 1), dtype=np.int32)
    dp[0] = np.arange(m + 1, dtype=np.int32)
    if n == 0 or m == 0:
        dp[:, 0] = np.arange(n + 1, dtype=np.int32)
        return dp
    offsets = np.arange(m + 1, dtype=np.int32)
    cand = np.empty(m + 1, dtype=np.int32)
    for i in range(1, n + 1):
        cand[0] = i
        np.add(dp[i - 1, :-1], ref[i - 1] != hyp, out=cand[1:], casting="unsafe")
        np.minimum(cand[1:], dp[i - 1, 1:] + 1, out=cand[1:])
        dp[i] = np.minimum.accumulate(cand - offsets) + offsets
    return dp


def sinc_mix(
    x: np.ndarray,
    n_out: int,
    step: float,
    table: np.ndarray,
    half_width: int,
) -> np.ndarray:
    """Band-limited interpolation of ``x`` at offsets n*step, n < n_out."""
    n_in = x.shape[0]
    out = np.empty(n_out, dtype=np.float64)
    taps = np.arange(1 - half_width, half_width + 1, dtype=np.int64)
    for start in range(0, n_out, _CHUNK):
        stop = min(start + _CHUNK, n_out)
        t = np.arange(start, stop, dtype=np.float64) * step
        base = np.floor(t).astype(np.int64)
        k = base[:, None] + taps[None, :]
        pos = np.abs(t[:, None] - k) * PHASES
        idx = pos.astype(np.int64)
        frac = pos - idx
        w = table[idx] + frac * (table[idx + 1] - table[idx])
        valid = (k >= 0) & (k < n_in)
        xv = np.where(valid, x[np.clip(k, 0, n_in - 1)], 0.0)
        out[start:stop] = np.einsum("ij,ij->i", xv, w)
    return out
