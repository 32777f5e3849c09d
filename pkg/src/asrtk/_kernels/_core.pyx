# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Levenshtein DP fill and windowed-sinc mixing."""

from libc.math cimport ceil, fabs, floor

import numpy as np

cimport numpy as cnp

from .filters import PHASES

cnp.import_array()


def edit_matrix(const cnp.int32_t[::1] ref, const cnp.int32_t[::1] hyp):
    """Full Levenshtein DP matrix with unit costs, dtype int32."""
    cdef Py_ssize_t n = ref.shape[0]
    cdef Py_ssize_t m = hyp.shape[0]
    dp_arr = np.empty((n + 1, m + 1), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] dp = dp_arr
    cdef Py_ssize_t i, j
    cdef cnp.int32_t sub, best, up, left
    for j in range(m + 1):
        dp[0, j] = <cnp.int32_t> j
    for i in range(1, n + 1):
        dp[i, 0] = <cnp.int32_t> i
        for j in range(1, m + 1):
            sub = dp[i - 1, j - 1] + (ref[i - 1] != hyp[j - 1])
            up = dp[i - 1, j] + 1
            left = dp[i, j - 1] + 1
            best = sub
            if up < best:
                best = up
            if left < best:
                best = left
            dp[i, j] = best
    return dp_arr


def sinc_mix(
    const double[::1] x,
    Py_ssize_t n_out,
    double step,
    const double[::1] table,
    Py_ssize_t half_width,
):
    """Band-limited interpolation of ``x`` at offsets n*step, n < n_out."""
    cdef Py_ssize_t n_in = x.shape[0]
    out_arr = np.empty(n_out, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t n, k, k0, k1, idx
    cdef double t, acc, pos, frac, w
    cdef double phases = <double> PHASES
    for n in range(n_out):
        t = n * step
        k0 = <Py_ssize_t> ceil(t - half_width)
        k1 = <Py_ssize_t> floor(t + half_width)
        if k0 < 0:
            k0 = 0
        if k1 > n_in - 1:
            k1 = n_in - 1
        acc = 0.0
        for k in range(k0, k1 + 1):
            pos = fabs(t - k) * phases
            idx = <Py_ssize_t> pos
            frac = pos - idx
            w = table[idx] + frac * (table[idx + 1] - table[idx])
            acc += x[k] * w
        out[n] = acc
    return out_arr
