#!/usr/bin/env python3
"""Compare the compiled kernels against the NumPy fallback.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from asrtk._kernels import _fallback, design

try:
    from asrtk._kernels import _core
except ImportError:
    _core = None


def timeit(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_edit_matrix(repeats: int):
    rng = np.random.default_rng(0)
    cases = {
        "edit 100x100 utterance pair": [
            (rng.integers(0, 30, 100).astype(np.int32), rng.integers(0, 30, 100).astype(np.int32))
        ],
        "edit 2000 pairs of 40x40": [
            (rng.integers(0, 30, 40).astype(np.int32), rng.integers(0, 30, 40).astype(np.int32))
            for _ in range(2000)
        ],
        "edit 1000x1000 document pair": [
            (rng.integers(0, 30, 1000).astype(np.int32), rng.integers(0, 30, 1000).astype(np.int32))
        ],
    }
    for name, pairs in cases.items():
        def run(impl):
            def f():
                for ref, hyp in pairs:
                    impl.edit_matrix(ref, hyp)
            return f

        fallback_t = timeit(run(_fallback), repeats)
        if _core is not None:
            core_t = timeit(run(_core), repeats)
            yield name, core_t, fallback_t
        else:
            yield name, None, fallback_t


def bench_sinc(repeats: int):
    rng = np.random.default_rng(1)
    for seconds in (10, 60):
        x = rng.uniform(-0.5, 0.5, 48000 * seconds)
        filt = design(48000, 16000)
        n_out = len(x) // 3

        def run(impl):
            return lambda: impl.sinc_mix(x, n_out, filt.step, filt.table, filt.half_width)

        fallback_t = timeit(run(_fallback), repeats)
        if _core is not None:
            core_t = timeit(run(_core), repeats)
            yield f"resample {seconds}s 48k->16k", core_t, fallback_t
        else:
            yield f"resample {seconds}s 48k->16k", None, fallback_t


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if _core is None:
        print("compiled extension not available; timing fallback only\n")

    header = f"{'case':<32} {'cython':>10} {'numpy':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, core_t, fallback_t in (*bench_edit_matrix(args.repeats), *bench_sinc(args.repeats)):
        if core_t is None:
            print(f"{name:<32} {'n/a':>10} {fallback_t * 1e3:>8.2f}ms {'':>8}")
        else:
            print(
                f"{name:<32} {core_t * 1e3:>8.2f}ms {fallback_t * 1e3:>8.2f}ms"
                f" {fallback_t / core_t:>7.1f}x"
            )


if __name__ == "__main__":
    main()
