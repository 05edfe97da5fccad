"""Benchmark the numba and numpy paths of the hot kernels.

Usage:
    python benchmarks/bench_kernels.py

Times packed GF(2) elimination and the minimum-weight Gray-code enumeration
on synthetic inputs and on the distance computation of the L x L toric
family.  Both paths must agree on every output; a mismatch aborts the run.
Set CSSLIFT_NO_NUMBA=1 to check what the fallback alone feels like.
"""

from __future__ import annotations

import time

import numpy as np

from csslift import _kernels
from csslift.gf2 import BitMatrix, kernel_basis, rref
from csslift.hgp import hypergraph_product, repetition_check_matrix


def _time(fn, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_rref():
    impls = _kernels.kernel_impls()["rref"]
    rng = np.random.default_rng(12345)
    print("\npacked reduced row echelon form")
    print(f"{'shape':>14} " + " ".join(f"{name:>12}" for name in impls))
    for rows, cols in ((64, 256), (256, 1024), (512, 4096)):
        words = _kernels.pack_rows(rng.integers(0, 2, size=(rows, cols), dtype=np.uint8))
        times = {}
        ranks = {}
        for name, impl in impls.items():
            work = words.copy()
            pivots = np.full(min(rows, cols), -1, dtype=np.int64)
            impl(work, cols, pivots)  # warm-up (JIT compile)
            def run():
                w = words.copy()
                p = np.full(min(rows, cols), -1, dtype=np.int64)
                return impl(w, cols, p)
            times[name], ranks[name] = _time(run)
        assert len(set(int(r) for r in ranks.values())) == 1, "rank mismatch"
        print(
            f"{rows:>6}x{cols:<7} "
            + " ".join(f"{times[name] * 1e3:>10.2f}ms" for name in impls)
        )


def bench_min_weight():
    impls = _kernels.kernel_impls()["min_weight"]
    rng = np.random.default_rng(999)
    print("\nminimum weight over a kernel span (Gray-code enumeration)")
    print(f"{'dim x n':>14} " + " ".join(f"{name:>12}" for name in impls))
    for dim, n in ((14, 64), (18, 64), (20, 128)):
        basis = rng.integers(0, 2, size=(dim, n), dtype=np.uint8)
        resid = rng.integers(0, 2, size=(dim, n), dtype=np.uint8)
        packed_b = _kernels.pack_rows(basis)
        packed_r = _kernels.pack_rows(resid)
        times = {}
        values = {}
        for name, impl in impls.items():
            if name == "numba":
                impl(packed_b, packed_r)  # warm-up
                times[name], values[name] = _time(lambda: impl(packed_b, packed_r), 1)
            else:
                times[name], values[name] = _time(lambda: impl(basis, resid), 1)
        assert len(set(int(v) for v in values.values())) == 1, "weight mismatch"
        print(
            f"{dim:>6}x{n:<7} "
            + " ".join(f"{times[name] * 1e3:>10.2f}ms" for name in impls)
        )


def bench_toric_distance():
    from csslift.css import distance

    print("\nend-to-end toric distance (active path: "
          f"{'numba' if _kernels.USE_NUMBA else 'numpy'})")
    lengths = (3, 4, 5) if _kernels.USE_NUMBA else (3, 4)
    for length in lengths:
        rep = repetition_check_matrix(length)
        code = hypergraph_product(rep, rep)
        elapsed, d = _time(lambda: distance(code, budget=1 << 28), 1)
        print(f"  L={length}: d={d} in {elapsed * 1e3:.1f}ms (n={code.n})")


if __name__ == "__main__":
    print(f"numba available and enabled: {_kernels.USE_NUMBA}")
    bench_rref()
    bench_min_weight()
    bench_toric_distance()
