"""Hot kernels: bit-packed GF(2) elimination and minimum-weight enumeration.

Two interchangeable implementations exist for each kernel: a numba-compiled
loop version and a pure-numpy one.  The numba path is selected at import time
unless the environment variable ``CSSLIFT_NO_NUMBA`` is set to ``1``/``true``
(or numba is unavailable).  Both paths are bit-for-bit deterministic and must
produce identical results; the test suite asserts this and
``benchmarks/bench_kernels.py`` compares their speed.

Packing convention: a row of ``n`` bits occupies ``ceil(n/64)`` uint64 words,
bit ``j`` stored in word ``j // 64`` at position ``j % 64`` (LSB first).
Trailing padding bits are always zero.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_FLAG = "CSSLIFT_NO_NUMBA"


def _numba_disabled() -> bool:
    return os.environ.get(_ENV_FLAG, "").strip().lower() in {"1", "true", "yes"}


USE_NUMBA = False
if not _numba_disabled():
    try:
        from numba import njit

        USE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

WORD_BITS = 64

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)
_U56 = np.uint64(56)


def pack_rows(dense) -> np.ndarray:
    """Pack a dense 0/1 array of shape (m, n) into (m, ceil(n/64)) uint64 words."""
    dense = np.asarray(dense, dtype=np.uint64) & _ONE
    m, n = dense.shape
    nwords = (n + WORD_BITS - 1) // WORD_BITS
    padded = np.zeros((m, nwords * WORD_BITS), dtype=np.uint64)
    padded[:, :n] = dense
    shifts = np.arange(WORD_BITS, dtype=np.uint64)
    return (padded.reshape(m, nwords, WORD_BITS) << shifts).sum(
        axis=2, dtype=np.uint64
    )


def unpack_rows(words: np.ndarray, ncols: int) -> np.ndarray:
    """Inverse of pack_rows; returns a (m, ncols) uint8 array."""
    m, nwords = words.shape
    shifts = np.arange(WORD_BITS, dtype=np.uint64)
    bits = (words[:, :, None] >> shifts) & _ONE
    return bits.reshape(m, nwords * WORD_BITS)[:, :ncols].astype(np.uint8)


# ---------------------------------------------------------------------------
# Reduced row echelon form on packed words.
#
# Pivot rule (fixed for reproducibility): leftmost nonzero column, topmost
# unprocessed row; pivot columns are cleared above and below.


def _rref_packed_loops(a, ncols, pivots):
    m = a.shape[0]
    nwords = a.shape[1]
    rank = 0
    for col in range(ncols):
        w = col // 64
        b = np.uint64(col % 64)
        piv = -1
        for i in range(rank, m):
            if (a[i, w] >> b) & _ONE:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(nwords):
                tmp = a[piv, k]
                a[piv, k] = a[rank, k]
                a[rank, k] = tmp
        for i in range(m):
            if i != rank and ((a[i, w] >> b) & _ONE):
                for k in range(nwords):
                    a[i, k] ^= a[rank, k]
        pivots[rank] = col
        rank += 1
        if rank == m:
            break
    return rank


def _rref_packed_numpy(a, ncols, pivots):
    m = a.shape[0]
    rank = 0
    for col in range(ncols):
        w = col // 64
        b = np.uint64(col % 64)
        colbits = (a[:, w] >> b) & _ONE
        hits = np.nonzero(colbits[rank:])[0]
        if hits.size == 0:
            continue
        piv = rank + int(hits[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
            colbits[[rank, piv]] = colbits[[piv, rank]]
        mask = colbits == _ONE
        mask[rank] = False
        a[mask] ^= a[rank]
        pivots[rank] = col
        rank += 1
        if rank == m:
            break
    return rank


# ---------------------------------------------------------------------------
# Minimum weight over the span of a kernel basis, excluding a row space.
#
# Vectors are enumerated in Gray-code order: step i flips basis row ctz(i).
# Alongside the running combination ``c`` we track ``s``, the same combination
# of residuals (basis rows reduced by the row space's RREF).  Reduction by a
# fixed RREF is linear, so ``s == 0`` iff ``c`` lies in the row space.


def _min_weight_loops(kernel_words, resid_words):
    m = kernel_words.shape[0]
    nwords = kernel_words.shape[1]
    c = np.zeros(nwords, dtype=np.uint64)
    s = np.zeros(nwords, dtype=np.uint64)
    best = np.int64(-1)
    total = np.int64(1) << np.int64(m)
    for i in range(1, total):
        j = 0
        ii = i
        while ii & 1 == 0:
            ii >>= 1
            j += 1
        outside = False
        for k in range(nwords):
            c[k] ^= kernel_words[j, k]
            s[k] ^= resid_words[j, k]
            if s[k] != 0:
                outside = True
        if outside:
            w = np.int64(0)
            for k in range(nwords):
                x = c[k]
                x = x - ((x >> _ONE) & _M1)
                x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
                x = (x + (x >> np.uint64(4))) & _M4
                w += np.int64((x * _H01) >> _U56)
            if best < 0 or w < best:
                best = w
    return best


def _min_weight_numpy(kernel_dense, resid_dense):
    m = kernel_dense.shape[0]
    total = 1 << m
    best = -1
    chunk = 1 << 16
    exps = np.arange(m, dtype=np.uint64)
    kern = kernel_dense.astype(np.uint8)
    resid = resid_dense.astype(np.uint8)
    for start in range(1, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.uint64)
        # selector bits of each enumerated combination, shape (block, m)
        bits = ((idx[:, None] >> exps[None, :]) & np.uint64(1)).astype(np.uint8)
        combo = bits @ kern  # sums < 256 for m <= 27, so uint8 is exact
        outside = (((bits @ resid) & 1) != 0).any(axis=1)
        if not outside.any():
            continue
        weights = (combo & 1).sum(axis=1, dtype=np.int64)[outside]
        block_best = int(weights.min())
        if best < 0 or block_best < best:
            best = block_best
    return best


if USE_NUMBA:
    _rref_packed_jit = njit(cache=True)(_rref_packed_loops)
    _min_weight_jit = njit(cache=True)(_min_weight_loops)


def rref_packed(words: np.ndarray, ncols: int):
    """Reduced row echelon form in place; returns (rank, pivot column array)."""
    m = words.shape[0]
    pivots = np.full(min(m, ncols) if ncols else 0, -1, dtype=np.int64)
    if m == 0 or ncols == 0:
        return 0, pivots[:0]
    if USE_NUMBA:
        rank = _rref_packed_jit(words, ncols, pivots)
    else:
        rank = _rref_packed_numpy(words, ncols, pivots)
    return int(rank), pivots[:rank]


def min_weight_outside_rowspace(
    kernel_words: np.ndarray,
    resid_words: np.ndarray,
    kernel_dense: np.ndarray,
    resid_dense: np.ndarray,
) -> int:
    """Minimum Hamming weight over span(kernel) \\ rowspace, or -1 if empty.

    ``resid_*`` holds each kernel basis row reduced by the row space's RREF.
    The packed pair feeds the numba path, the dense pair the numpy path.
    """
    if kernel_words.shape[0] == 0:
        return -1
    if USE_NUMBA:
        return int(_min_weight_jit(kernel_words, resid_words))
    return int(_min_weight_numpy(kernel_dense, resid_dense))


def popcount_words(words: np.ndarray) -> np.ndarray:
    """Per-row popcount of packed words."""
    return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)


def kernel_impls():
    """Expose both implementations of each kernel (for tests and benchmarks)."""
    impls = {
        "rref": {"numpy": _rref_packed_numpy},
        "min_weight": {"numpy": _min_weight_numpy},
    }
    if USE_NUMBA:
        impls["rref"]["numba"] = _rref_packed_jit
        impls["min_weight"]["numba"] = _min_weight_jit
    return impls
