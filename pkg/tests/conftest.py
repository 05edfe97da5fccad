"""Shared fixtures: golden matrices and independent oracles.

The oracles here deliberately avoid the package's packed-word machinery:
they run Gaussian elimination on Python int bitsets, so every frozen value
in the tests has an independent derivation path.
"""

from __future__ import annotations

import numpy as np
import pytest

from csslift.gf2 import BitMatrix
from csslift.intmat import IntMatrix

# Point-line incidence matrix of the Fano plane (rows: lines, cols: points)
# and the Hamming parity-check matrix labelling its points.
FANO_HZ = [
    [1, 0, 1, 0, 0, 0, 1],
    [0, 1, 0, 0, 1, 0, 1],
    [1, 0, 0, 0, 1, 1, 0],
    [0, 1, 1, 0, 0, 1, 0],
    [1, 1, 0, 1, 0, 0, 0],
    [0, 0, 1, 1, 1, 0, 0],
    [0, 0, 0, 1, 0, 1, 1],
]

FANO_HX = [
    [1, 1, 1, 0, 1, 0, 0],
    [1, 1, 0, 0, 0, 1, 1],
    [1, 0, 1, 1, 0, 1, 0],
]

# Two-qubit toy code with a known integer lift whose entries are not all +-1.
TOY_HX = [[1, 1], [1, 1]]
TOY_HZ = [[1, 1]]
TOY_HX_TILDE = [[-3, 1], [-3, 1]]
TOY_HZ_TILDE = [[1, 3]]


def oracle_rank_mod2(rows) -> int:
    """GF(2) rank via elimination on int bitsets (independent of BitMatrix)."""
    work = [int("".join(str(int(b) & 1) for b in reversed(row)), 2) if any(row) else 0 for row in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(work)) if (work[i] >> col) & 1), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for i in range(len(work)):
            if i != rank and (work[i] >> col) & 1:
                work[i] ^= work[rank]
        rank += 1
    return rank


def oracle_in_rowspan_mod2(rows, vec) -> bool:
    base = oracle_rank_mod2(rows) if rows else 0
    return oracle_rank_mod2(list(rows) + [list(vec)]) == base


def oracle_distance(hx_rows, hz_rows):
    """Minimum distance by enumerating the full kernel spans with int bitsets."""
    n = len(hx_rows[0]) if hx_rows else len(hz_rows[0])

    def bits_of(row):
        return sum((int(b) & 1) << j for j, b in enumerate(row))

    def kernel_span_min(h_rows, other_rows):
        h = [bits_of(r) for r in h_rows]
        other = [bits_of(r) for r in other_rows]
        # kernel basis by elimination over columns
        work = list(h)
        pivots = []
        rank = 0
        for col in range(n):
            piv = next((i for i in range(rank, len(work)) if (work[i] >> col) & 1), None)
            if piv is None:
                continue
            work[rank], work[piv] = work[piv], work[rank]
            for i in range(len(work)):
                if i != rank and (work[i] >> col) & 1:
                    work[i] ^= work[rank]
            pivots.append(col)
            rank += 1
        free = [c for c in range(n) if c not in pivots]
        basis = []
        for f in free:
            v = 1 << f
            for r, p in enumerate(pivots):
                if (work[r] >> f) & 1:
                    v |= 1 << p
            basis.append(v)
        # row-space reducer for the other side
        redu = list(other)
        rpivots = []
        rrank = 0
        for col in range(n):
            piv = next((i for i in range(rrank, len(redu)) if (redu[i] >> col) & 1), None)
            if piv is None:
                continue
            redu[rrank], redu[piv] = redu[piv], redu[rrank]
            for i in range(len(redu)):
                if i != rrank and (redu[i] >> col) & 1:
                    redu[i] ^= redu[rrank]
            rpivots.append(col)
            rrank += 1

        def in_span(v):
            for r, p in enumerate(rpivots):
                if (v >> p) & 1:
                    v ^= redu[r]
            return v == 0

        best = None
        cur = 0
        for i in range(1, 1 << len(basis)):
            j = (i & -i).bit_length() - 1
            cur ^= basis[j]
            if not in_span(cur):
                w = bin(cur).count("1")
                if best is None or w < best:
                    best = w
        return best

    dz = kernel_span_min(hx_rows, hz_rows)
    dx = kernel_span_min(hz_rows, hx_rows)
    if dz is None and dx is None:
        return None
    return min(w for w in (dx, dz) if w is not None)


@pytest.fixture
def fano_code():
    from csslift.css import new_css

    return new_css(BitMatrix.from_dense(FANO_HX), BitMatrix.from_dense(FANO_HZ))


@pytest.fixture
def toy_code():
    from csslift.css import new_css

    return new_css(BitMatrix.from_dense(TOY_HX), BitMatrix.from_dense(TOY_HZ))


@pytest.fixture
def toy_zlift(toy_code):
    from csslift.zlift import validate_zlift

    return validate_zlift(
        toy_code,
        IntMatrix.from_dense(TOY_HX_TILDE),
        IntMatrix.from_dense(TOY_HZ_TILDE),
    )


def random_bitmatrix(rng: np.random.Generator, rows: int, cols: int) -> BitMatrix:
    return BitMatrix.from_dense(rng.integers(0, 2, size=(rows, cols), dtype=np.uint8))
