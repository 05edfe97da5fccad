"""Exact integer matrices for lifted boundary maps and modular reductions."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import DimensionError, IntegerOverflowError
from .gf2 import BitMatrix


class IntMatrix:
    """Dense matrix of signed 64-bit integers with checked arithmetic."""

    __slots__ = ("data",)

    def __init__(self, data: np.ndarray):
        self.data = data

    @classmethod
    def from_dense(cls, dense) -> "IntMatrix":
        arr = np.atleast_2d(np.asarray(dense))
        if arr.ndim != 2:
            raise DimensionError(f"expected a 2-d array, got shape {arr.shape}")
        if arr.size and (np.abs(arr.astype(object)) >= 2**62).any():
            raise IntegerOverflowError("entries exceed the supported 64-bit range")
        return cls(arr.astype(np.int64))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def to_dense(self) -> np.ndarray:
        return self.data.copy()

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.data.T.copy())

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.data.copy())

    def is_zero(self) -> bool:
        return not self.data.any()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.data.shape == other.data.shape
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self):  # pragma: no cover
        raise TypeError("IntMatrix is not hashable")

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols})"


def multiply(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Exact integer product; rejects shapes that cannot multiply or overflow."""
    if a.cols != b.rows:
        raise DimensionError(
            f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}"
        )
    if a.data.size and b.data.size:
        amax = int(np.abs(a.data).max())
        bmax = int(np.abs(b.data).max())
        if amax * bmax * max(a.cols, 1) >= 2**62:
            raise IntegerOverflowError(
                "product magnitude bound exceeds the 64-bit range"
            )
    return IntMatrix(a.data @ b.data)


def mod_reduce(m: IntMatrix, k: int) -> IntMatrix:
    """Entrywise reduction mod 2**k, result entries in [0, 2**k)."""
    if k < 1:
        raise DimensionError(f"modulus exponent must be >= 1, got {k}")
    return IntMatrix(m.data % np.int64(1 << k))


def to_bitmatrix(m: IntMatrix) -> BitMatrix:
    """Mod-2 reduction as a BitMatrix."""
    return BitMatrix.from_dense(m.data & 1)


def rational_rank(m: IntMatrix) -> int:
    """Rank of the matrix over the rationals (exact, Fraction elimination)."""
    work = [[Fraction(int(x)) for x in row] for row in m.data]
    rows, cols = m.rows, m.cols
    rank_ = 0
    for col in range(cols):
        piv = next((r for r in range(rank_, rows) if work[r][col] != 0), None)
        if piv is None:
            continue
        work[rank_], work[piv] = work[piv], work[rank_]
        inv = work[rank_][col]
        for r in range(rows):
            if r != rank_ and work[r][col] != 0:
                factor = work[r][col] / inv
                work[r] = [x - factor * y for x, y in zip(work[r], work[rank_])]
        rank_ += 1
        if rank_ == rows:
            break
    return rank_
