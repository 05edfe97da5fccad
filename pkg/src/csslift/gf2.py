"""Exact linear algebra over F2 on bit-packed dense matrices."""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import DimensionError


class BitMatrix:
    """Dense matrix over F2, rows packed into uint64 words.

    Trailing padding bits of every row are kept at zero; all public behaviour
    is independent of the packing word size.
    """

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray):
        self.rows = rows
        self.cols = cols
        self.words = words

    # -- construction -------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        nwords = (cols + _kernels.WORD_BITS - 1) // _kernels.WORD_BITS
        return cls(rows, cols, np.zeros((rows, nwords), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        dense = np.atleast_2d(np.asarray(dense))
        if dense.ndim != 2:
            raise DimensionError(f"expected a 2-d array, got shape {dense.shape}")
        arr = (dense.astype(np.int64) & 1).astype(np.uint64)
        rows, cols = arr.shape
        return cls(rows, cols, _kernels.pack_rows(arr))

    # -- access --------------------------------------------------------

    def to_dense(self) -> np.ndarray:
        if self.cols == 0:
            return np.zeros((self.rows, 0), dtype=np.uint8)
        return _kernels.unpack_rows(self.words, self.cols)

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise DimensionError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
        w, b = divmod(j, _kernels.WORD_BITS)
        return int((self.words[i, w] >> np.uint64(b)) & np.uint64(1))

    def row_dense(self, i: int) -> np.ndarray:
        return self.to_dense()[i]

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.cols, self.words.copy())

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def row_weights(self) -> np.ndarray:
        if self.words.size == 0:
            return np.zeros(self.rows, dtype=np.int64)
        return _kernels.popcount_words(self.words)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and np.array_equal(self.words, other.words)
        )

    def __hash__(self):  # pragma: no cover - mutable, do not hash
        raise TypeError("BitMatrix is not hashable")

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


def _as_packed_vector(v, cols: int) -> np.ndarray:
    v = np.asarray(v)
    if v.ndim != 1:
        raise DimensionError(f"expected a vector, got shape {v.shape}")
    if v.shape[0] != cols:
        raise DimensionError(f"vector length {v.shape[0]} != column count {cols}")
    return _kernels.pack_rows((v.astype(np.int64) & 1).reshape(1, -1))[0]


def rref(m: BitMatrix):
    """Deterministic reduced row echelon form; returns (BitMatrix, pivot cols)."""
    work = m.words.copy()
    rank, pivots = _kernels.rref_packed(work, m.cols)
    return BitMatrix(m.rows, m.cols, work), pivots


def rank(m: BitMatrix) -> int:
    """F2 row rank."""
    work = m.words.copy()
    r, _ = _kernels.rref_packed(work, m.cols)
    return r


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Basis of the right kernel, one vector per row.

    The basis is the deterministic reduced-echelon one: a vector per free
    column (ascending), with ones copied from the echelon rows at pivots.
    """
    reduced, pivots = rref(m)
    pivot_set = set(int(p) for p in pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    dense = reduced.to_dense()
    basis = np.zeros((len(free_cols), m.cols), dtype=np.uint8)
    for k, f in enumerate(free_cols):
        basis[k, f] = 1
        for row_idx, p in enumerate(pivots):
            basis[k, int(p)] = dense[row_idx, f]
    return BitMatrix.from_dense(basis)


def in_row_space(m: BitMatrix, v) -> bool:
    """True iff ``v`` is an F2 combination of the rows of ``m``."""
    vec = _as_packed_vector(v, m.cols)
    reduced, pivots = rref(m)
    for row_idx, p in enumerate(pivots):
        w, b = divmod(int(p), _kernels.WORD_BITS)
        if (vec[w] >> np.uint64(b)) & np.uint64(1):
            vec ^= reduced.words[row_idx]
    return not vec.any()


def mul_f2(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product over F2."""
    if a.cols != b.rows:
        raise DimensionError(
            f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols} over F2"
        )
    bt = b.transpose()
    if a.rows == 0 or bt.rows == 0 or a.words.shape[1] == 0:
        return BitMatrix.zeros(a.rows, b.cols)
    inter = np.bitwise_and(a.words[:, None, :], bt.words[None, :, :])
    prod = (np.bitwise_count(inter).sum(axis=2) & 1).astype(np.uint8)
    return BitMatrix.from_dense(prod)


def first_nonzero_product_entry(a: BitMatrix, bt: BitMatrix):
    """First (i, j) with odd overlap between row i of ``a`` and row j of ``bt``.

    Row-major scan; returns None when all products vanish.
    """
    if a.cols != bt.cols:
        raise DimensionError("row spaces live in different ambient dimensions")
    for i in range(a.rows):
        row = a.words[i]
        for j in range(bt.rows):
            overlap = int(np.bitwise_count(row & bt.words[j]).sum())
            if overlap & 1:
                return i, j
    return None
