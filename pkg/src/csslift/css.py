"""CSS codes as validated parity-check pairs, with exact parameter computation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, gf2
from .errors import BudgetExceededError, CssLiftError, DimensionError, OrthogonalityError
from .gf2 import BitMatrix

DEFAULT_DISTANCE_BUDGET = 1 << 27


@dataclass(frozen=True)
class CodeParams:
    """Parameters [[n, k, d]]; ``d`` is None when k = 0 or not computed."""

    n: int
    k: int
    d: int | None = None

    def label(self) -> str:
        d = "?" if self.d is None else str(self.d)
        return f"[[{self.n},{self.k},{d}]]"


class CssCode:
    """A pair (H_X, H_Z) of parity-check matrices with H_X * H_Z^T = 0 over F2."""

    __slots__ = ("hx", "hz")

    def __init__(self, hx: BitMatrix, hz: BitMatrix):
        if hx.cols != hz.cols:
            raise DimensionError(
                f"H_X has {hx.cols} columns but H_Z has {hz.cols}"
            )
        offender = gf2.first_nonzero_product_entry(hx, hz)
        if offender is not None:
            raise OrthogonalityError(*offender)
        self.hx = hx
        self.hz = hz

    @property
    def n(self) -> int:
        return self.hx.cols

    @property
    def num_x(self) -> int:
        return self.hx.rows

    @property
    def num_z(self) -> int:
        return self.hz.rows

    def __repr__(self) -> str:
        return f"CssCode(n={self.n}, |X|={self.num_x}, |Z|={self.num_z})"


def new_css(hx: BitMatrix, hz: BitMatrix) -> CssCode:
    """Validate and build a CSS code from its parity-check matrices."""
    return CssCode(hx, hz)


def parameters(code: CssCode) -> CodeParams:
    """n and k (distance not computed).

    k comes from the rank formula and is cross-checked against the homology
    dimension dim ker(H_X) - rank(H_Z^T).
    """
    n = code.n
    k = n - gf2.rank(code.hx) - gf2.rank(code.hz)
    homology_k = gf2.kernel_basis(code.hx).rows - gf2.rank(code.hz.transpose())
    if k != homology_k:
        raise CssLiftError(
            f"rank formula gives k={k} but homology dimension is {homology_k}"
        )
    if k < 0:
        raise CssLiftError(f"negative logical dimension k={k}")
    return CodeParams(n=n, k=k)


def _one_sided_distance(h_kernel_side: BitMatrix, h_space_side: BitMatrix, budget: int) -> int:
    """min weight over ker(h_kernel_side) \\ rowspace(h_space_side)."""
    basis = gf2.kernel_basis(h_kernel_side)
    m = basis.rows
    if m > 0 and (1 << m) > budget:
        raise BudgetExceededError(
            f"distance enumeration needs 2^{m} = {1 << m} vectors, budget is {budget}",
            required=1 << m,
        )
    reduced, pivots = gf2.rref(h_space_side)
    resid = basis.words.copy()
    for row_idx, p in enumerate(pivots):
        w, b = divmod(int(p), _kernels.WORD_BITS)
        mask = (resid[:, w] >> np.uint64(b)) & np.uint64(1) == 1
        resid[mask] ^= reduced.words[row_idx]
    best = _kernels.min_weight_outside_rowspace(
        basis.words,
        resid,
        basis.to_dense(),
        _kernels.unpack_rows(resid, basis.cols) if resid.size else np.zeros((m, basis.cols), dtype=np.uint8),
    )
    if best < 0:
        raise CssLiftError("distance enumeration found no candidate although k > 0")
    return best


def distance(code: CssCode, budget: int = DEFAULT_DISTANCE_BUDGET) -> int | None:
    """Exact minimum distance by kernel-subspace brute force.

    Returns None when k = 0 (the defining minimum ranges over an empty set).
    Raises BudgetExceededError when the enumeration would exceed ``budget``
    vectors on either side.
    """
    params = parameters(code)
    if params.k == 0:
        return None
    d_z = _one_sided_distance(code.hx, code.hz, budget)
    d_x = _one_sided_distance(code.hz, code.hx, budget)
    return min(d_x, d_z)


def parameters_with_distance(code: CssCode, budget: int = DEFAULT_DISTANCE_BUDGET) -> CodeParams:
    base = parameters(code)
    return CodeParams(n=base.n, k=base.k, d=distance(code, budget))
