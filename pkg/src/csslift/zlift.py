"""Integer lifts of CSS codes: validation, witness search, refutation.

A support-preserving integer lift assigns an odd integer to every nonzero
entry of both parity-check matrices so that the integer product
``Hx_tilde @ Hz_tilde^T`` vanishes exactly.  The bounded witness search over
the integers and the mod-4 base of the refutation run the same backtracking
core: branch variables in a deterministic constraint-connectivity order and
propagate every equation that is one variable short of complete (the missing
factor is uniquely determined because all assigned factors are odd).

Odd-residue solutions mod 2**(k+1) are exactly the solutions mod 2**k
corrected in the top bit, and because every factor is odd the correction
bits satisfy an F2-linear system.  The modular search therefore backtracks
only at the mod-4 level and extends upward by exact linear solves; a code
with no mod-4 solution exhausts instantly at every higher modulus.

A refutation at modulus 2**k is a sound proof that no integer lift exists:
any integer solution reduces to an odd-residue solution at every modulus.
The converse does not hold; surviving all moduli proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2
from .css import CssCode
from .errors import BudgetExceededError, DimensionError, ZLiftError
from .gf2 import BitMatrix
from .intmat import IntMatrix, multiply, to_bitmatrix

DEFAULT_SEARCH_BUDGET = 10_000_000


@dataclass(frozen=True)
class ZLiftedCode:
    """An integer chain complex reducing mod 2 to a CSS code."""

    hx_tilde: IntMatrix
    hz_tilde: IntMatrix
    base: CssCode
    support_preserving: bool


@dataclass(frozen=True)
class RefutationResult:
    """Outcome of the modular refutation ladder.

    ``refuted`` with ``modulus_exponent`` k means no odd-residue solution
    exists mod 2**k (hence no integer lift exists).  Otherwise a residue
    assignment survived every modulus up to ``checked_up_to``.
    """

    refuted: bool
    modulus_exponent: int | None
    checked_up_to: int
    survivor: tuple | None = None

    def verdict(self) -> str:
        if self.refuted:
            return f"refuted at 2^{self.modulus_exponent}"
        return f"witness mod 2^{self.checked_up_to} survives"


def validate_zlift(base: CssCode, hx_tilde: IntMatrix, hz_tilde: IntMatrix) -> ZLiftedCode:
    """Check the three lift conditions and compute the support-preserving flag."""
    if (hx_tilde.rows, hx_tilde.cols) != (base.hx.rows, base.hx.cols):
        raise DimensionError(
            f"lifted H_X is {hx_tilde.rows}x{hx_tilde.cols}, "
            f"base is {base.hx.rows}x{base.hx.cols}"
        )
    if (hz_tilde.rows, hz_tilde.cols) != (base.hz.rows, base.hz.cols):
        raise DimensionError(
            f"lifted H_Z is {hz_tilde.rows}x{hz_tilde.cols}, "
            f"base is {base.hz.rows}x{base.hz.cols}"
        )
    for name, lifted, bits in (("H_X", hx_tilde, base.hx), ("H_Z", hz_tilde, base.hz)):
        got = to_bitmatrix(lifted)
        if got != bits:
            diff = np.argwhere((got.to_dense() ^ bits.to_dense()) != 0)
            r, c = (int(diff[0][0]), int(diff[0][1]))
            raise ZLiftError(
                f"mod-2 reduction of lifted {name} differs from the base at ({r},{c})"
            )
    product = multiply(hx_tilde, hz_tilde.transpose())
    if not product.is_zero():
        bad = np.argwhere(product.data != 0)
        r, c = int(bad[0][0]), int(bad[0][1])
        raise ZLiftError(
            f"integer product is nonzero at X-check {r}, Z-check {c}: "
            f"{int(product.data[r, c])}"
        )
    support_ok = True
    for lifted, bits in ((hx_tilde, base.hx), (hz_tilde, base.hz)):
        dense = lifted.data
        supp = bits.to_dense().astype(bool)
        if (dense[~supp] != 0).any() or (dense[supp] % 2 == 0).any():
            support_ok = False
            break
    return ZLiftedCode(
        hx_tilde=hx_tilde,
        hz_tilde=hz_tilde,
        base=base,
        support_preserving=support_ok,
    )


# ---------------------------------------------------------------------------
# Bilinear backtracking core.


class _ModularDomain:
    """Odd residues mod 2**k, ascending."""

    def __init__(self, k: int):
        self.modulus = 1 << k
        self.values = tuple(range(1, self.modulus, 2))

    def norm(self, v: int) -> int:
        return v % self.modulus

    def solve(self, partner: int, minus_partial: int):
        inv = pow(partner, -1, self.modulus)
        forced = (minus_partial * inv) % self.modulus
        return forced if forced % 2 == 1 else None


class _IntegerDomain:
    """Odd integers up to a magnitude bound, ascending magnitude, positive first."""

    def __init__(self, bound: int):
        self.modulus = 0
        self.bound = bound
        values = []
        for mag in range(1, bound + 1, 2):
            values.extend((mag, -mag))
        self.values = tuple(values)

    def norm(self, v: int) -> int:
        return v

    def solve(self, partner: int, minus_partial: int):
        if minus_partial % partner != 0:
            return None
        forced = minus_partial // partner
        if forced % 2 == 0 or not (1 <= abs(forced) <= self.bound):
            return None
        return forced


class _BilinearSystem:
    """Variables on the supports of (hx, hz); one product equation per check pair."""

    def __init__(self, base: CssCode):
        hx = base.hx.to_dense()
        hz = base.hz.to_dense()
        x_cells = [(r, c) for r in range(hx.shape[0]) for c in range(hx.shape[1]) if hx[r, c]]
        z_cells = [(r, c) for r in range(hz.shape[0]) for c in range(hz.shape[1]) if hz[r, c]]
        # Smaller-support side branches first: the opposite order admits no
        # propagation until that whole side is enumerated.  Tie goes to the
        # Z side.
        if len(x_cells) < len(z_cells):
            sides = (("x", x_cells), ("z", z_cells))
        else:
            sides = (("z", z_cells), ("x", x_cells))
        self.var_cells = []
        self.x_var = {}
        self.z_var = {}
        for side, cells in sides:
            table = self.x_var if side == "x" else self.z_var
            for cell in cells:
                table[cell] = len(self.var_cells)
                self.var_cells.append((side,) + cell)
        self.num_vars = len(self.var_cells)
        self.equations = []
        for xr in range(hx.shape[0]):
            xsupp = np.nonzero(hx[xr])[0]
            for zr in range(hz.shape[0]):
                terms = [
                    (self.x_var[(xr, int(c))], self.z_var[(zr, int(c))])
                    for c in xsupp
                    if hz[zr, c]
                ]
                if terms:
                    self.equations.append(tuple(terms))
        self.occurrences = [[] for _ in range(self.num_vars)]
        for eq_idx, terms in enumerate(self.equations):
            for term_idx, (a, b) in enumerate(terms):
                self.occurrences[a].append((eq_idx, term_idx))
                self.occurrences[b].append((eq_idx, term_idx))
        self.order = self._connected_order()
        self.shape_x = hx.shape
        self.shape_z = hz.shape

    def _connected_order(self):
        """Branching order grown along the constraint graph.

        Repeatedly take the equation with fewest unordered variables and
        append them (ascending); this makes equations complete as early as
        possible during the search.  Unconstrained variables come last.
        """
        eq_vars = [sorted({v for term in terms for v in term}) for terms in self.equations]
        unordered = [len(vs) for vs in eq_vars]
        placed = [False] * self.num_vars
        order = []
        while True:
            best = -1
            for i, count in enumerate(unordered):
                if count > 0 and (best < 0 or count < unordered[best]):
                    best = i
            if best < 0:
                break
            for v in eq_vars[best]:
                if placed[v]:
                    continue
                placed[v] = True
                order.append(v)
                for eq_idx, _ in self.occurrences[v]:
                    unordered[eq_idx] -= 1
        for v in range(self.num_vars):
            if not placed[v]:
                order.append(v)
        return order


class _Budget:
    """Shared node counter for a whole search, across modular levels."""

    def __init__(self, limit: int):
        self.limit = limit
        self.nodes = 0

    def spend(self, amount: int = 1) -> None:
        self.nodes += amount
        if self.nodes > self.limit:
            raise BudgetExceededError(
                f"lift search exceeded {self.limit} nodes", required=self.nodes
            )


class _Search:
    def __init__(self, system: _BilinearSystem, domain, budget: _Budget):
        self.sys = system
        self.domain = domain
        self.budget = budget
        self.assign = [0] * system.num_vars
        self.partial = [0] * len(system.equations)
        self.open_terms = [len(terms) for terms in system.equations]

    def _set(self, var: int, value: int, trail: list) -> bool:
        pending = [(var, value)]
        while pending:
            v, val = pending.pop(0)
            if self.assign[v] != 0:
                if self.assign[v] != val:
                    return False
                continue
            self.assign[v] = val
            trail.append(v)
            for eq_idx, term_idx in self.sys.occurrences[v]:
                a, b = self.sys.equations[eq_idx][term_idx]
                other = b if a == v else a
                oval = self.assign[other]
                if oval == 0:
                    continue
                self.partial[eq_idx] = self.domain.norm(
                    self.partial[eq_idx] + val * oval
                )
                self.open_terms[eq_idx] -= 1
                remaining = self.open_terms[eq_idx]
                if remaining == 0:
                    if self.domain.norm(self.partial[eq_idx]) != 0:
                        return False
                elif remaining == 1:
                    for ta, tb in self.sys.equations[eq_idx]:
                        va, vb = self.assign[ta], self.assign[tb]
                        if va != 0 and vb != 0:
                            continue
                        if va == 0 and vb == 0:
                            break  # two unknown factors: nothing to force
                        unknown, partner = (ta, vb) if va == 0 else (tb, va)
                        forced = self.domain.solve(
                            partner, self.domain.norm(-self.partial[eq_idx])
                        )
                        if forced is None:
                            return False
                        pending.append((unknown, forced))
                        break
        return True

    def _undo(self, trail: list) -> None:
        for v in reversed(trail):
            val = self.assign[v]
            for eq_idx, term_idx in self.sys.occurrences[v]:
                a, b = self.sys.equations[eq_idx][term_idx]
                other = b if a == v else a
                oval = self.assign[other]
                if oval != 0:
                    self.partial[eq_idx] = self.domain.norm(
                        self.partial[eq_idx] - val * oval
                    )
                    self.open_terms[eq_idx] += 1
            self.assign[v] = 0

    def solutions(self):
        """Lazily yield every complete assignment in deterministic order."""
        order = self.sys.order
        n = len(order)

        def descend(pos: int):
            while pos < n and self.assign[order[pos]] != 0:
                pos += 1
            if pos == n:
                yield list(self.assign)
                return
            var = order[pos]
            for val in self.domain.values:
                self.budget.spend()
                trail: list = []
                if self._set(var, val, trail):
                    yield from descend(pos + 1)
                self._undo(trail)

        yield from descend(0)

    def first_solution(self):
        """First complete assignment in deterministic order, or None."""
        return next(self.solutions(), None)


def _extension_solutions(system: _BilinearSystem, base, j: int, budget: _Budget):
    """Lazily yield top-bit corrections lifting a mod-2**j solution to 2**(j+1).

    With every factor odd, (a0 + 2**j a1)(c0 + 2**j c1) == a0*c0 +
    2**j*(a1 + c1) mod 2**(j+1), so the correction bits satisfy one F2-linear
    equation per product equation whose constant is bit j of the current sum.
    """
    n = system.num_vars
    mod_next = 1 << (j + 1)
    rows = []
    for terms in system.equations:
        row = np.zeros(n + 1, dtype=np.uint8)
        total = 0
        for a, b in terms:
            total += base[a] * base[b]
            row[a] ^= 1
            row[b] ^= 1
        row[n] = (total % mod_next) >> j  # total is 0 mod 2**j by induction
        rows.append(row)
    budget.spend(len(rows) + 1)
    if rows:
        reduced, pivots = gf2.rref(BitMatrix.from_dense(np.array(rows, dtype=np.uint8)))
        pivots = [int(p) for p in pivots]
        if n in pivots:
            return  # inconsistent: this solution does not lift
        dense = reduced.to_dense()
        particular = np.zeros(n, dtype=np.uint8)
        for row_idx, p in enumerate(pivots):
            particular[p] = dense[row_idx, n]
        pivot_set = set(pivots)
        free = [c for c in range(n) if c not in pivot_set]
        basis = []
        for f in free:
            v = np.zeros(n, dtype=np.uint8)
            v[f] = 1
            for row_idx, p in enumerate(pivots):
                v[p] = dense[row_idx, f]
            basis.append(v)
    else:
        particular = np.zeros(n, dtype=np.uint8)
        basis = [np.eye(n, dtype=np.uint8)[f] for f in range(n)]
    budget.spend()
    yield particular
    current = particular.copy()
    for i in range(1, 1 << len(basis)):
        flip = (i & -i).bit_length() - 1  # Gray-code step
        current ^= basis[flip]
        budget.spend()
        yield current


def _modular_solutions(system: _BilinearSystem, k: int, budget: _Budget):
    """All odd-residue solutions mod 2**k, as lazily generated assignments."""
    if k < 2:
        raise DimensionError(f"modulus exponent must be >= 2, got {k}")

    def level(j: int):
        if j == 2:
            yield from _Search(system, _ModularDomain(2), budget).solutions()
            return
        for lower in level(j - 1):
            for eps in _extension_solutions(system, lower, j - 1, budget):
                yield [
                    lower[v] + (int(eps[v]) << (j - 1))
                    for v in range(system.num_vars)
                ]

    yield from level(k)


def _matrices_from_assignment(system: _BilinearSystem, assignment) -> tuple:
    hx = np.zeros(system.shape_x, dtype=np.int64)
    hz = np.zeros(system.shape_z, dtype=np.int64)
    for cell, var in system.x_var.items():
        hx[cell] = assignment[var]
    for cell, var in system.z_var.items():
        hz[cell] = assignment[var]
    return IntMatrix.from_dense(hx), IntMatrix.from_dense(hz)


def support_preserving_witness(
    base: CssCode,
    entry_bound: int = 3,
    node_budget: int = DEFAULT_SEARCH_BUDGET,
) -> ZLiftedCode | None:
    """Search odd entries in [-entry_bound, entry_bound] on the supports.

    Returns the first witness in deterministic order, or None on exhaustion.
    """
    if entry_bound < 1 or entry_bound % 2 == 0:
        raise DimensionError(f"entry bound must be odd and >= 1, got {entry_bound}")
    system = _BilinearSystem(base)
    search = _Search(system, _IntegerDomain(entry_bound), _Budget(node_budget))
    solution = search.first_solution()
    if solution is None:
        return None
    hx_tilde, hz_tilde = _matrices_from_assignment(system, solution)
    witness = validate_zlift(base, hx_tilde, hz_tilde)
    if not witness.support_preserving:
        raise ZLiftError("witness search produced a non-support-preserving lift")
    return witness


def refute_support_preserving(
    base: CssCode,
    k_max: int = 8,
    node_budget: int = DEFAULT_SEARCH_BUDGET,
) -> RefutationResult:
    """Ladder of modular searches; 'refuted at 2^k' proves no integer lift exists."""
    if k_max < 2:
        raise DimensionError(f"k_max must be >= 2, got {k_max}")
    system = _BilinearSystem(base)
    survivor = None
    for k in range(2, k_max + 1):
        budget = _Budget(node_budget)
        try:
            solution = next(_modular_solutions(system, k, budget), None)
        except BudgetExceededError as err:
            err.partial = RefutationResult(
                refuted=False,
                modulus_exponent=None,
                checked_up_to=k - 1,
                survivor=survivor,
            )
            raise
        if solution is None:
            return RefutationResult(
                refuted=True, modulus_exponent=k, checked_up_to=k
            )
        survivor = _matrices_from_assignment(system, solution)
    return RefutationResult(
        refuted=False,
        modulus_exponent=None,
        checked_up_to=k_max,
        survivor=survivor,
    )
