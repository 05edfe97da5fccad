"""Voltage assignments, relator validation, lifted boundary maps, enumeration.

A degree-t cover of a presentation's skeleton is encoded by a permutation of
the fiber {0..t-1} on every edge, identity on the spanning forest.  An
assignment is valid when the ordered product of permutations along every
relator cycle is the identity; valid assignments are exactly the coset
actions of the presented fundamental group, so they classify covers.

Permutations are tuples; ``compose(p, q)`` applies p first, then q, matching
the left-to-right order of edge paths.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .css import CssCode, new_css
from .errors import (
    BudgetExceededError,
    DimensionError,
    LiftError,
    VoltageError,
)
from .intmat import IntMatrix, multiply
from .presentation import LiftPresentation, _SubTree
from .zlift import ZLiftedCode, validate_zlift

DEFAULT_ENUM_BUDGET = 2_000_000
DEFAULT_MAX_BRANCH_GENERATORS = 12
DEFAULT_MAX_DEGREE = 4


def identity_perm(t: int) -> tuple:
    return tuple(range(t))


def compose(p: tuple, q: tuple) -> tuple:
    """Apply p, then q."""
    return tuple(q[i] for i in p)


def invert(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def conjugate(p: tuple, g: tuple) -> tuple:
    """Permutation after relabelling the fiber by g."""
    return compose(compose(invert(g), p), g)


@dataclass(frozen=True)
class VoltageAssignment:
    """Fiber permutations per edge id; omitted edges carry the identity."""

    degree: int
    perms: dict = field(default_factory=dict)

    def perm(self, edge_id: int) -> tuple:
        return self.perms.get(edge_id, identity_perm(self.degree))

    def image_tuple(self, generators) -> tuple:
        return tuple(self.perm(g) for g in generators)


class RelatorViolation(NamedTuple):
    z: int
    relator_index: int


def _check_wellformed(p: LiftPresentation, v: VoltageAssignment) -> None:
    if v.degree < 1:
        raise VoltageError(f"cover degree must be >= 1, got {v.degree}")
    ident = identity_perm(v.degree)
    for eid, perm in v.perms.items():
        if not (0 <= eid < len(p.edges)):
            raise VoltageError(f"voltage references unknown edge {eid}")
        if sorted(perm) != list(range(v.degree)):
            raise VoltageError(f"edge {eid} carries a non-permutation {perm}")
        if eid in p.tree_edges and tuple(perm) != ident:
            raise VoltageError(f"tree edge {eid} must carry the identity")


def path_product(p: LiftPresentation, v: VoltageAssignment, path) -> tuple:
    """Left-to-right product of edge permutations along an oriented path."""
    result = identity_perm(v.degree)
    for eid, direction in path:
        perm = v.perm(eid)
        if direction == -1:
            perm = invert(perm)
        result = compose(result, perm)
    return result


def validate_voltages(p: LiftPresentation, v: VoltageAssignment):
    """None when every relator's permutation product is the identity.

    Otherwise the first violated relator in (z, index) order.
    """
    _check_wellformed(p, v)
    ident = identity_perm(v.degree)
    for z in sorted(p.relators):
        for idx, relator in enumerate(p.relators[z]):
            if path_product(p, v, relator) != ident:
                return RelatorViolation(z=z, relator_index=idx)
    return None


@dataclass(frozen=True)
class LiftedCode:
    """The code read off a cover: integer pair of size t times the base."""

    zlifted: ZLiftedCode
    base: CssCode
    voltage: VoltageAssignment
    presentation: LiftPresentation


def _edge_coefficient(p: LiftPresentation, zl: ZLiftedCode, edge) -> int:
    entry = int(zl.hx_tilde.data[edge.x, edge.q])
    if p.kind == "cone":
        if entry == 0:
            raise LiftError(
                f"presentation has an edge at ({edge.x},{edge.q}) but the "
                "integer lift vanishes there"
            )
        return entry
    return 1 if entry > 0 else -1


def _check_lift_fits(p: LiftPresentation, base: CssCode, zl: ZLiftedCode) -> None:
    if zl.hx_tilde.rows != p.num_x or zl.hx_tilde.cols != p.num_q:
        raise DimensionError("integer lift shape does not match the presentation")
    if p.kind == "cone":
        hx_supp = base.hx.to_dense().astype(bool)
        if (zl.hx_tilde.data[~hx_supp] != 0).any():
            raise LiftError(
                "integer lift has X-support outside the presentation skeleton; "
                "build a cellular presentation for it"
            )
        hz_supp = base.hz.to_dense().astype(bool)
        if (zl.hz_tilde.data[~hz_supp] != 0).any():
            raise LiftError(
                "integer lift has Z-support outside the presentation's "
                "z-subcomplexes"
            )
    else:
        counts = {}
        for e in p.edges:
            if e.kind == "tanner":
                counts[(e.x, e.q)] = counts.get((e.x, e.q), 0) + 1
        expected = {
            (x, q): abs(int(zl.hx_tilde.data[x, q]))
            for x in range(p.num_x)
            for q in range(p.num_q)
            if zl.hx_tilde.data[x, q] != 0
        }
        if counts != expected:
            raise LiftError(
                "presentation multiplicities do not match the integer lift"
            )


def lift_code(
    base: CssCode,
    zl: ZLiftedCode,
    p: LiftPresentation,
    v: VoltageAssignment,
) -> LiftedCode:
    """Lifted integer boundary maps; verifies their product vanishes exactly.

    Row and column order is base index major, fiber index minor.
    """
    violation = validate_voltages(p, v)
    if violation is not None:
        raise VoltageError(
            f"voltages violate relator {violation.relator_index} of "
            f"Z-check {violation.z}"
        )
    _check_lift_fits(p, base, zl)
    t = v.degree
    n = p.num_q
    hx_lift = np.zeros((p.num_x * t, n * t), dtype=np.int64)
    for eid, e in enumerate(p.edges):
        if e.kind != "tanner":
            continue
        coeff = _edge_coefficient(p, zl, e)
        sigma = v.perm(eid)
        for i in range(t):
            hx_lift[e.x * t + i, e.q * t + sigma[i]] += coeff
    num_z = zl.hz_tilde.rows
    hz_lift = np.zeros((num_z * t, n * t), dtype=np.int64)
    for z in range(num_z):
        row = zl.hz_tilde.data[z]
        support = np.nonzero(row)[0]
        if support.size == 0:
            continue
        tree = _SubTree(p.edges, p.z_tree[z], p.z_basepoint[z])
        for q in support:
            q = int(q)
            path = tree.path_from_root(p.qubit_vertex(q))
            sigma = path_product(p, v, path)
            for i in range(t):
                hz_lift[z * t + i, q * t + sigma[i]] += int(row[q])
    hx_m = IntMatrix.from_dense(hx_lift)
    hz_m = IntMatrix.from_dense(hz_lift)
    product = multiply(hx_m, hz_m.transpose())
    if not product.is_zero():
        bad = np.argwhere(product.data != 0)
        raise LiftError(
            "lifted boundary maps do not compose to zero (first nonzero at "
            f"{tuple(int(x) for x in bad[0])}); the presentation's relators "
            "do not make every z-subcomplex simply connected"
        )
    lifted_css = new_css(
        _mod2(hx_m), _mod2(hz_m)
    )
    zlifted = validate_zlift(lifted_css, hx_m, hz_m)
    return LiftedCode(zlifted=zlifted, base=base, voltage=v, presentation=p)


def _mod2(m: IntMatrix):
    from .intmat import to_bitmatrix

    return to_bitmatrix(m)


def cover_components(v: VoltageAssignment, p: LiftPresentation):
    """Orbits of the group generated by all edge permutations on the fiber."""
    _check_wellformed(p, v)
    parent = list(range(v.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in v.perms.values():
        for i, j in enumerate(perm):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups = {}
    for i in range(v.degree):
        groups.setdefault(find(i), []).append(i)
    return tuple(tuple(groups[r]) for r in sorted(groups))


# ---------------------------------------------------------------------------
# Exhaustive enumeration of cover classes.


class _RelatorWord(NamedTuple):
    steps: tuple  # (generator edge id, direction), tree edges dropped


def _relator_words(p: LiftPresentation):
    gens = set(p.generators)
    words = []
    for z in sorted(p.relators):
        for relator in p.relators[z]:
            steps = tuple((eid, d) for eid, d in relator if eid in gens)
            words.append(_RelatorWord(steps=steps))
    return words


def _solve_single_occurrence(word, assign, t):
    """Forced permutation for the single unassigned generator, or None flags.

    Returns (gen, perm) when exactly one step is unassigned and its generator
    occurs exactly once; ("check", product) when fully assigned.
    """
    unassigned = [
        (pos, eid, d)
        for pos, (eid, d) in enumerate(word.steps)
        if eid not in assign
    ]
    if not unassigned:
        prod = identity_perm(t)
        for eid, d in word.steps:
            perm = assign[eid] if d == 1 else invert(assign[eid])
            prod = compose(prod, perm)
        return ("check", prod)
    if len(unassigned) > 1:
        return (None, None)
    pos, eid, d = unassigned[0]
    if sum(1 for e, _ in word.steps if e == eid) != 1:
        return (None, None)
    before = identity_perm(t)
    for e, dd in word.steps[:pos]:
        perm = assign[e] if dd == 1 else invert(assign[e])
        before = compose(before, perm)
    after = identity_perm(t)
    for e, dd in word.steps[pos + 1 :]:
        perm = assign[e] if dd == 1 else invert(assign[e])
        after = compose(after, perm)
    needed = compose(invert(before), invert(after))
    return (eid, needed if d == 1 else invert(needed))


def enumerate_covers(
    p: LiftPresentation,
    degree: int,
    connected_only: bool = False,
    max_branch_generators: int = DEFAULT_MAX_BRANCH_GENERATORS,
    node_budget: int = DEFAULT_ENUM_BUDGET,
    max_degree: int = DEFAULT_MAX_DEGREE,
):
    """All valid voltage assignments up to fiber relabelling, sorted.

    Backtracks over generator images in edge-id order with relator forcing;
    classes are deduplicated by the lexicographically minimal image tuple
    under simultaneous conjugation by the symmetric group of the fiber.
    """
    if degree < 1:
        raise DimensionError(f"cover degree must be >= 1, got {degree}")
    if degree > max_degree:
        raise BudgetExceededError(
            f"cover degree {degree} exceeds the enumeration cap {max_degree}"
        )
    t = degree
    words = _relator_words(p)
    gens = list(p.generators)
    occurrences = {g: [] for g in gens}
    for widx, word in enumerate(words):
        for eid, _ in word.steps:
            occurrences[eid].append(widx)
    all_perms = list(itertools.permutations(range(t)))
    sym = all_perms  # conjugators
    nodes = 0
    solutions = {}

    def propagate(assign, trail):
        changed = True
        while changed:
            changed = False
            for widx, word in enumerate(words):
                result, payload = _solve_single_occurrence(word, assign, t)
                if result == "check":
                    if payload != identity_perm(t):
                        return False
                elif result is not None:
                    gen, perm = result, payload
                    if gen in assign:
                        if assign[gen] != perm:
                            return False
                    else:
                        assign[gen] = perm
                        trail.append(gen)
                        changed = True
        return True

    def prefix_is_canonical(assign, upto):
        prefix = tuple(assign[g] for g in gens[: upto + 1])
        for g in sym:
            conj = tuple(conjugate(perm, g) for perm in prefix)
            if conj < prefix:
                return False
        return True

    def descend(pos, assign, branched):
        nonlocal nodes
        while pos < len(gens) and gens[pos] in assign:
            pos += 1
        if pos == len(gens):
            record(assign)
            return
        if branched >= max_branch_generators:
            raise BudgetExceededError(
                f"more than {max_branch_generators} free generators at degree {t}"
            )
        gen = gens[pos]
        for perm in all_perms:
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceededError(
                    f"cover enumeration exceeded {node_budget} nodes"
                )
            trail = [gen]
            assign[gen] = perm
            if propagate(assign, trail) and prefix_is_canonical(assign, pos):
                descend(pos + 1, assign, branched + 1)
            for g in trail:
                del assign[g]

    def record(assign):
        images = tuple(assign[g] for g in gens)
        best = min(
            (tuple(conjugate(perm, g) for perm in images) for g in sym),
        )
        if best in solutions:
            return
        solutions[best] = True

    descend(0, {}, 0)
    results = []
    ident = identity_perm(t)
    for images in sorted(solutions):
        perms = {g: perm for g, perm in zip(gens, images) if perm != ident}
        assignment = VoltageAssignment(degree=t, perms=perms)
        if connected_only and len(cover_components(assignment, p)) != 1:
            continue
        results.append(assignment)
    return results
