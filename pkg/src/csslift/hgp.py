"""Hypergraph products, their signed integer lift, and product voltages.

The product of classical codes with check matrices h1 (m1 x n1) and
h2 (m2 x n2) has

    H_X = [h1 (x) 1 | 1 (x) h2^T],   H_Z = [1 (x) h2 | h1^T (x) 1],

with qubit blocks indexed row-major over (bit1, bit2) then (check1, check2).
Negating the right block of H_Z gives a support-preserving integer lift.
Covers of the product's presentation restrict to covers of the two factor
Tanner graphs; ``product_voltages`` builds the product cover from commuting
factor voltages.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .css import CssCode, new_css
from .cover import (
    VoltageAssignment,
    compose,
    identity_perm,
    invert,
    validate_voltages,
)
from .errors import DimensionError, VoltageError
from .gf2 import BitMatrix
from .intmat import IntMatrix
from .presentation import LiftPresentation, cone_presentation
from .tanner import MultiGraph, TannerGraph, spanning_forest, tanner_graph
from .zlift import ZLiftedCode, validate_zlift

MAX_PRODUCT_QUBITS = 1 << 20


@dataclass(frozen=True)
class ClassicalCode:
    """A classical parity-check matrix together with its Tanner graph."""

    h: BitMatrix
    tanner: TannerGraph

    @classmethod
    def from_matrix(cls, h: BitMatrix) -> "ClassicalCode":
        return cls(h=h, tanner=tanner_graph(h))


def repetition_check_matrix(length: int) -> BitMatrix:
    """Circulant with ones at (i, i) and (i, i+1 mod L); a 2L-cycle Tanner graph."""
    if length < 2:
        raise DimensionError(
            f"repetition length must be >= 2, got {length} "
            "(the length-1 circulant cancels over F2)"
        )
    dense = np.zeros((length, length), dtype=np.uint8)
    for i in range(length):
        dense[i, i] = 1
        dense[i, (i + 1) % length] = 1
    return BitMatrix.from_dense(dense)


def hypergraph_product(h1: BitMatrix, h2: BitMatrix) -> CssCode:
    """CSS code of the product; orthogonality re-verified on construction."""
    m1, n1 = h1.rows, h1.cols
    m2, n2 = h2.rows, h2.cols
    n = n1 * n2 + m1 * m2
    if n > MAX_PRODUCT_QUBITS:
        raise DimensionError(f"product would have {n} qubits")
    d1 = h1.to_dense()
    d2 = h2.to_dense()
    hx = np.concatenate(
        [np.kron(d1, np.eye(n2, dtype=np.uint8)), np.kron(np.eye(m1, dtype=np.uint8), d2.T)],
        axis=1,
    )
    hz = np.concatenate(
        [np.kron(np.eye(n1, dtype=np.uint8), d2), np.kron(d1.T, np.eye(m2, dtype=np.uint8))],
        axis=1,
    )
    return new_css(BitMatrix.from_dense(hx % 2), BitMatrix.from_dense(hz % 2))


def hpc_naive_zlift(h1: BitMatrix, h2: BitMatrix) -> ZLiftedCode:
    """Integer lift with the right H_Z block negated; support-preserving."""
    base = hypergraph_product(h1, h2)
    d1 = h1.to_dense().astype(np.int64)
    d2 = h2.to_dense().astype(np.int64)
    m1, n1 = h1.rows, h1.cols
    m2, n2 = h2.rows, h2.cols
    hx_t = np.concatenate(
        [np.kron(d1, np.eye(n2, dtype=np.int64)), np.kron(np.eye(m1, dtype=np.int64), d2.T)],
        axis=1,
    )
    hz_t = np.concatenate(
        [np.kron(np.eye(n1, dtype=np.int64), d2), -np.kron(d1.T, np.eye(m2, dtype=np.int64))],
        axis=1,
    )
    lift = validate_zlift(base, IntMatrix.from_dense(hx_t), IntMatrix.from_dense(hz_t))
    if not lift.support_preserving:
        raise VoltageError("product lift lost support preservation")
    return lift


def hgp_presentation(
    h1: BitMatrix, h2: BitMatrix, relator_basis: str = "forest"
) -> LiftPresentation:
    """Cone presentation of the product code, tagged with factor bookkeeping."""
    p = cone_presentation(hypergraph_product(h1, h2), relator_basis=relator_basis)
    p.meta["hgp_dims"] = (h1.rows, h1.cols, h2.rows, h2.cols)
    return p


def factor_graph(h: BitMatrix) -> MultiGraph:
    """Tanner graph of a factor as a multigraph: checks first, then bits."""
    g = tanner_graph(h)
    return MultiGraph(
        g.check_count + g.bit_count,
        tuple((c, g.check_count + b) for c, b in g.edges),
    )


def factor_nontree_edges(h: BitMatrix):
    """Edge ids (into tanner_graph(h).edges) off the deterministic forest."""
    return spanning_forest(factor_graph(h)).non_tree_edges


def cyclic_shift(t: int) -> tuple:
    """The fiber permutation i -> i+1 mod t."""
    return tuple((i + 1) % t for i in range(t))


def _factor_voltage_table(h: BitMatrix, given: dict, degree: int):
    """Voltage per factor edge id: identity on the factor forest."""
    graph = factor_graph(h)
    forest = spanning_forest(graph)
    non_tree = set(forest.non_tree_edges)
    ident = identity_perm(degree)
    table = {}
    for eid in range(len(graph.edges)):
        perm = tuple(given.get(eid, ident))
        if eid not in non_tree and perm != ident:
            raise VoltageError(
                f"factor edge {eid} lies on the factor spanning forest and "
                "must carry the identity"
            )
        table[eid] = perm
    return table


def product_voltages(
    p: LiftPresentation,
    v1: dict,
    v2: dict,
    mode: str = "diagonal",
) -> VoltageAssignment:
    """Voltage assignment of the product presentation from factor voltages.

    ``v1`` and ``v2`` map factor non-tree edge ids to fiber permutations of a
    common degree; their images must commute elementwise.  ``mode`` declares
    the intent: "factor1" requires v2 trivial, "factor2" requires v1
    trivial, "diagonal" allows both.
    """
    dims = p.meta.get("hgp_dims")
    if dims is None:
        raise DimensionError(
            "presentation was not built by hgp_presentation; factor "
            "bookkeeping is missing"
        )
    m1, n1, m2, n2 = dims
    degrees = {len(perm) for perm in list(v1.values()) + list(v2.values())}
    if len(degrees) > 1:
        raise DimensionError(f"factor voltages mix degrees {sorted(degrees)}")
    degree = degrees.pop() if degrees else 1
    if mode not in ("factor1", "factor2", "diagonal"):
        raise DimensionError(f"unknown mode {mode!r}")
    ident = identity_perm(degree)
    if mode == "factor1" and any(tuple(x) != ident for x in v2.values()):
        raise VoltageError("mode factor1 requires trivial second-factor voltages")
    if mode == "factor2" and any(tuple(x) != ident for x in v1.values()):
        raise VoltageError("mode factor2 requires trivial first-factor voltages")
    for p1 in v1.values():
        for p2 in v2.values():
            if compose(tuple(p1), tuple(p2)) != compose(tuple(p2), tuple(p1)):
                raise VoltageError(
                    "factor voltage images do not commute; the product's "
                    "relators force commutation"
                )
    # Project each product Tanner edge to its factor edge: horizontal edges
    # (a1,i2)-(i1,i2) carry factor-1 voltages as written; vertical edges
    # (a1,i2)-(a1,a2) carry inverted factor-2 voltages because the second
    # factor's checks and bits swap roles in the product.
    f1_pairs = sorted(
        {
            (e.x // n2, e.q // n2)
            for e in p.edges
            if e.kind == "tanner" and e.q < n1 * n2
        }
    )
    f2_pairs = sorted(
        {
            ((e.q - n1 * n2) % m2, e.x % n2)
            for e in p.edges
            if e.kind == "tanner" and e.q >= n1 * n2
        }
    )
    f1_index = {cb: i for i, cb in enumerate(f1_pairs)}
    f2_index = {cb: i for i, cb in enumerate(f2_pairs)}
    f1_table = {i: tuple(v1.get(i, ident)) for i in range(len(f1_pairs))}
    f2_table = {i: tuple(v2.get(i, ident)) for i in range(len(f2_pairs))}
    perms = {}
    sigma_of_edge = {}
    for eid, e in enumerate(p.edges):
        if e.kind != "tanner":
            continue
        a1, i2 = e.x // n2, e.x % n2
        if e.q < n1 * n2:
            i1 = e.q // n2
            sigma = f1_table[f1_index[(a1, i1)]]
        else:
            a2 = (e.q - n1 * n2) % m2
            sigma = invert(f2_table[f2_index[(a2, i2)]])
        sigma_of_edge[eid] = sigma
        if sigma != ident:
            perms[eid] = sigma
    # Apex edges: voltage = path product from the member vertex back to the
    # apex's spanning-tree attachment through the check's induced subgraph.
    # This collapses every cone cycle onto the subgraph's own cycles, which
    # commuting factor images make trivial.
    apex_attach = {}
    for eid in sorted(p.tree_edges):
        e = p.edges[eid]
        if e.kind == "apex":
            apex_attach[e.z] = e.u
    members_of_z = {}
    for e in p.edges:
        if e.kind == "apex":
            members_of_z.setdefault(e.z, set()).add(e.u)
    for z, members in sorted(members_of_z.items()):
        adj = {v: [] for v in members}
        for eid, e in enumerate(p.edges):
            if e.kind == "tanner" and e.u in members and e.v in members:
                adj[e.u].append((e.v, eid, 1))
                adj[e.v].append((e.u, eid, -1))
        for lst in adj.values():
            lst.sort()
        a0 = apex_attach[z]
        potential = {a0: ident}
        queue = [a0]
        while queue:
            u = queue.pop(0)
            for v, eid, direction in adj[u]:
                if v in potential:
                    continue
                step = sigma_of_edge[eid]
                if direction == -1:
                    step = invert(step)
                potential[v] = compose(potential[u], step)
                queue.append(v)
        for eid, e in enumerate(p.edges):
            if e.kind == "apex" and e.z == z:
                sigma = invert(potential.get(e.u, ident))
                if sigma != ident:
                    perms[eid] = sigma
    assignment = VoltageAssignment(degree=degree, perms=perms)
    violation = validate_voltages(p, assignment)
    if violation is not None:
        raise VoltageError(
            "factor voltages do not define a cover: relator "
            f"{violation.relator_index} of Z-check {violation.z} is violated"
        )
    return assignment
