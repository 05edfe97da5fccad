"""Per-Z-check graphs: multiplicity expansion, signed edge pairing, Betti data.

Given an integer lift, each Z-check induces a signed subgraph of the lifted
Tanner multigraph.  Expanding every qubit into |entry| copies and pairing
oppositely signed edges at each X-check yields a graph whose X-copies all
have degree two; the per-component first Betti numbers label connected sums
of S^3 x S^1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import CssLiftError, DimensionError
from .tanner import induced_subgraph_z, signed_lifted_tanner
from .zlift import ZLiftedCode

_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass(frozen=True)
class MultCopyGraph:
    """Induced subgraph of a Z-check with each qubit split into |entry| copies.

    Edges are ((q, copy), x, parallel, sign) where sign is the product of the
    Z-entry sign at q and the X-entry sign of the underlying edge.
    """

    z_index: int
    q_copies: tuple  # of (q, copy)
    x_vertices: tuple
    edges: tuple


@dataclass(frozen=True)
class PairedGraph:
    """Result of pairing oppositely signed edges at every X-vertex.

    Every X-copy has degree exactly two; ``projection`` maps each unsigned
    edge back to the lifted-Tanner edge (x, q, parallel) it came from.
    """

    z_index: int
    q_copies: tuple
    x_copies: tuple  # of (x, pair index)
    edges: tuple  # of (q_copy, x_copy)
    projection: tuple  # per edge: (x, q, parallel)


@dataclass(frozen=True)
class BettiDescriptor:
    """First Betti number per connected component, with manifold labels."""

    components: tuple  # b1 per component, ordered by smallest vertex

    @property
    def labels(self) -> tuple:
        return tuple(
            "#" + str(b).translate(_SUBSCRIPTS) + " S³×S¹"
            for b in self.components
        )


def multigraph_z(zlifted: ZLiftedCode, z_index: int) -> MultCopyGraph:
    """Build the multiplicity-expanded signed subgraph of one Z-check."""
    hz = zlifted.hz_tilde.data
    if not (0 <= z_index < hz.shape[0]):
        raise DimensionError(f"Z-check index {z_index} out of range")
    lifted = signed_lifted_tanner(zlifted.hx_tilde)
    sub = induced_subgraph_z(lifted, hz[z_index])
    q_copies = []
    for q in sub.q_vertices:
        for copy in range(abs(int(hz[z_index, q]))):
            q_copies.append((q, copy))
    edges = []
    for q, copy in q_copies:
        z_sign = 1 if hz[z_index, q] > 0 else -1
        for x, eq, parallel, sign in sub.edges:
            if eq == q:
                edges.append(((q, copy), x, parallel, z_sign * sign))
    # sign balance at each X-vertex is forced by the lift's orthogonality
    for x in sub.x_vertices:
        balance = sum(e[3] for e in edges if e[1] == x)
        if balance != 0:
            raise CssLiftError(
                f"signed edges at X-check {x} do not balance; "
                "the integer lift violates orthogonality"
            )
    return MultCopyGraph(
        z_index=z_index,
        q_copies=tuple(q_copies),
        x_vertices=tuple(sub.x_vertices),
        edges=tuple(edges),
    )


def pair_edges(
    graph: MultCopyGraph, strategy: str = "lexicographic", seed: int | None = None
) -> PairedGraph:
    """Pair oppositely signed edges at every X-vertex.

    ``lexicographic`` pairs the i-th positive with the i-th negative edge in
    (q, copy, parallel) order; ``seeded`` shuffles the negative side first.
    """
    if strategy not in ("lexicographic", "seeded"):
        raise DimensionError(f"unknown pairing strategy {strategy!r}")
    if strategy == "seeded" and seed is None:
        raise DimensionError("seeded pairing requires a seed")
    rng = random.Random(seed) if strategy == "seeded" else None
    x_copies = []
    edges = []
    projection = []
    for x in graph.x_vertices:
        pos = sorted(
            (e for e in graph.edges if e[1] == x and e[3] > 0),
            key=lambda e: (e[0], e[2]),
        )
        neg = sorted(
            (e for e in graph.edges if e[1] == x and e[3] < 0),
            key=lambda e: (e[0], e[2]),
        )
        if rng is not None:
            rng.shuffle(neg)
        for pair_idx, (pe, ne) in enumerate(zip(pos, neg)):
            x_copy = (x, pair_idx)
            x_copies.append(x_copy)
            for endpoint in (pe, ne):
                q_copy, _, parallel, _ = endpoint
                edges.append((q_copy, x_copy))
                projection.append((x, q_copy[0], parallel))
    return PairedGraph(
        z_index=graph.z_index,
        q_copies=graph.q_copies,
        x_copies=tuple(x_copies),
        edges=tuple(edges),
        projection=tuple(projection),
    )


def paired_components(graph: PairedGraph):
    """Connected components as vertex tuples, ordered by first vertex.

    Vertices are tagged ("q", q, copy) / ("x", x, pair) to keep the two
    namespaces apart.
    """
    vertices = [("q",) + qc for qc in graph.q_copies]
    vertices += [("x",) + xc for xc in graph.x_copies]
    index = {v: i for i, v in enumerate(vertices)}
    from .tanner import connected_components

    edge_ids = [
        (index[("q",) + u], index[("x",) + v]) for u, v in graph.edges
    ]
    comps = connected_components(len(vertices), edge_ids)
    return [tuple(vertices[i] for i in comp) for comp in comps]


def betti_components(graph: PairedGraph) -> BettiDescriptor:
    """First Betti number E - V + 1 of every connected component."""
    comps = paired_components(graph)
    numbers = []
    for comp in comps:
        members = set(comp)
        e_count = sum(1 for u, v in graph.edges if ("q",) + u in members)
        numbers.append(e_count - len(comp) + 1)
    return BettiDescriptor(components=tuple(numbers))
