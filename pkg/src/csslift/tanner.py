"""Tanner graphs, signed multigraphs, spanning forests and cycle bases.

All constructions are deterministic (BFS with lowest-index roots and
lexicographic adjacency order) so that everything derived downstream is
bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, StructuralError
from .gf2 import BitMatrix
from .intmat import IntMatrix


@dataclass(frozen=True)
class TannerGraph:
    """Simple bipartite graph of checks vs bits, one edge per nonzero entry."""

    check_count: int
    bit_count: int
    edges: tuple


def tanner_graph(h: BitMatrix) -> TannerGraph:
    dense = h.to_dense()
    edges = tuple(
        (int(c), int(b)) for c in range(h.rows) for b in range(h.cols) if dense[c, b]
    )
    return TannerGraph(check_count=h.rows, bit_count=h.cols, edges=edges)


@dataclass(frozen=True)
class SignedMultigraph:
    """Bipartite multigraph with signed edges.

    Edges are (x, q, parallel, sign) with x and q original row/column indices
    of the defining integer matrix; parallel counts 0..|entry|-1 and all
    parallel edges of one pair share the entry's sign.
    """

    x_vertices: tuple
    q_vertices: tuple
    edges: tuple

    def edge_count(self) -> int:
        return len(self.edges)

    def degree_q(self, q: int) -> int:
        return sum(1 for e in self.edges if e[1] == q)


def signed_lifted_tanner(h_tilde: IntMatrix) -> SignedMultigraph:
    """Signed multigraph of an integer matrix: |entry| parallel edges per pair."""
    dense = h_tilde.data
    edges = []
    for x in range(h_tilde.rows):
        for q in range(h_tilde.cols):
            entry = int(dense[x, q])
            if entry == 0:
                continue
            sign = 1 if entry > 0 else -1
            for parallel in range(abs(entry)):
                edges.append((x, q, parallel, sign))
    return SignedMultigraph(
        x_vertices=tuple(range(h_tilde.rows)),
        q_vertices=tuple(range(h_tilde.cols)),
        edges=tuple(edges),
    )


def induced_subgraph_z(t_tilde: SignedMultigraph, z_row) -> SignedMultigraph:
    """Subgraph induced by a Z-check: its support qubits, adjacent checks, all edges."""
    z_row = np.asarray(z_row).reshape(-1)
    if z_row.shape[0] != len(t_tilde.q_vertices):
        raise DimensionError(
            f"row length {z_row.shape[0]} != qubit count {len(t_tilde.q_vertices)}"
        )
    kept_q = tuple(q for q in t_tilde.q_vertices if z_row[q] != 0)
    kept_q_set = set(kept_q)
    edges = tuple(e for e in t_tilde.edges if e[1] in kept_q_set)
    kept_x = tuple(sorted({e[0] for e in edges}))
    return SignedMultigraph(x_vertices=kept_x, q_vertices=kept_q, edges=edges)


# ---------------------------------------------------------------------------
# Generic undirected multigraphs on integer vertices; the edge identity is its
# position in the edge list.


@dataclass(frozen=True)
class MultiGraph:
    num_vertices: int
    edges: tuple  # of (u, v)

    def adjacency(self):
        adj = [[] for _ in range(self.num_vertices)]
        for eid, (u, v) in enumerate(self.edges):
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        for lst in adj:
            lst.sort()
        return adj


@dataclass(frozen=True)
class SpanningForest:
    """BFS forest: one root per component, a parent edge per non-root vertex."""

    roots: tuple
    parent_edge: tuple  # edge id per vertex, -1 at roots
    non_tree_edges: tuple

    @property
    def tree_edges(self) -> frozenset:
        return frozenset(e for e in self.parent_edge if e != -1)

    def component_count(self) -> int:
        return len(self.roots)


def spanning_forest(g: MultiGraph) -> SpanningForest:
    """Deterministic BFS forest: lowest-index roots, lexicographic edge order."""
    adj = g.adjacency()
    parent_edge = [-1] * g.num_vertices
    visited = [False] * g.num_vertices
    roots = []
    tree = set()
    for start in range(g.num_vertices):
        if visited[start]:
            continue
        roots.append(start)
        visited[start] = True
        queue = [start]
        while queue:
            u = queue.pop(0)
            for v, eid in adj[u]:
                if not visited[v]:
                    visited[v] = True
                    parent_edge[v] = eid
                    tree.add(eid)
                    queue.append(v)
    non_tree = tuple(e for e in range(len(g.edges)) if e not in tree)
    return SpanningForest(
        roots=tuple(roots), parent_edge=tuple(parent_edge), non_tree_edges=non_tree
    )


def _check_forest(g: MultiGraph, f: SpanningForest) -> None:
    if len(f.parent_edge) != g.num_vertices:
        raise StructuralError("forest does not cover the graph's vertex set")
    roots = set(f.roots)
    for v, eid in enumerate(f.parent_edge):
        if eid == -1:
            if v not in roots:
                raise StructuralError(f"vertex {v} has no parent edge and is not a root")
            continue
        if not (0 <= eid < len(g.edges)) or v not in g.edges[eid][:2]:
            raise StructuralError(f"parent edge {eid} of vertex {v} is not incident")
    for v in range(g.num_vertices):
        seen = set()
        cur = v
        while f.parent_edge[cur] != -1:
            if cur in seen:
                raise StructuralError("parent pointers contain a cycle")
            seen.add(cur)
            u, w = g.edges[f.parent_edge[cur]]
            cur = w if cur == u else u


def _parent_vertex(g: MultiGraph, f: SpanningForest, v: int) -> int:
    u, w = g.edges[f.parent_edge[v]]
    return w if v == u else u


def _path_to_root(g: MultiGraph, f: SpanningForest, v: int):
    path = [v]
    while f.parent_edge[path[-1]] != -1:
        path.append(_parent_vertex(g, f, path[-1]))
    return path


def tree_path(g: MultiGraph, f: SpanningForest, a: int, b: int):
    """Oriented edge path a -> b through the forest as (edge id, direction) pairs.

    direction +1 traverses the edge u -> v as stored, -1 the reverse.
    """
    pa = _path_to_root(g, f, a)
    pb = _path_to_root(g, f, b)
    if pa[-1] != pb[-1]:
        raise StructuralError(f"vertices {a} and {b} lie in different components")
    ia, ib = len(pa) - 1, len(pb) - 1
    while ia > 0 and ib > 0 and pa[ia - 1] == pb[ib - 1]:
        ia -= 1
        ib -= 1
    steps = []
    for i in range(ia):
        eid = f.parent_edge[pa[i]]
        u, v = g.edges[eid]
        steps.append((eid, 1) if (u == pa[i] and v == pa[i + 1]) else (eid, -1))
    down = []
    for i in range(ib):
        eid = f.parent_edge[pb[i]]
        u, v = g.edges[eid]
        down.append((eid, 1) if (u == pb[i + 1] and v == pb[i]) else (eid, -1))
    return steps + list(reversed(down))


def cycle_basis(g: MultiGraph, f: SpanningForest):
    """One oriented fundamental cycle per non-tree edge (plus its tree path)."""
    _check_forest(g, f)
    cycles = []
    for eid in f.non_tree_edges:
        u, v = g.edges[eid]
        cycles.append(tuple([(eid, 1)] + tree_path(g, f, v, u)))
    return cycles


def walk_vertices(g: MultiGraph, start: int, path):
    """Vertex sequence of an edge path; raises if the steps do not chain."""
    seq = [start]
    for eid, direction in path:
        u, v = g.edges[eid]
        a, b = (u, v) if direction == 1 else (v, u)
        if a != seq[-1]:
            raise StructuralError("edge path does not chain")
        seq.append(b)
    return seq


def connected_components(num_vertices: int, edges):
    """Sorted vertex components of an edge list (vertices may be isolated)."""
    parent = list(range(num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups = {}
    for v in range(num_vertices):
        groups.setdefault(find(v), []).append(v)
    return [tuple(groups[r]) for r in sorted(groups)]
