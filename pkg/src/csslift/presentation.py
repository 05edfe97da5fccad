"""Combinatorial presentations of a code's lifting space.

A presentation is a skeleton graph (X-check, qubit, and optional apex
vertices), a deterministic global spanning forest whose non-tree edges are
the covering-space generators, and per-Z-check relator cycles:

* ``cone_presentation`` cones each Z-check's induced Tanner subgraph off to
  an apex vertex and takes a full fundamental cycle basis of that cone.
* ``cellular_presentation`` works on the lifted Tanner multigraph of an
  integer lift; the relators are projections of fundamental cycles of the
  paired per-check graphs, plus cycles through the extra edges that join
  their components.

Relators are stored as explicit closed edge paths; voltage validation
multiplies fiber permutations along them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .checkgraph import multigraph_z, pair_edges, paired_components
from .css import CssCode
from .errors import DimensionError, StructuralError
from .intmat import IntMatrix, rational_rank
from .tanner import MultiGraph, spanning_forest
from .zlift import ZLiftedCode

VERTEX_X = "X"
VERTEX_Q = "Q"
VERTEX_APEX = "Z"


@dataclass(frozen=True)
class SkeletonEdge:
    u: int
    v: int
    kind: str  # "tanner" | "apex" | "ztype"
    parallel: int  # disambiguator among edges sharing (u, v)
    x: int | None = None  # X-check index of a tanner edge
    q: int | None = None  # qubit index of a tanner edge
    z: int | None = None  # owning Z-check of apex/ztype edges


@dataclass
class LiftPresentation:
    kind: str  # "cone" | "cellular"
    num_x: int
    num_q: int
    num_apex: int
    edges: tuple
    tree_edges: frozenset
    generators: tuple
    relators: dict  # z -> tuple of relator paths [(edge_id, dir), ...]
    z_basepoint: dict  # z -> skeleton vertex id
    z_tree: dict  # z -> frozenset of edge ids spanning the z-subcomplex
    meta: dict = field(default_factory=dict)

    @property
    def num_vertices(self) -> int:
        return self.num_x + self.num_q + self.num_apex

    def vertex_class(self, v: int) -> str:
        if v < self.num_x:
            return VERTEX_X
        if v < self.num_x + self.num_q:
            return VERTEX_Q
        return VERTEX_APEX

    def qubit_vertex(self, q: int) -> int:
        return self.num_x + q

    def graph(self) -> MultiGraph:
        return MultiGraph(
            self.num_vertices, tuple((e.u, e.v) for e in self.edges)
        )

    def z_path(self, z: int, target: int):
        """Edge path from the z-basepoint to ``target`` through the z-tree."""
        tree = _SubTree(self.edges, self.z_tree[z], self.z_basepoint[z])
        return tree.path_from_root(target)


class _SubTree:
    """Parent structure of a spanning tree given by a set of edge ids."""

    def __init__(self, edges, tree_ids, root: int):
        adj = {}
        for eid in sorted(tree_ids):
            e = edges[eid]
            adj.setdefault(e.u, []).append((e.v, eid))
            adj.setdefault(e.v, []).append((e.u, eid))
        for lst in adj.values():
            lst.sort()
        self.edges = edges
        self.root = root
        self.parent = {root: None}
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v, eid in adj.get(u, []):
                if v not in self.parent:
                    self.parent[v] = (u, eid)
                    queue.append(v)

    def path_from_root(self, target: int):
        if target not in self.parent:
            raise StructuralError(
                f"vertex {target} is not spanned by the subcomplex tree"
            )
        rev = []
        cur = target
        while self.parent[cur] is not None:
            parent_vertex, eid = self.parent[cur]
            e = self.edges[eid]
            rev.append((eid, 1) if (e.u, e.v) == (parent_vertex, cur) else (eid, -1))
            cur = parent_vertex
        return tuple(reversed(rev))

    def path(self, a: int, b: int):
        """Oriented path a -> b inside the tree."""
        to_a = self.path_from_root(a)
        to_b = self.path_from_root(b)
        common = 0
        while (
            common < len(to_a)
            and common < len(to_b)
            and to_a[common] == to_b[common]
        ):
            common += 1
        up = tuple((eid, -d) for eid, d in reversed(to_a[common:]))
        return up + to_b[common:]


def _global_forest(num_vertices: int, edges) -> frozenset:
    """Two-phase spanning forest: BFS over the Tanner subgraph, then the
    lowest-id apex/joining edges that merge remaining components.

    Keeping the Tanner phase self-contained makes the Tanner part of the
    forest identical across presentation kinds over the same Tanner graph.
    """
    tanner_ids = [i for i, e in enumerate(edges) if e.kind == "tanner"]
    sub = MultiGraph(
        num_vertices, tuple((edges[i].u, edges[i].v) for i in tanner_ids)
    )
    tree = {tanner_ids[local] for local in spanning_forest(sub).tree_edges}
    parent = list(range(num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in tree:
        e = edges[eid]
        parent[find(max(e.u, e.v))] = find(min(e.u, e.v))
    for eid, e in enumerate(edges):
        if e.kind == "tanner":
            continue
        ru, rv = find(e.u), find(e.v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
            tree.add(eid)
    return frozenset(tree)


def _forest_restricted_tree(edges, subset_ids, vertices, forest_tree: frozenset):
    """Spanning tree of a connected subcomplex: global tree edges first.

    Iterates the subcomplex's edges in id order, preferring global forest
    members, and keeps those that merge components.
    """
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = set()
    ordered = sorted(subset_ids, key=lambda eid: (eid not in forest_tree, eid))
    for eid in ordered:
        e = edges[eid]
        ru, rv = find(e.u), find(e.v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
            chosen.add(eid)
    roots = {find(v) for v in vertices}
    if len(roots) > 1:
        raise StructuralError("z-subcomplex is not connected")
    return frozenset(chosen)


def _dfs_tree(edges, subset_ids, vertices, root: int):
    """Depth-first spanning tree of a connected subcomplex, lowest-first."""
    adj = {v: [] for v in vertices}
    for eid in sorted(subset_ids):
        e = edges[eid]
        adj[e.u].append((e.v, eid))
        adj[e.v].append((e.u, eid))
    for lst in adj.values():
        lst.sort()
    chosen = set()
    visited = {root}
    stack = [(root, list(reversed(adj[root])))]
    while stack:
        u, todo = stack[-1]
        while todo:
            v, eid = todo.pop()
            if v not in visited:
                visited.add(v)
                chosen.add(eid)
                stack.append((v, list(reversed(adj[v]))))
                break
        else:
            stack.pop()
    if visited != set(vertices):
        raise StructuralError("z-subcomplex is not connected")
    return frozenset(chosen)


def _fundamental_cycles(edges, subset_ids, tree_ids, root: int):
    """One oriented cycle per non-tree edge of the subcomplex, id order."""
    tree = _SubTree(edges, tree_ids, root)
    cycles = []
    for eid in sorted(subset_ids):
        if eid in tree_ids:
            continue
        e = edges[eid]
        cycles.append(tuple([(eid, 1)] + list(tree.path(e.v, e.u))))
    return tuple(cycles)


def cone_presentation(code: CssCode, relator_basis: str = "forest") -> LiftPresentation:
    """Tanner graph plus one apex per Z-check coning off its induced subgraph.

    ``relator_basis`` selects the spanning tree used for each cone's
    fundamental cycle basis: "forest" restricts the global forest, "dfs"
    grows an independent depth-first tree (a second, equally valid basis).
    """
    if relator_basis not in ("forest", "dfs"):
        raise DimensionError(f"unknown relator basis {relator_basis!r}")
    hx = code.hx.to_dense()
    hz = code.hz.to_dense()
    num_x, n = hx.shape
    num_z = hz.shape[0]
    edges = []
    for x in range(num_x):
        for q in range(n):
            if hx[x, q]:
                edges.append(
                    SkeletonEdge(u=x, v=num_x + q, kind="tanner", parallel=0, x=x, q=q)
                )
    tanner_ids_by_pair = {
        (e.x, e.q): eid for eid, e in enumerate(edges)
    }
    cone_members = {}
    for z in range(num_z):
        qs = [q for q in range(n) if hz[z, q]]
        xs = sorted({x for q in qs for x in range(num_x) if hx[x, q]})
        members = sorted([x for x in xs] + [num_x + q for q in qs])
        cone_members[z] = (qs, xs, members)
        apex = num_x + n + z
        for v in members:
            edges.append(
                SkeletonEdge(u=v, v=apex, kind="apex", parallel=0, z=z)
            )
    edges = tuple(edges)
    tree = _global_forest(num_x + n + num_z, edges)
    generators = tuple(sorted(set(range(len(edges))) - tree))
    relators = {}
    z_basepoint = {}
    z_tree = {}
    for z in range(num_z):
        qs, xs, members = cone_members[z]
        apex = num_x + n + z
        subset = {
            tanner_ids_by_pair[(x, q)]
            for x in xs
            for q in qs
            if hx[x, q]
        }
        subset |= {
            eid for eid, e in enumerate(edges) if e.kind == "apex" and e.z == z
        }
        vertices = members + [apex]
        basepoint = min(vertices)
        if relator_basis == "forest":
            s_z = _forest_restricted_tree(edges, subset, vertices, tree)
        else:
            s_z = _dfs_tree(edges, subset, vertices, basepoint)
        relators[z] = _fundamental_cycles(edges, subset, s_z, basepoint)
        z_basepoint[z] = basepoint
        z_tree[z] = s_z
    return LiftPresentation(
        kind="cone",
        num_x=num_x,
        num_q=n,
        num_apex=num_z,
        edges=edges,
        tree_edges=tree,
        generators=generators,
        relators=relators,
        z_basepoint=z_basepoint,
        z_tree=z_tree,
    )


def _pairing_for(pairings, z: int):
    if pairings is None:
        return ("lexicographic", None)
    if isinstance(pairings, int):
        return ("seeded", pairings)
    choice = pairings.get(z)
    if choice is None:
        return ("lexicographic", None)
    return ("seeded", choice)


def cellular_presentation(zl: ZLiftedCode, pairings=None) -> LiftPresentation:
    """Presentation over the lifted Tanner multigraph of an integer lift.

    ``pairings`` chooses the per-Z-check edge pairing: None for
    lexicographic everywhere, an int seed for every check, or a dict mapping
    check index to seed (missing entries stay lexicographic).
    """
    hx_t = zl.hx_tilde.data
    hz_t = zl.hz_tilde.data
    num_x, n = hx_t.shape
    num_z = hz_t.shape[0]
    edges = []
    tanner_ids = {}
    for x in range(num_x):
        for q in range(n):
            entry = int(hx_t[x, q])
            for parallel in range(abs(entry)):
                tanner_ids[(x, q, parallel)] = len(edges)
                edges.append(
                    SkeletonEdge(
                        u=x, v=num_x + q, kind="tanner", parallel=parallel, x=x, q=q
                    )
                )
    paired_graphs = {}
    ztype_by_z = {z: [] for z in range(num_z)}
    parallel_count = {}
    for z in range(num_z):
        strategy, seed = _pairing_for(pairings, z)
        paired = pair_edges(multigraph_z(zl, z), strategy=strategy, seed=seed)
        paired_graphs[z] = paired
        comps = paired_components(paired)
        anchors = []
        for comp in comps:
            projected = [
                (v[1] if v[0] == "x" else num_x + v[1]) for v in comp
            ]
            anchors.append(min(projected))
        for other in anchors[1:]:
            u, v = min(anchors[0], other), max(anchors[0], other)
            parallel = parallel_count.get((u, v), 0)
            parallel_count[(u, v)] = parallel + 1
            ztype_by_z[z].append(len(edges))
            edges.append(
                SkeletonEdge(u=u, v=v, kind="ztype", parallel=parallel, z=z)
            )
    edges = tuple(edges)
    tree = _global_forest(num_x + n, edges)
    generators = tuple(sorted(set(range(len(edges))) - tree))
    relators = {}
    z_basepoint = {}
    z_tree = {}
    for z in range(num_z):
        paired = paired_graphs[z]
        # subcomplex edges: the lifted-Tanner edges this check uses + its
        # component-joining edges
        subset = {tanner_ids[key] for key in set(paired.projection)}
        subset |= set(ztype_by_z[z])
        vertices = sorted(
            {edges[eid].u for eid in subset}
            | {edges[eid].v for eid in subset}
            | {num_x + q for q in range(n) if hz_t[z, q] != 0}
        )
        if not vertices:
            relators[z] = ()
            z_basepoint[z] = None
            z_tree[z] = frozenset()
            continue
        basepoint = min(vertices)
        s_z = _forest_restricted_tree(edges, subset, vertices, tree)
        relator_paths = list(_projected_cycles(paired, tanner_ids, num_x))
        for eid in sorted(ztype_by_z[z]):
            if eid in s_z:
                continue
            e = edges[eid]
            tree_struct = _SubTree(edges, s_z, basepoint)
            relator_paths.append(
                tuple([(eid, 1)] + list(tree_struct.path(e.v, e.u)))
            )
        relators[z] = tuple(relator_paths)
        z_basepoint[z] = basepoint
        z_tree[z] = s_z
    return LiftPresentation(
        kind="cellular",
        num_x=num_x,
        num_q=n,
        num_apex=0,
        edges=edges,
        tree_edges=tree,
        generators=generators,
        relators=relators,
        z_basepoint=z_basepoint,
        z_tree=z_tree,
    )


def _projected_cycles(paired, tanner_ids, num_x):
    """Fundamental cycles of the paired graph, projected to skeleton paths."""
    vertices = [("q",) + qc for qc in paired.q_copies]
    vertices += [("x",) + xc for xc in paired.x_copies]
    index = {v: i for i, v in enumerate(vertices)}
    pg = MultiGraph(
        len(vertices),
        tuple(
            (index[("q",) + u], index[("x",) + v]) for u, v in paired.edges
        ),
    )
    forest = spanning_forest(pg)
    from .tanner import cycle_basis

    for cycle in cycle_basis(pg, forest):
        path = []
        for pg_eid, direction in cycle:
            x, q, parallel = paired.projection[pg_eid]
            skel_eid = tanner_ids[(x, q, parallel)]
            pg_u, pg_v = pg.edges[pg_eid]
            start = vertices[pg_u] if direction == 1 else vertices[pg_v]
            # skeleton tanner edges run X -> Q; starting at a q-copy reverses
            path.append((skel_eid, -1 if start[0] == "q" else 1))
        yield tuple(path)


def quotient_abelianization_rank(p: LiftPresentation) -> int:
    """Free rank of generators modulo the relators' exponent-sum vectors."""
    gen_index = {eid: i for i, eid in enumerate(p.generators)}
    rows = []
    for z in sorted(p.relators):
        for relator in p.relators[z]:
            row = [0] * len(p.generators)
            for eid, direction in relator:
                if eid in gen_index:
                    row[gen_index[eid]] += direction
            rows.append(row)
    if not rows or not p.generators:
        return len(p.generators)
    matrix = IntMatrix.from_dense(np.array(rows, dtype=np.int64))
    return len(p.generators) - rational_rank(matrix)
