"""Cone and cellular presentations, relator structure, abelianization."""

from __future__ import annotations

import numpy as np
import pytest

from csslift.css import new_css
from csslift.gf2 import BitMatrix
from csslift.intmat import IntMatrix
from csslift.presentation import (
    cellular_presentation,
    cone_presentation,
    quotient_abelianization_rank,
)
from csslift.tanner import MultiGraph, walk_vertices
from csslift.zlift import validate_zlift

from conftest import TOY_HX, TOY_HZ


def _relator_paths_close(p):
    g = p.graph()
    for z in p.relators:
        for relator in p.relators[z]:
            eid, direction = relator[0]
            u, v = g.edges[eid]
            start = u if direction == 1 else v
            seq = walk_vertices(g, start, relator)
            assert seq[0] == seq[-1]


def test_toy_cone_counts(toy_code):
    p = cone_presentation(toy_code)
    assert p.num_vertices == 5  # two checks, two qubits, one apex
    assert len(p.edges) == 8  # four Tanner edges plus four apex edges
    assert len(p.relators[0]) == 4  # E - V + 1 of the cone
    assert len(p.generators) == 4
    _relator_paths_close(p)


def test_cone_without_z_checks():
    code = new_css(BitMatrix.from_dense(TOY_HX), BitMatrix.zeros(0, 2))
    p = cone_presentation(code)
    assert p.num_apex == 0
    assert p.relators == {}
    assert len(p.generators) == 1  # the Tanner 4-cycle
    assert quotient_abelianization_rank(p) == 1


def test_cone_single_qubit_contractible():
    code = new_css(BitMatrix.from_dense([[1]]), BitMatrix.zeros(0, 1))
    p = cone_presentation(code)
    assert p.generators == ()
    assert quotient_abelianization_rank(p) == 0


def test_toy_cellular_relator_count(toy_zlift):
    p = cellular_presentation(toy_zlift)
    assert p.num_apex == 0
    assert len(p.edges) == 8  # lifted Tanner multigraph, no z-type edges
    assert len(p.relators[0]) == 3  # paired-graph cycle rank, connected graph
    _relator_paths_close(p)


def test_cellular_without_z_checks(toy_code):
    code = new_css(BitMatrix.from_dense(TOY_HX), BitMatrix.zeros(0, 2))
    lift = validate_zlift(
        code,
        IntMatrix.from_dense([[1, -1], [1, -1]]),
        IntMatrix.zeros(0, 2),
    )
    p = cellular_presentation(lift)
    cone = cone_presentation(code)
    assert [(e.u, e.v, e.kind) for e in p.edges] == [
        (e.u, e.v, e.kind) for e in cone.edges
    ]
    assert p.relators in ({}, {})
    assert p.generators == cone.generators


def test_generator_count_formula(toy_code, toy_zlift):
    for p in (cone_presentation(toy_code), cellular_presentation(toy_zlift)):
        g = p.graph()
        from csslift.tanner import spanning_forest

        comps = spanning_forest(g).component_count()
        assert len(p.generators) == len(g.edges) - g.num_vertices + comps


def test_abelianization_examples(toy_code):
    from csslift.hgp import hypergraph_product, repetition_check_matrix

    rep2 = repetition_check_matrix(2)
    hpc = hypergraph_product(rep2, rep2)
    assert quotient_abelianization_rank(cone_presentation(hpc)) == 2
    # simply-connected presentation: a tree skeleton
    tree_code = new_css(BitMatrix.from_dense([[1, 1, 0], [0, 1, 1]]), BitMatrix.zeros(0, 3))
    assert quotient_abelianization_rank(cone_presentation(tree_code)) == 0


def test_hpc_cellular_abelianization():
    from csslift.hgp import hpc_naive_zlift, repetition_check_matrix

    rep2 = repetition_check_matrix(2)
    p = cellular_presentation(hpc_naive_zlift(rep2, rep2))
    assert quotient_abelianization_rank(p) == 2
    _relator_paths_close(p)


def test_cone_relator_count_is_cone_cycle_rank(fano_code):
    p = cone_presentation(fano_code)
    hx = fano_code.hx.to_dense()
    hz = fano_code.hz.to_dense()
    for z in range(fano_code.num_z):
        qs = [q for q in range(fano_code.n) if hz[z, q]]
        xs = {x for q in qs for x in range(fano_code.num_x) if hx[x, q]}
        v_count = len(qs) + len(xs) + 1
        e_count = sum(1 for x in xs for q in qs if hx[x, q]) + len(qs) + len(xs)
        assert len(p.relators[z]) == e_count - v_count + 1


def test_dfs_basis_produces_different_relators_same_skeleton(toy_code):
    p1 = cone_presentation(toy_code, relator_basis="forest")
    p2 = cone_presentation(toy_code, relator_basis="dfs")
    assert p1.edges == p2.edges
    assert p1.tree_edges == p2.tree_edges
    assert p1.generators == p2.generators
    assert any(p1.relators[z] != p2.relators[z] for z in p1.relators)
    _relator_paths_close(p2)


def test_cone_and_cellular_agree_for_unit_entry_lifts():
    """Same covers from both constructions when every entry is +-1 and each
    check's induced subgraph is connected, compared on the shared Tanner
    edges up to fiber relabelling."""
    import itertools

    from csslift.cover import conjugate, enumerate_covers
    from csslift.hgp import (
        hgp_presentation,
        hpc_naive_zlift,
        hypergraph_product,
        repetition_check_matrix,
    )

    rep2 = repetition_check_matrix(2)
    zl = hpc_naive_zlift(rep2, rep2)
    p_cone = hgp_presentation(rep2, rep2)
    p_cell = cellular_presentation(zl)
    tanner_ids = [i for i, e in enumerate(p_cone.edges) if e.kind == "tanner"]
    assert [(e.u, e.v) for e in p_cell.edges if e.kind == "tanner"] == [
        (p_cone.edges[i].u, p_cone.edges[i].v) for i in tanner_ids
    ]

    def restricted_classes(p, t):
        out = set()
        for v in enumerate_covers(p, t):
            images = tuple(v.perm(eid) for eid in tanner_ids)
            out.add(
                min(
                    tuple(conjugate(x, g) for x in images)
                    for g in itertools.permutations(range(t))
                )
            )
        return out

    for t in (2, 3):
        assert restricted_classes(p_cone, t) == restricted_classes(p_cell, t)


def test_cellular_ztype_edges_join_disconnected_pieces():
    # one Z-check whose support spans two Tanner components
    hx = [[1, 1, 0, 0], [0, 0, 1, 1]]
    hz = [[1, 1, 1, 1]]
    code = new_css(BitMatrix.from_dense(hx), BitMatrix.from_dense(hz))
    lift = validate_zlift(
        code,
        IntMatrix.from_dense([[1, -1, 0, 0], [0, 0, 1, -1]]),
        IntMatrix.from_dense([[1, 1, 1, 1]]),
    )
    p = cellular_presentation(lift)
    ztype = [e for e in p.edges if e.kind == "ztype"]
    assert len(ztype) == 1
    assert p.vertex_class(p.z_basepoint[0]) in ("X", "Q")
