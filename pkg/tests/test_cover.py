"""Voltage validation, lifted boundary maps, cover enumeration."""

from __future__ import annotations

import numpy as np
import pytest

from csslift.cover import (
    VoltageAssignment,
    cover_components,
    enumerate_covers,
    identity_perm,
    lift_code,
    validate_voltages,
)
from csslift.css import new_css, parameters, parameters_with_distance
from csslift.errors import VoltageError
from csslift.gf2 import BitMatrix
from csslift.presentation import cone_presentation
from csslift.zlift import support_preserving_witness

from conftest import TOY_HX, TOY_HZ


@pytest.fixture
def toy_setup(toy_code):
    zl = support_preserving_witness(toy_code, entry_bound=1)
    return toy_code, zl, cone_presentation(toy_code)


@pytest.fixture
def free_rank_one():
    """Code without Z-checks whose Tanner graph is a 4-cycle: one generator."""
    code = new_css(BitMatrix.from_dense(TOY_HX), BitMatrix.zeros(0, 2))
    zl = support_preserving_witness(code, entry_bound=1)
    return code, zl, cone_presentation(code)


def test_identity_voltages_always_valid(toy_setup):
    _, _, p = toy_setup
    for t in (1, 2, 3):
        assert validate_voltages(p, VoltageAssignment(degree=t)) is None


def test_no_relators_means_everything_valid(free_rank_one):
    _, _, p = free_rank_one
    gen = p.generators[0]
    v = VoltageAssignment(degree=3, perms={gen: (1, 2, 0)})
    assert validate_voltages(p, v) is None


def test_tree_edge_must_carry_identity(toy_setup):
    _, _, p = toy_setup
    tree_edge = min(p.tree_edges)
    with pytest.raises(VoltageError, match="tree edge"):
        validate_voltages(
            p, VoltageAssignment(degree=2, perms={tree_edge: (1, 0)})
        )


def test_violation_reported_deterministically(toy_setup):
    _, _, p = toy_setup
    gen = p.generators[0]
    violation = validate_voltages(
        p, VoltageAssignment(degree=2, perms={gen: (1, 0)})
    )
    assert violation is not None
    assert violation.z == 0


def test_lift_degree_one_is_identity(toy_setup):
    code, zl, p = toy_setup
    lifted = lift_code(code, zl, p, VoltageAssignment(degree=1))
    assert np.array_equal(lifted.zlifted.hx_tilde.to_dense(), zl.hx_tilde.to_dense())
    assert np.array_equal(lifted.zlifted.hz_tilde.to_dense(), zl.hz_tilde.to_dense())


def test_trivial_lift_is_block_structured(toy_setup):
    code, zl, p = toy_setup
    base_params = parameters(code)
    for t in (2, 3):
        lifted = lift_code(code, zl, p, VoltageAssignment(degree=t))
        eye = np.eye(t, dtype=np.int64)
        assert np.array_equal(
            lifted.zlifted.hx_tilde.to_dense(), np.kron(zl.hx_tilde.to_dense(), eye)
        )
        assert np.array_equal(
            lifted.zlifted.hz_tilde.to_dense(), np.kron(zl.hz_tilde.to_dense(), eye)
        )
        lifted_params = parameters(lifted.zlifted.base)
        assert lifted_params.n == t * base_params.n
        assert lifted_params.k == t * base_params.k


def test_lifted_sizes_scale_with_degree(free_rank_one):
    code, zl, p = free_rank_one
    gen = p.generators[0]
    v = VoltageAssignment(degree=3, perms={gen: (1, 2, 0)})
    lifted = lift_code(code, zl, p, v)
    assert lifted.zlifted.hx_tilde.rows == 3 * code.num_x
    assert lifted.zlifted.hx_tilde.cols == 3 * code.n


def test_cover_components_examples(toy_setup):
    _, _, p = toy_setup
    assert cover_components(VoltageAssignment(degree=3), p) == ((0,), (1,), (2,))
    v = VoltageAssignment(degree=3, perms={p.generators[0]: (1, 2, 0)})
    assert cover_components(v, p) == ((0, 1, 2),)
    w = VoltageAssignment(degree=3, perms={p.generators[0]: (1, 0, 2)})
    assert cover_components(w, p) == ((0, 1), (2,))


def test_enumerate_free_rank_one(free_rank_one):
    _, _, p = free_rank_one
    classes = enumerate_covers(p, 2)
    assert len(classes) == 2  # identity (two sheets) and the swap (connected)
    connected = enumerate_covers(p, 2, connected_only=True)
    assert len(connected) == 1
    assert enumerate_covers(p, 1) == [VoltageAssignment(degree=1, perms={})]


def test_enumerate_classes_are_valid_and_canonical(toy_setup):
    code, zl, p = toy_setup
    for t in (2, 3):
        classes = enumerate_covers(p, t)
        for v in classes:
            assert validate_voltages(p, v) is None
        tuples = [v.image_tuple(p.generators) for v in classes]
        assert tuples == sorted(tuples)
        assert len(set(tuples)) == len(tuples)


def test_lifted_code_weight_preservation(free_rank_one):
    code, zl, p = free_rank_one
    gen = p.generators[0]
    v = VoltageAssignment(degree=3, perms={gen: (1, 2, 0)})
    lifted = lift_code(code, zl, p, v)
    base_weights = sorted((zl.hx_tilde.to_dense() != 0).sum(axis=1).tolist())
    lifted_weights = (lifted.zlifted.hx_tilde.to_dense() != 0).sum(axis=1)
    assert all(
        w in base_weights for w in lifted_weights.tolist()
    )
    assert set(lifted_weights.tolist()) == set(base_weights)


def test_galois_components_match_orbits():
    from csslift.hgp import (
        hgp_presentation,
        hpc_naive_zlift,
        hypergraph_product,
        repetition_check_matrix,
    )
    from csslift.tanner import connected_components

    rep2 = repetition_check_matrix(2)
    base = hypergraph_product(rep2, rep2)
    zl = hpc_naive_zlift(rep2, rep2)
    p = hgp_presentation(rep2, rep2)
    for v in enumerate_covers(p, 3):
        orbits = cover_components(v, p)
        lifted = lift_code(base, zl, p, v)
        hx = lifted.zlifted.hx_tilde.to_dense()
        t = v.degree
        edges = []
        rows, cols = np.nonzero(hx)
        for r, c in zip(rows.tolist(), cols.tolist()):
            edges.append((r, hx.shape[0] + c))
        comps = connected_components(hx.shape[0] + hx.shape[1], edges)
        nontrivial = [c for c in comps if len(c) > 1]
        assert len(nontrivial) == len(orbits)
        # each component has size (|X| + n) * orbit size
        sizes = sorted(len(c) for c in nontrivial)
        expected = sorted(
            (base.num_x + base.n) * len(orbit) for orbit in orbits
        )
        assert sizes == expected


def test_basepoint_rotation_permutes_z_blocks_only(toy_setup):
    code, zl, p = toy_setup
    import copy

    # move the basepoint of the single Z-check to another subcomplex vertex
    p2 = copy.deepcopy(p)
    tree_vertices = sorted(
        {p.edges[eid].u for eid in p.z_tree[0]}
        | {p.edges[eid].v for eid in p.z_tree[0]}
    )
    p2.z_basepoint[0] = tree_vertices[1]
    for t in (2, 3):
        for v in enumerate_covers(p, t):
            l1 = lift_code(code, zl, p, v)
            l2 = lift_code(code, zl, p2, v)
            assert np.array_equal(
                l1.zlifted.hx_tilde.to_dense(), l2.zlifted.hx_tilde.to_dense()
            )
            hz1 = l1.zlifted.hz_tilde.to_dense()
            hz2 = l2.zlifted.hz_tilde.to_dense()
            for z in range(code.num_z):
                block1 = hz1[z * t : (z + 1) * t]
                block2 = hz2[z * t : (z + 1) * t]
                assert sorted(map(tuple, block1.tolist())) == sorted(
                    map(tuple, block2.tolist())
                )


def test_deck_transformations_fix_lifted_matrices():
    from csslift.hgp import (
        cyclic_shift,
        factor_nontree_edges,
        hgp_presentation,
        hpc_naive_zlift,
        hypergraph_product,
        repetition_check_matrix,
    )

    rep2 = repetition_check_matrix(2)
    base = hypergraph_product(rep2, rep2)
    zl = hpc_naive_zlift(rep2, rep2)
    p = hgp_presentation(rep2, rep2)
    t = 3
    shift = {factor_nontree_edges(rep2)[0]: cyclic_shift(t)}
    from csslift.hgp import product_voltages

    v = product_voltages(p, shift, shift, mode="diagonal")
    lifted = lift_code(base, zl, p, v)
    hx = lifted.zlifted.hx_tilde.to_dense()
    hz = lifted.zlifted.hz_tilde.to_dense()
    for power in (1, 2):
        relabel = [(i + power) % t for i in range(t)]
        cols = np.arange(hx.shape[1]).reshape(-1, t)[:, relabel].reshape(-1)
        rows_x = np.arange(hx.shape[0]).reshape(-1, t)[:, relabel].reshape(-1)
        rows_z = np.arange(hz.shape[0]).reshape(-1, t)[:, relabel].reshape(-1)
        assert np.array_equal(hx[rows_x][:, cols], hx)
        assert np.array_equal(hz[rows_z][:, cols], hz)
