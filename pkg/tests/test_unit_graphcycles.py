import math

import numpy as np
import pytest

from src.conf import messages
from src.exceptions import Disconnected, InvalidInput, SelfLoop, TooLargeForOracle, Trivial, WrongTopology
from src.models import SpanningTree, WeightedGraph
from src.services import fixtures, graphcycles, numkit, oblique, sampling


@pytest.fixture()
def example():
    g = fixtures.graph_example()
    return g, graphcycles.cycle_cocycle_basis(g, graphcycles.spanning_tree(g))


def test_incidence_matrix(example):
    g, _ = example
    delta = graphcycles.incidence_matrix(g)
    assert delta.shape == (4, 5)
    assert delta[1, 0] == 1 and delta[0, 0] == -1
    assert np.all(delta.sum(axis=0) == 0)


def test_self_loop_rejected():
    with pytest.raises(SelfLoop):
        WeightedGraph(2, ((0, 1), (1, 1)), (1.0, 1.0))


def test_bad_weight_rejected():
    with pytest.raises(InvalidInput) as err:
        WeightedGraph(2, ((0, 1),), (0.0,))
    assert err.value.detail == messages.BAD_WEIGHT


def test_disconnected():
    g = WeightedGraph(4, ((0, 1), (2, 3)), (1.0, 1.0))
    with pytest.raises(Disconnected):
        graphcycles.spanning_tree(g)


def test_dfs_tree_and_bases(example):
    _, basis = example
    assert basis.tree.tree_edges == fixtures.GRAPH_TREE
    assert basis.chords == (3, 4)
    assert basis.cochords == (0, 1, 2)
    assert basis.cycle_vectors.tolist() == [list(c) for c in fixtures.GRAPH_CYCLES]
    assert basis.cocycle_vectors.tolist() == [list(c) for c in fixtures.GRAPH_COCYCLES]


def test_user_tree():
    g = fixtures.graph_example()
    tree = SpanningTree.from_edges(g, {0, 1, 3})
    basis = graphcycles.cycle_cocycle_basis(g, tree)
    assert basis.chords == (2, 4)
    report = graphcycles.tree_polynomials(g, basis)
    assert report.det_L0 == pytest.approx(8.0, abs=1e-9)


def test_user_tree_with_cycle_rejected():
    with pytest.raises(InvalidInput) as err:
        SpanningTree.from_edges(fixtures.graph_example(), {0, 1, 4})
    assert err.value.detail == messages.NOT_A_TREE


def test_tree_polynomials_unit_weights(example):
    g, basis = example
    report = graphcycles.tree_polynomials(g, basis)
    assert report.passed
    assert report.tree_count == fixtures.GRAPH_TREE_COUNT
    assert report.det_L0 == pytest.approx(8.0, abs=1e-9)
    assert report.det_Gamma1 == pytest.approx(8.0, abs=1e-9)


def test_tree_polynomials_random_graphs():
    for seed in range(10):
        g = sampling.random_connected_graph(np.random.default_rng(seed), max_vertices=7, max_edges=11)
        basis = graphcycles.cycle_cocycle_basis(g, graphcycles.spanning_tree(g))
        report = graphcycles.tree_polynomials(g, basis)
        assert report.ratio_ok, seed
        assert report.oracle_ok, seed


def test_enumeration_cap(example):
    g, _ = example
    with pytest.raises(TooLargeForOracle):
        graphcycles.enumerate_spanning_trees(g, max_edges=3)


def test_d_matrix_and_forms(example):
    _, basis = example
    d = graphcycles.d_matrix(basis)
    np.testing.assert_array_equal(d, [[0.0, -1.0], [-1.0, 1.0], [-1.0, 0.0]])
    k0 = graphcycles.k0_from_d(d)
    sigma1 = graphcycles.sigma1_from_d(d)
    np.testing.assert_allclose(k0.entries, [[3.0, -1.0], [-1.0, 3.0]])
    np.testing.assert_allclose(numkit.spectrum_of(k0).values, [4.0, 2.0], atol=1e-9)
    np.testing.assert_allclose(numkit.spectrum_of(sigma1).values, [4.0, 2.0, 1.0], atol=1e-9)
    np.testing.assert_allclose(numkit.charpoly(k0.entries).coefficients, [1.0, -6.0, 8.0], atol=1e-9)
    np.testing.assert_allclose(numkit.charpoly(sigma1.entries).coefficients, [1.0, -7.0, 14.0, -8.0], atol=1e-9)


def test_k0_closed_form_at_random_weights(example):
    _, basis = example
    rng = np.random.default_rng(5)
    for _ in range(5):
        w = sampling.log_uniform(rng, 1e-1, 1e1, 5)
        k0 = graphcycles.k0_from_d(graphcycles.d_matrix(basis, w))
        np.testing.assert_allclose(k0.entries, fixtures.graph_k0_expected(w), rtol=1e-12, atol=1e-12)


def test_unit_eigenvector(example):
    _, basis = example
    rng = np.random.default_rng(11)
    for _ in range(25):
        assert graphcycles.eigvec_unit_check(basis, sampling.log_uniform(rng, 1e-1, 1e1, 5)) < 1e-9


def test_unit_eigenvector_needs_example_topology():
    g = WeightedGraph(3, ((0, 1), (1, 2), (2, 0)), (1.0, 1.0, 1.0))
    basis = graphcycles.cycle_cocycle_basis(g, graphcycles.spanning_tree(g))
    with pytest.raises(WrongTopology):
        graphcycles.eigvec_unit_check(basis)


def test_graph_blocks(example):
    g = fixtures.graph_example((1.0, 2.0, 3.0, 4.0, 5.0))
    basis = graphcycles.cycle_cocycle_basis(g, graphcycles.spanning_tree(g))
    space = graphcycles.graph_space(g)
    blocks = oblique.metric_blocks(graphcycles.graph_basis(basis), space)
    np.testing.assert_allclose(blocks.L1.entries, np.diag([1.0, 2.0, 3.0]), atol=1e-12)
    np.testing.assert_allclose(blocks.Gamma0.entries, np.diag([1 / 4, 1 / 5]), atol=1e-12)
    forms = oblique.k_sigma_forms(blocks)
    np.testing.assert_allclose(forms.K0.entries, fixtures.graph_k0_expected(g.weights), atol=1e-10)


def test_graph_projections_pass_both_dualities(example):
    g, basis = example
    pair = graphcycles.graph_projections(basis)
    space = graphcycles.graph_space(g)
    np.testing.assert_array_equal(pair.P0 + pair.P1, np.eye(5))
    blocks = oblique.metric_blocks(graphcycles.graph_basis(basis), space)
    forms = oblique.k_sigma_forms(blocks)
    assert oblique.verify_theorem1(blocks, space, pair=pair).passed
    assert oblique.verify_theorem2(forms, oblique.bridge_matrices(blocks, forms)).passed


def test_tree_has_no_cycle_projection():
    g = WeightedGraph(3, ((0, 1), (1, 2)), (1.0, 2.0))
    basis = graphcycles.cycle_cocycle_basis(g, graphcycles.spanning_tree(g))
    assert basis.chords == ()
    with pytest.raises(Trivial):
        graphcycles.graph_projections(basis)


def _tree_invariants(g: WeightedGraph, edges) -> tuple[float, ...]:
    basis = graphcycles.cycle_cocycle_basis(g, SpanningTree.from_edges(g, edges))
    space = graphcycles.graph_space(g)
    polynomials = graphcycles.tree_polynomials(g, basis)
    blocks = oblique.metric_blocks(graphcycles.graph_basis(basis), space)
    theorem1 = oblique.verify_theorem1(blocks, space)
    forms = oblique.k_sigma_forms(blocks)
    assert theorem1.passed
    assert oblique.verify_theorem2(forms, oblique.bridge_matrices(blocks, forms)).passed
    # det K0 carries the chord weights of the tree it was built on
    chord_weights = math.prod(g.weights[a] for a in basis.chords)
    return (
        polynomials.det_L0,
        polynomials.det_Gamma1,
        theorem1.lhs1,
        theorem1.lhs2,
        theorem1.rhs,
        numkit.pseudodet(forms.K0) * chord_weights,
    )


def test_invariants_do_not_depend_on_the_tree():
    g = fixtures.graph_example((1.0, 2.0, 3.0, 4.0, 5.0))
    trees = graphcycles.enumerate_spanning_trees(g)
    assert len(trees) == fixtures.GRAPH_TREE_COUNT
    reference = _tree_invariants(g, trees[0])
    assert reference[2] == pytest.approx(120.0, rel=1e-9)
    assert reference[5] == pytest.approx(reference[0], rel=1e-9)
    for edges in trees[1:]:
        assert _tree_invariants(g, edges) == pytest.approx(reference, rel=1e-9)


def test_invariants_do_not_depend_on_the_tree_random_graphs():
    rng = np.random.default_rng(5)
    checked = 0
    while checked < 3:
        g = sampling.random_connected_graph(rng, max_vertices=6, max_edges=9)
        if g.edge_count < g.vertex_count:
            continue
        trees = graphcycles.enumerate_spanning_trees(g)
        reference = _tree_invariants(g, trees[0])
        for edges in trees[1:]:
            assert _tree_invariants(g, edges) == pytest.approx(reference, rel=1e-8)
        checked += 1
