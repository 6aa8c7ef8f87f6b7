import math

import numpy as np
import pytest

import oracles
from decotree.errors import ConfigurationUnsupported
from decotree.graph_core import SimpleGraph
from decotree.sbm_model import ModelParams, exact_edge_moments, sample_correlated, sample_j_sets, standardize
from decotree.statistic_core import (
    check_embedding,
    embedding_sum,
    enumerate_embeddings,
    even_subgraphs,
    expected_phi,
    expected_phi_tree_paths,
    f_exact,
    f_exact_report,
    phi,
    positivity_check,
    shape_weight,
)
from decotree.tree_family import DecoratedTreeShape, Family, Pairing, enumerate_free_trees

P = ModelParams(200, 10.0, 0.7, 0.85)


def complete(n):
    return SimpleGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


@pytest.mark.parametrize("k", [3, 4, 5])
def test_labeled_copy_identity(k):
    for n in range(k, 10):
        host = complete(n)
        for t in enumerate_free_trees(k):
            shape = DecoratedTreeShape(t.rerooted(0), Pairing(()), 1)
            want = math.factorial(n) // (math.factorial(n - k) * t.aut)
            assert embedding_sum(host, shape, (), "saw") == want


def test_enumerated_embeddings_are_valid_and_distinct():
    rng = np.random.default_rng(1)
    n = 9
    edges = [(u, v, float(rng.normal())) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.6]
    host = SimpleGraph.from_edges(n, edges)
    t = enumerate_free_trees(4)[0].rerooted(0)
    u, v = [x for x in range(1, 4)][:2]
    shape = DecoratedTreeShape(t, Pairing(((u, v),)), 2)
    J = {5, 6, 7, 8}
    embs = list(enumerate_embeddings(host, shape, J, "saw"))
    assert len({e.key() for e in embs}) == len(embs)
    assert all(check_embedding(e, J) == [] for e in embs)
    total = math.fsum(phi(host, e) for e in embs)
    assert math.isclose(total, embedding_sum(host, shape, J, "saw"), rel_tol=1e-9, abs_tol=1e-12)


def test_even_subgraphs_of_cycle_and_tree():
    assert sorted(even_subgraphs([(0, 1), (1, 2), (0, 2)])) == [0, 0b111]
    assert even_subgraphs([(0, 1), (1, 2)]) == [0]
    assert len(even_subgraphs([(0, 1), (1, 2), (0, 2), (2, 3), (0, 3)])) == 4


def test_single_shared_edge():
    assert math.isclose(expected_phi([(0, 1)], [(0, 1)], P), exact_edge_moments(1, 1, P).u, rel_tol=1e-12)


def test_disjoint_edges_give_product():
    val = positivity_check([(0, 1)], [(2, 3)], P)
    assert math.isclose(val, exact_edge_moments(1, 0, P).u * exact_edge_moments(0, 1, P).u, abs_tol=1e-15)


def test_null_law_factorizes():
    S, K = [(0, 1), (1, 2)], [(0, 1), (1, 2), (0, 2)]
    q = expected_phi(S, K, P, "Q")
    assert math.isclose(q, expected_phi(S, [], P, "Q") * expected_phi([], K, P, "Q"), rel_tol=1e-12)


def test_permutation_pullback():
    S = [(0, 1), (1, 2)]
    pi = [2, 0, 1]
    K_on_b = [(pi[a], pi[b]) for a, b in S]
    assert math.isclose(expected_phi(S, K_on_b, P, pi=pi), expected_phi(S, S, P), rel_tol=1e-12)


def test_tree_paths_match_general_evaluator():
    T = [(0, 1), (1, 2), (1, 3)]
    S_paths = [[0, 10, 11, 2]]
    K_paths = [[2, 20, 3], [0, 21, 3]]
    S = T + [(0, 10), (10, 11), (11, 2)]
    K = T + [(2, 20), (20, 3), (0, 21), (21, 3)]
    assert math.isclose(expected_phi_tree_paths(T, S_paths, K_paths, P), expected_phi(S, K, P), rel_tol=1e-9)
    assert math.isclose(expected_phi_tree_paths(T, S_paths, K_paths, P, "Q"), expected_phi(S, K, P, "Q"), rel_tol=1e-9)


def test_tree_paths_rejects_shared_interiors():
    with pytest.raises(ConfigurationUnsupported):
        expected_phi_tree_paths([(0, 1)], [[0, 5, 1]], [[0, 5, 1]], P)
    with pytest.raises(ConfigurationUnsupported):
        expected_phi_tree_paths([(0, 1), (1, 2), (0, 2)], [], [], P)


def test_monte_carlo_small_n():
    # plain simulation is well behaved at small n
    p = ModelParams(40, 6.0, 0.7, 0.85)
    S = [(0, 1), (1, 2)]
    K = [(0, 1), (1, 2), (2, 3), (3, 0)]
    mean, se = oracles.monte_carlo_phi(S, K, p, 400_000, np.random.default_rng(2))
    assert abs(mean - expected_phi(S, K, p)) < 4 * se


def test_shape_weight_formula():
    t = enumerate_free_trees(5)[2].rerooted(0)
    shape = DecoratedTreeShape(t, Pairing(((1, 2),)), 3)
    want = P.s**4 * t.aut * P.signal**3 / P.n ** (5 + 3)
    assert math.isclose(shape_weight(shape, P), want, rel_tol=1e-12)


def test_f_exact_report_sums_terms():
    p = ModelParams(10, 3.0, 0.7, 0.9, 0.4)
    s = sample_correlated(p, 4)
    J_A, J_B = sample_j_sets(p, 4)
    t = enumerate_free_trees(4)[1].rerooted(0)
    fam = Family((DecoratedTreeShape(t, Pairing(((1, 2),)), 2),))
    rep = f_exact_report(s.A, s.B, fam, J_A, J_B, p, "nb")
    XA = standardize(s.A, p).to_graph()
    XB = standardize(s.B, p).to_graph()
    shape = fam.shapes[0]
    manual = shape_weight(shape, p) * embedding_sum(XA, shape, J_A, "nb") * embedding_sum(XB, shape, J_B, "nb")
    assert math.isclose(rep.value, manual, rel_tol=1e-12)
    assert rep.value == f_exact(s.A, s.B, fam, J_A, J_B, p, "nb")
