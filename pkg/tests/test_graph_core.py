import itertools
import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from decotree.graph_core import (
    DenseHost,
    Multigraph,
    SimpleGraph,
    TwoLevelHost,
    VertexColoring,
    canonical_code,
    colorful,
    nb_path_enumerate,
    nb_path_matrix,
    nb_path_sum,
    saw_path_enumerate,
    tau,
    tree_automorphisms,
    tree_from_code,
)
from decotree.tree_family import enumerate_free_trees


def random_graph(n, density, rng):
    edges = [(u, v, float(rng.normal())) for u, v in itertools.combinations(range(n), 2) if rng.random() < density]
    return SimpleGraph.from_edges(n, edges)


def test_edge_list_round_trip(tmp_path):
    g = random_graph(9, 0.4, np.random.default_rng(0))
    path = tmp_path / "g.json"
    g.save(path)
    assert SimpleGraph.load(path) == g
    assert SimpleGraph.parse_edge_list(g.to_edge_list()) == g


def test_tau_counts_excess():
    tri = SimpleGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    path = SimpleGraph.from_edges(3, [(0, 1), (1, 2)])
    assert tau(tri) == 0
    assert tau(path) == -1


def test_multigraph_from_walks_counts_multiplicity():
    m = Multigraph.from_walks(4, [(0, 1, 2), (2, 1)])
    assert m.multiplicities[(1, 2)] == 2
    assert m.total_edges() == 3
    assert m.leaves() == {0}


def test_colorful():
    mu = VertexColoring(4, np.array([0, 1, 2, 0]), 3)
    assert colorful(mu, [0, 1, 2])
    assert not colorful(mu, [0, 3])


@pytest.mark.parametrize("k", range(1, 8))
def test_canonical_code_is_isomorphism_invariant(k):
    rng = np.random.default_rng(k)
    for t in enumerate_free_trees(k):
        perm = rng.permutation(k)
        g = t.to_graph().relabel(perm)
        assert canonical_code(g).code == t.code


def test_aut_of_stars_and_paths():
    for k in range(3, 8):
        star = SimpleGraph.from_edges(k, [(0, i) for i in range(1, k)])
        path = SimpleGraph.from_edges(k, [(i, i + 1) for i in range(k - 1)])
        assert canonical_code(star).aut == math.factorial(k - 1)
        assert canonical_code(path).aut == 2


def test_tree_automorphisms_are_automorphisms():
    t = tree_from_code(enumerate_free_trees(6)[3].code)
    edges = {frozenset(e) for e in t.edges()}
    perms = list(tree_automorphisms(t, rooted=False))
    assert len(perms) == canonical_code(t.to_graph()).aut
    for p in perms:
        assert {frozenset((p[a], p[b])) for a, b in edges} == edges


def test_tree_count_matches_networkx():
    for k in range(2, 10):
        assert len(enumerate_free_trees(k)) == sum(1 for _ in nx.nonisomorphic_trees(k))


def test_nb_path_sum_matches_bruteforce_small():
    rng = np.random.default_rng(3)
    for _ in range(40):
        n = int(rng.integers(5, 10))
        g = random_graph(n, 0.5, rng)
        W = g.weight_matrix()
        x, y = 0, 1
        J = set(range(2, n))
        for length in range(2, 6):
            assert math.isclose(nb_path_sum(g, x, y, length, J), oracles.nb_paths_brute(W, x, y, length, J), rel_tol=1e-9, abs_tol=1e-12)


def test_saw_is_subset_of_nb():
    g = random_graph(8, 0.6, np.random.default_rng(4))
    J = set(range(2, 8))
    for length in (2, 3, 4):
        saw = set(saw_path_enumerate(g, 0, 1, length, J))
        nb = set(nb_path_enumerate(g, 0, 1, length, J))
        assert saw <= nb
        assert all(len(set(p)) == len(p) for p in saw)
    assert set(saw_path_enumerate(g, 0, 1, 2, J)) == set(nb_path_enumerate(g, 0, 1, 2, J))


def test_nb_path_matrix_agrees_with_pointwise():
    g = random_graph(10, 0.5, np.random.default_rng(5))
    J = {2, 3, 4, 5, 6, 7}
    M = nb_path_matrix(DenseHost.from_graph(g), J, 4)
    for x, y in [(0, 1), (8, 9), (0, 9)]:
        assert math.isclose(M[x, y], nb_path_sum(g, x, y, 4, J), rel_tol=1e-9, abs_tol=1e-12)


def test_two_level_host_matches_dense():
    g = random_graph(12, 0.3, np.random.default_rng(6))
    host = TwoLevelHost.from_graph(g, 2.0, -0.25)
    D = host.dense()
    N = np.random.default_rng(7).normal(size=(3, 12))
    assert np.allclose(host.matmul(N), N @ D)
    assert np.all(np.diag(D) == 0)
    assert D[0, 1] in (2.0, -0.25)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 8), st.integers(0, 10**6))
def test_relabel_preserves_tree_code(k, seed):
    rng = np.random.default_rng(seed)
    trees = enumerate_free_trees(k)
    t = trees[int(rng.integers(len(trees)))]
    g = t.to_graph().relabel(rng.permutation(k))
    c = canonical_code(g)
    assert c.code == t.code and c.aut == t.aut
