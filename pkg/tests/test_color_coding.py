import math

import numpy as np
import pytest

from decotree.color_coding import (
    EstimatorConfig,
    colorful_probability,
    coloring_values,
    default_t,
    draw_colorings,
    f_bar,
    precompute_nb_sums,
    x_h_bruteforce,
    x_h_dp,
    x_h_dp_batch,
)
from decotree.errors import ConfigError
from decotree.graph_core import DenseHost, SimpleGraph, nb_path_sum
from decotree.sbm_model import ModelParams, sample_correlated, sample_j_sets
from decotree.tree_family import DecoratedTreeShape, Family, Pairing, enumerate_free_trees


def weighted(n, density, seed):
    rng = np.random.default_rng(seed)
    W = np.triu(rng.normal(size=(n, n)) * (rng.random((n, n)) < density), 1)
    return W + W.T


def test_colorful_probability():
    assert colorful_probability(3) == math.factorial(3) / 27
    assert default_t(4) == math.ceil(4**4 / math.factorial(4))


def test_estimator_config_round_trip():
    cfg = EstimatorConfig(t=7, seed=3, batch=2)
    assert EstimatorConfig.from_dict(cfg.to_dict()) == cfg
    assert EstimatorConfig().colorings(5) == default_t(5)
    with pytest.raises(ConfigError):
        EstimatorConfig(t=0)


def test_draw_colorings_deterministic():
    a = draw_colorings(20, 4, 5, 11, 0)
    assert a.shape == (5, 20) and a.min() >= 0 and a.max() < 4
    assert np.array_equal(a, draw_colorings(20, 4, 5, 11, 0))
    assert not np.array_equal(a, draw_colorings(20, 4, 5, 11, 1))


def test_precomputed_sums_match_pointwise():
    W = weighted(9, 0.6, 1)
    J = {2, 3, 4, 5}
    L = precompute_nb_sums(DenseHost(W), J, 3)
    g = SimpleGraph.from_edges(9, [(u, v, W[u, v]) for u in range(9) for v in range(u + 1, 9) if W[u, v]])
    assert math.isclose(L[0, 1], nb_path_sum(g, 0, 1, 3, J), rel_tol=1e-9, abs_tol=1e-12)


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_tree_only_dp_counts_colorful_copies(k):
    # unit complete host, one fixed coloring: colorful copies of T
    n = k + 2
    W = np.ones((n, n)) - np.eye(n)
    colors = np.random.default_rng(k).integers(0, k, size=n)
    for t in enumerate_free_trees(k):
        shape = DecoratedTreeShape(t.rerooted(0), Pairing(()), 1)
        assert math.isclose(x_h_dp(DenseHost(W), colors, shape, ()), x_h_bruteforce(DenseHost(W), colors, shape, ()), rel_tol=1e-12, abs_tol=1e-12)


def test_two_pairs_against_bruteforce():
    rng = np.random.default_rng(2)
    t = [x for x in enumerate_free_trees(6) if max(x.degree(v) for v in range(6)) <= 3][0].rerooted(0)
    shape = DecoratedTreeShape(t, Pairing(((1, 2), (3, 4))), 2)
    for seed in range(5):
        W = weighted(10, 0.7, seed)
        mu = rng.integers(0, 6, size=10)
        J = {6, 7, 8, 9}
        assert math.isclose(x_h_dp(DenseHost(W), mu, shape, J), x_h_bruteforce(DenseHost(W), mu, shape, J), rel_tol=1e-9, abs_tol=1e-9)


def test_batch_and_memo_agree():
    W = weighted(12, 0.5, 3)
    t = enumerate_free_trees(5)[1].rerooted(0)
    shape = DecoratedTreeShape(t, Pairing(((1, 3),)), 3)
    colors = np.random.default_rng(4).integers(0, 5, size=(6, 12))
    a = x_h_dp_batch(DenseHost(W), colors, shape, {6, 7, 8}, memo=True)
    b = x_h_dp_batch(DenseHost(W), colors, shape, {6, 7, 8}, memo=False)
    singles = [x_h_dp(DenseHost(W), c, shape, {6, 7, 8}) for c in colors]
    assert np.array_equal(a, b)
    assert np.allclose(a, singles, rtol=1e-12, atol=1e-12)


def _small_setup():
    p = ModelParams(40, 5.0, 0.7, 0.9, 0.4)
    s = sample_correlated(p, 1)
    J_A, J_B = sample_j_sets(p, 1)
    t = enumerate_free_trees(4)[1].rerooted(0)
    fam = Family((DecoratedTreeShape(t, Pairing(((1, 2),)), 2),))
    return p, s, J_A, J_B, fam


def test_f_bar_matches_its_definition():
    p, s, J_A, J_B, fam = _small_setup()
    cfg = EstimatorConfig(t=5, seed=2)
    xa, xb = coloring_values(s.A, s.B, fam, J_A, J_B, p, cfg)
    shape = fam.shapes[0]
    from decotree.statistic_core import shape_weight

    r, scale = colorful_probability(4), p.d**shape.num_edges
    want = shape_weight(shape, p) * xa[0].mean() / (r * scale) * xb[0].mean() / (r * scale)
    assert math.isclose(f_bar(s.A, s.B, fam, J_A, J_B, p, cfg), want, rel_tol=1e-12)
    assert f_bar(s.A, s.B, fam, J_A, J_B, p, cfg) == f_bar(s.A, s.B, fam, J_A, J_B, p, cfg)


def test_f_bar_empty_family():
    p, s, J_A, J_B, _ = _small_setup()
    assert f_bar(s.A, s.B, Family(()), J_A, J_B, p, EstimatorConfig()) == 0.0
