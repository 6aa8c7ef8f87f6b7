import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from decotree.errors import ConfigError, RateOutOfRange
from decotree.sbm_model import (
    ModelParams,
    chain_expectation,
    exact_edge_moments,
    joint_edge_law,
    load_pair,
    pair_to_json,
    sample_correlated,
    sample_j_sets,
    sample_null,
    save_pair,
    standardize,
    standardized_values,
)

P = ModelParams(400, 8.0, 0.6, 0.8, 0.25)


def test_param_validation():
    with pytest.raises(ConfigError):
        ModelParams(10, 2.0, 1.0, 0.5)
    with pytest.raises(RateOutOfRange):
        ModelParams(10, 6.0, 0.8, 0.5)
    with pytest.raises(ConfigError):
        ModelParams.from_dict({"n": 10, "lam": 1, "eps": 0.1, "s": 0.5, "extra": 1})
    assert ModelParams.from_dict({"n": 10, "lambda": 1, "eps": 0.1, "s": 0.5}).lam == 1


def test_standardized_entries_have_unit_variance():
    on, off = standardized_values(P)
    assert math.isclose(P.q * on + (1 - P.q) * off, 0.0, abs_tol=1e-12)
    assert math.isclose(P.q * on**2 + (1 - P.q) * off**2, 1.0, rel_tol=1e-12)


def test_joint_law_is_a_distribution():
    for g in (1, -1):
        for corr in (True, False):
            law = joint_edge_law(g, P, corr)
            assert math.isclose(sum(law.values()), 1.0, rel_tol=1e-15)
            assert all(v >= 0 for v in law.values())


def test_first_moments():
    m = exact_edge_moments(1, 0, P)
    assert math.isclose(m.u, 0.0, abs_tol=1e-12)
    # E[a | g] = (rate(g) s - q) / d
    assert math.isclose(m.v, P.eps * P.lam * P.s / P.n / P.d, rel_tol=1e-12)


def test_moments_reject_zero_order():
    with pytest.raises(ValueError):
        exact_edge_moments(0, 0, P)


def test_chain_small_cases():
    assert chain_expectation([2.0], [3.0], 1) == 5.0
    assert chain_expectation([2.0], [3.0], -1) == -1.0
    a = [Fraction(1, 3), Fraction(2, 5), Fraction(-1, 7)]
    b = [Fraction(1, 2), Fraction(3, 4), Fraction(5, 6)]
    assert chain_expectation(a, b, -1) == math.prod(a) - math.prod(b)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=1, max_size=6), st.sampled_from([1, -1]))
def test_chain_identity_property(coeffs, sig):
    a = [Fraction(x) for x, _ in coeffs]
    b = [Fraction(y) for _, y in coeffs]
    assert chain_expectation(a, b, sig) == math.prod(a) + sig * math.prod(b)


def test_correlated_sampler_is_deterministic_and_consistent():
    s1 = sample_correlated(P, 5)
    s2 = sample_correlated(P, 5)
    assert s1.A == s2.A and s1.B == s2.B
    assert np.array_equal(s1.pi, s2.pi)
    parent = s1.parent.edges
    assert s1.A.edges <= parent
    # B is a subsample of the parent after relabeling by pi
    back = {tuple(sorted((int(np.flatnonzero(s1.pi == u)[0]), int(np.flatnonzero(s1.pi == v)[0])))) for u, v in s1.B.edges}
    assert back <= parent


def test_sampler_edge_density():
    p = ModelParams(2000, 10.0, 0.5, 0.7)
    counts = [len(sample_correlated(p, k).A.edges) for k in range(5)]
    expected = p.q * p.n * (p.n - 1) / 2
    assert abs(np.mean(counts) - expected) < 4 * math.sqrt(expected / 5)


def test_null_sampler_independent_labels():
    s = sample_null(P, 1)
    assert s.A.n == s.B.n == P.n
    assert not np.array_equal(s.sigmaA, s.sigmaB)


def test_j_sets():
    ja, jb = sample_j_sets(P, 3)
    assert len(ja) == len(jb) == P.j_size == 100


def test_pair_round_trip(tmp_path):
    s = sample_correlated(P, 9)
    path = tmp_path / "pair.json"
    save_pair(path, pair_to_json(P, 9, s.A, s.B, {"pi": s.pi}))
    params, seed, A, B, latent = load_pair(path)
    assert params == P and seed == 9 and A == s.A and B == s.B
    assert latent["pi"] == s.pi.tolist()


def test_standardize_values():
    s = sample_correlated(ModelParams(30, 4.0, 0.5, 0.9), 0)
    host = standardize(s.A, ModelParams(30, 4.0, 0.5, 0.9))
    on, off = standardized_values(ModelParams(30, 4.0, 0.5, 0.9))
    u, v = next(iter(s.A.edges))
    assert host.weight(u, v) == on
    missing = next((a, b) for a in range(30) for b in range(a + 1, 30) if (a, b) not in s.A.edges)
    assert host.weight(*missing) == off
