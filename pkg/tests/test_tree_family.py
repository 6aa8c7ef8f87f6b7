import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from decotree.errors import ConfigError, EmptyFamily
from decotree.graph_core import tree_from_code
from decotree.tree_family import (
    DecoratedTreeShape,
    Family,
    FamilyConfig,
    Pairing,
    build_family,
    check_admissible,
    count_free_trees,
    count_rooted_trees,
    enumerate_free_trees,
    family_violations,
    leaves,
    major_subtree,
    pairing_violations,
)


def loose(aleph=4, **kw):
    base = dict(
        aleph=aleph,
        num_pairs=1,
        num_pairings=2,
        path_len=4,
        max_degree=4,
        max_armpath=3,
        tiota_threshold=1,
        intersect_frac=1.0,
        sim_k_frac=0.4,
        sim_len=2,
        pair_dist_lo=1,
        pair_dist_hi=2,
        cross_pair_dist=3,
        root_similarity=False,
    )
    base.update(kw)
    return FamilyConfig(**base)


def test_free_counts_small():
    assert [count_free_trees(N) for N in range(1, 11)] == oracles.free_counts_otter(10)[1:]


def test_unbounded_rooted_counts():
    assert [count_rooted_trees(N) for N in range(1, 11)] == oracles.rooted_counts_euler(10)[1:]


def test_binary_rooted_counts():
    # at most two children: Wedderburn-like sequence 1, 1, 2, 3, 6, 11
    assert [count_rooted_trees(N, 2) for N in range(1, 7)] == [1, 1, 2, 3, 6, 11]


def test_path_only_when_bound_one():
    assert all(count_rooted_trees(N, 1) == 1 for N in range(1, 12))


def test_enumeration_distinct_codes():
    for N in range(1, 11):
        codes = [t.code for t in enumerate_free_trees(N)]
        assert len(set(codes)) == len(codes)


def test_leaves_and_major_subtree():
    t = tree_from_code("((())())")
    assert leaves(t) == {2, 3}
    assert major_subtree(t, 1) == set(range(t.size))


def test_config_validation():
    with pytest.raises(ConfigError):
        FamilyConfig(aleph=2)
    with pytest.raises(ConfigError):
        loose(pair_dist_lo=3, pair_dist_hi=2)
    with pytest.raises(ConfigError):
        FamilyConfig.from_dict({"aleph": 5, "bogus": 1})


def test_favorable_family_is_nonempty_and_valid():
    cfg = loose()
    fam = build_family(cfg, seed=0)
    assert len(fam) >= 1
    for shape in fam:
        assert shape.violations(cfg) == []
        assert check_admissible(shape.tree, cfg).ok


def test_literal_conditions_exclude_small_trees():
    with pytest.raises(EmptyFamily):
        build_family(loose(root_similarity=True), seed=0)


def test_family_json_round_trip(tmp_path):
    fam = build_family(loose(), seed=3)
    path = tmp_path / "fam.json"
    fam.save(path)
    again = Family.load(path)
    assert again == fam
    assert again.digest() == fam.digest()


def test_family_seed_is_deterministic():
    assert build_family(loose(aleph=6), 11).dumps() == build_family(loose(aleph=6), 11).dumps()


def test_pairing_violations_report_distance():
    t = tree_from_code("((())())")
    cfg = loose(pair_dist_hi=1, cross_pair_dist=2)
    far = max(((u, v) for u in range(1, 4) for v in range(u + 1, 4)), key=lambda e: t.distances()[e[0]][e[1]])
    assert "pair_distance" in pairing_violations(t, Pairing((far,)), cfg)


def test_pairing_normalizes_and_rejects_overlap():
    assert Pairing(((3, 1),)).pairs == ((1, 3),)
    with pytest.raises(ValueError):
        Pairing(((1, 2), (2, 3)))


def test_shape_round_trip():
    fam = build_family(loose(), seed=0)
    s = fam.shapes[0]
    assert DecoratedTreeShape.from_dict(s.to_dict()) == s
    assert s.num_edges == s.aleph - 1 + s.path_len


@settings(max_examples=20, deadline=None)
@given(st.integers(5, 8), st.integers(0, 1000))
def test_selected_pairings_satisfy_conditions(aleph, seed):
    cfg = loose(aleph=aleph, num_pairings=3)
    try:
        fam = build_family(cfg, seed)
    except EmptyFamily:
        return
    by_tree = {}
    for s in fam:
        assert pairing_violations(s.tree, s.pairing, cfg) == []
        by_tree.setdefault(s.tree.code, []).append(s.pairing)
    for code, ws in by_tree.items():
        assert family_violations(tree_from_code(code), ws, cfg) == []
