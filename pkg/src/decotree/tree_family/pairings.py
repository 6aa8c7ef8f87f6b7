"""Pairings on admissible rooted trees and their randomized selection."""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..errors import InfeasibleConfig
from ..graph_core.trees import CanonicalTree, tree_automorphisms
from .config import FamilyConfig
from .structure import major_subtree

# automorphism groups above this size skip orbit deduplication
_ORBIT_LIMIT = 50_000


@dataclass(frozen=True)
class Pairing:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = tuple(sorted((min(u, v), max(u, v)) for u, v in self.pairs))
        object.__setattr__(self, "pairs", norm)
        flat = [x for p in norm for x in p]
        if len(set(flat)) != len(flat):
            raise ValueError("pairing vertices must be distinct")

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(x for p in self.pairs for x in p)

    def partner(self, v: int) -> int | None:
        for a, b in self.pairs:
            if v == a:
                return b
            if v == b:
                return a
        return None

    def relabel(self, perm) -> "Pairing":
        return Pairing(tuple((perm[u], perm[v]) for u, v in self.pairs))

    def to_list(self) -> list[list[int]]:
        return [list(p) for p in self.pairs]


def pairing_violations(t: CanonicalTree, w: Pairing, cfg: FamilyConfig) -> list[str]:
    """Items of the pairing conditions that ``w`` violates on ``t`` (empty when valid)."""
    bad = []
    if len(w.pairs) != cfg.num_pairs:
        bad.append("size")
    major = major_subtree(t, cfg.tiota_threshold) - {0}
    if not w.vertices <= major:
        bad.append("major")
    for v in range(t.size):
        size = t.subtree_sizes[v]
        if size >= cfg.tiota_threshold:
            inside = sum(1 for x in w.vertices if v <= x < v + size)
            if inside > cfg.density_frac * size:
                bad.append("density")
                break
    dist = t.distances()
    if any(not (cfg.pair_dist_lo <= dist[u][v] <= cfg.pair_dist_hi) for u, v in w.pairs):
        bad.append("pair_distance")
    paired = set(w.pairs)
    for u, v in combinations(sorted(w.vertices), 2):
        if (u, v) not in paired and dist[u][v] < cfg.cross_pair_dist:
            bad.append("cross_distance")
            break
    return bad


def family_violations(t: CanonicalTree, ws: list[Pairing], cfg: FamilyConfig) -> list[str]:
    """Conditions that couple different pairings of the same tree."""
    bad = []
    dist = t.distances()
    for a, b in combinations(ws, 2):
        if len(a.vertices ^ b.vertices) < cfg.symdiff_min:
            bad.append("symdiff")
        if any(u != v and dist[u][v] < cfg.pair_dist_lo for u in a.vertices for v in b.vertices):
            bad.append("between_pairings")
    return bad


def _orbit_key(w: Pairing, auts) -> tuple:
    if auts is None:
        return w.pairs
    return min(w.relabel(p).pairs for p in auts)


def _tree_seed(seed: int, t: CanonicalTree) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), zlib.crc32(t.code.encode())]))


def select_pairings(t: CanonicalTree, cfg: FamilyConfig, seed: int, max_attempts: int | None = None) -> list[Pairing]:
    """Up to ``cfg.num_pairings`` valid pairings, chosen by randomized greedy placement.

    Each attempt places pairs one at a time, drawing uniformly among vertex
    pairs in the distance window that keep every earlier pairing vertex at
    least ``cross_pair_dist`` away. Candidates are re-verified in full before
    acceptance. Pairings equal up to a root-fixing automorphism count once.
    """
    rng = _tree_seed(seed, t)
    pool = sorted(major_subtree(t, cfg.tiota_threshold) - {0})
    dist = t.distances()
    auts = list(tree_automorphisms(t, rooted=True)) if t.aut <= _ORBIT_LIMIT else None
    attempts = max_attempts if max_attempts is not None else 64 * (cfg.num_pairings + 1)

    accepted: list[Pairing] = []
    keys: set[tuple] = set()
    for _ in range(attempts):
        if len(accepted) >= cfg.num_pairings:
            break
        chosen: list[tuple[int, int]] = []
        used: set[int] = set()
        for _ in range(cfg.num_pairs):
            options = [
                (u, v)
                for u, v in combinations(pool, 2)
                if u not in used
                and v not in used
                and cfg.pair_dist_lo <= dist[u][v] <= cfg.pair_dist_hi
                and all(dist[u][x] >= cfg.cross_pair_dist and dist[v][x] >= cfg.cross_pair_dist for x in used)
            ]
            if not options:
                break
            pick = options[int(rng.integers(len(options)))]
            chosen.append(pick)
            used.update(pick)
        if len(chosen) < cfg.num_pairs:
            continue
        w = Pairing(tuple(chosen))
        key = _orbit_key(w, auts)
        if key in keys or pairing_violations(t, w, cfg):
            continue
        if family_violations(t, accepted + [w], cfg):
            continue
        accepted.append(w)
        keys.add(key)
    if not accepted:
        raise InfeasibleConfig(f"no valid pairing for tree {t.code} under the configured windows")
    return accepted
