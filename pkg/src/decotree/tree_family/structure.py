"""Structural predicates on rooted trees: major subtree, arm-paths, similarity, admissibility.

Vertices are the canonical preorder labels of a rooted ``CanonicalTree``
(root 0). A leaf is a vertex of graph degree one, so a one-vertex tree has no
leaves and a root with a single child is itself a leaf.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb, floor

from ..errors import SearchBudgetExceeded
from ..graph_core.trees import CanonicalTree, _rooted_codes, tree_from_code
from .config import FamilyConfig


def leaves(t: CanonicalTree) -> set[int]:
    return {v for v in range(t.size) if t.degree(v) == 1}


def major_subtree(t: CanonicalTree, threshold: int) -> set[int]:
    """Vertices whose descendant tree has at least ``threshold`` vertices."""
    return {v for v, s in enumerate(t.subtree_sizes) if s >= threshold}


def _is_path_below(t: CanonicalTree) -> list[bool]:
    # Des(v) is a path iff v has at most one child and that child's Des is a path
    ok = [False] * t.size
    for v in range(t.size - 1, -1, -1):
        ch = t.children[v]
        ok[v] = len(ch) == 0 or (len(ch) == 1 and ok[ch[0]])
    return ok


def arm_paths(t: CanonicalTree) -> list[tuple[int, int]]:
    """Maximal arm-paths as ``(start, length in edges)``."""
    ok = _is_path_below(t)
    out = []
    for v in range(1, t.size):
        p = t.parent[v]
        if ok[v] and (p == 0 or not ok[p]):
            out.append((v, t.subtree_sizes[v] - 1))
    return out


def attach_arms(t: CanonicalTree, arms) -> str:
    """Rooted code of ``t`` with a new path of ``x`` edges hung below ``u`` for each ``(u, x)``."""
    adj = [list(a) for a in t.adjacency]
    for u, x in arms:
        prev = u
        for _ in range(x):
            adj.append([prev])
            adj[prev].append(len(adj) - 1)
            prev = len(adj) - 1
    codes, _, _ = _rooted_codes(adj, 0)
    return codes[0]


def _attachment_budget(sites: int, lengths: int, k: int) -> int:
    return comb(sites * lengths + k, k)


@lru_cache(maxsize=4096)
def _reachable(code: str, k: int, sim_len: int, budget: int) -> dict[int, frozenset[str]]:
    t = tree_from_code(code)
    sites = [v for v in range(t.size) if v not in leaves(t)]
    options = [(u, x) for u in sites for x in range(1, sim_len + 1)]
    if _attachment_budget(len(sites), sim_len, k) > budget:
        raise SearchBudgetExceeded(
            f"similarity search over {len(sites)} sites with k={k} exceeds budget {budget}"
        )
    by_size: dict[int, set[str]] = {t.size: {t.code}}
    for j in range(1, k + 1):
        for arms in combinations_with_replacement(options, j):
            size = t.size + sum(x for _, x in arms)
            by_size.setdefault(size, set()).add(attach_arms(t, arms))
    return {s: frozenset(c) for s, c in by_size.items()}


def similar(t1: CanonicalTree, t2: CanonicalTree, cfg: FamilyConfig) -> bool:
    """Whether bounded arm-path attachments make the two rooted trees isomorphic."""
    k1 = floor(cfg.sim_k_frac * t1.size)
    k2 = floor(cfg.sim_k_frac * t2.size)
    r1 = _reachable(t1.code, k1, cfg.sim_len, cfg.sim_budget)
    r2 = _reachable(t2.code, k2, cfg.sim_len, cfg.sim_budget)
    return any(r1[s] & r2[s] for s in r1.keys() & r2.keys())


@dataclass(frozen=True)
class AdmissibilityReport:
    degree: bool
    armpath: bool
    major: bool
    siblings: bool
    root: bool

    @property
    def ok(self) -> bool:
        return self.degree and self.armpath and self.major and self.siblings and self.root

    def to_dict(self) -> dict:
        return {**asdict(self), "ok": self.ok}


def _descendant_codes(t: CanonicalTree, v: int) -> list[CanonicalTree]:
    return [t.subtree(w) for w in t.descendants(v)]


def check_admissible(t: CanonicalTree, cfg: FamilyConfig) -> AdmissibilityReport:
    if t.size != cfg.aleph:
        raise ValueError(f"tree has {t.size} vertices, config expects {cfg.aleph}")
    degree = all(t.degree(v) <= cfg.max_degree for v in range(t.size))
    armpath = all(length < cfg.max_armpath for _, length in arm_paths(t))
    major = len(major_subtree(t, cfg.tiota_threshold)) >= cfg.tiota_min_frac * cfg.aleph

    siblings = True
    for w in range(t.size):
        big = [c for c in t.children[w] if t.subtree_sizes[c] >= cfg.tiota_threshold]
        for a, b in combinations(big, 2):
            if similar(t.subtree(a), t.subtree(b), cfg):
                siblings = False
                break
        if not siblings:
            break

    root = False
    kids = t.children[0]
    if len(kids) == 2:
        a, b = sorted(kids, key=lambda c: t.subtree_sizes[c])
        lo, hi = (cfg.aleph - 1) // 2, cfg.aleph // 2
        if (t.subtree_sizes[a], t.subtree_sizes[b]) == (lo, hi):
            T1, T2 = t.subtree(a), t.subtree(b)
            root = not cfg.root_similarity or not any(similar(T1, S, cfg) for S in _descendant_codes(t, b)) and not any(
                similar(T2, S, cfg) for S in _descendant_codes(t, a)
            )
    return AdmissibilityReport(degree, armpath, major, siblings, root)


def admissible_roots(free: CanonicalTree, cfg: FamilyConfig) -> list[CanonicalTree]:
    """Distinct rooted forms of a free tree that pass every admissibility item."""
    seen: set[str] = set()
    out = []
    for r in range(free.size):
        rt = free.rerooted(r)
        if rt.code in seen:
            continue
        seen.add(rt.code)
        if check_admissible(rt, cfg).ok:
            out.append(rt)
    return out
