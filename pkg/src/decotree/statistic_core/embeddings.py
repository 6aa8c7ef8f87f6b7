"""Brute-force embeddings of decorated-tree shapes into a weighted host.

An embedding is a tree image plus one path per pair. Two injective maps of
the tree give the same embedding exactly when they differ by an automorphism
of the tree that preserves the set of pairs, and that group acts freely on
injective maps. So we keep only maps that are lexicographically smallest in
their orbit, and every embedding appears once.

Sums are made order-independent: each term's factors are sorted before
multiplying, and terms are added with ``math.fsum``. A relabeled host
therefore gives bit-identical totals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Literal

import numpy as np

from ..errors import BudgetExceeded
from ..graph_core.graphs import Multigraph, SimpleGraph, norm_edge
from ..graph_core.paths import nb_path_enumerate, saw_path_enumerate
from ..graph_core.trees import tree_automorphisms
from ..tree_family.family import DecoratedTreeShape

Mode = Literal["saw", "nb"]
DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class Embedding:
    shape: DecoratedTreeShape
    tree_map: tuple[int, ...]
    # one vertex sequence per pair, oriented from the image of the pair's smaller label
    paths: tuple[tuple[int, ...], ...]
    mode: str

    def tree_edges(self) -> list[tuple[int, int]]:
        m = self.tree_map
        return [norm_edge(m[a], m[b]) for a, b in self.shape.tree.edges()]

    def path_edges(self) -> list[tuple[int, int]]:
        return [norm_edge(a, b) for p in self.paths for a, b in zip(p, p[1:])]

    def multigraph(self, n: int) -> Multigraph:
        mult: dict[tuple[int, int], int] = {}
        for e in self.tree_edges() + self.path_edges():
            mult[e] = mult.get(e, 0) + 1
        return Multigraph(n, mult)

    def key(self) -> tuple:
        """Identity of the decomposition: labeled tree edges, pairs, and paths per pair."""
        pairs = []
        for (u, v), path in zip(self.shape.pairing.pairs, self.paths):
            x, y = self.tree_map[u], self.tree_map[v]
            pairs.append((min(x, y), max(x, y), path if x < y else path[::-1]))
        return (frozenset(self.tree_edges()), tuple(sorted(pairs)))


def check_embedding(e: Embedding, J: Iterable[int]) -> list[str]:
    """Invariant violations of an embedding (empty when valid)."""
    J = set(J)
    bad = []
    m = e.tree_map
    if len(set(m)) != len(m):
        bad.append("tree map not injective")
    if any(x in J for x in m):
        bad.append("tree vertex in J")
    for (u, v), path in zip(e.shape.pairing.pairs, e.paths):
        if len(path) != e.shape.path_len + 1 or path[0] != m[u] or path[-1] != m[v]:
            bad.append("path endpoints or length")
            continue
        if path[1] not in J or path[-2] not in J:
            bad.append("endpoint neighbor outside J")
        if any(path[i] == path[i + 2] for i in range(len(path) - 2)):
            bad.append("backtracking path")
        if e.mode == "saw" and len(set(path)) != len(path):
            bad.append("path not self-avoiding")
    return bad


@lru_cache(maxsize=1024)
def _shape_auts(code: str, pairs: tuple) -> tuple[tuple[int, ...], ...]:
    from ..graph_core.trees import tree_from_code

    t = tree_from_code(code)
    target = {frozenset(p) for p in pairs}
    out = []
    for perm in tree_automorphisms(t, rooted=False):
        if {frozenset((perm[u], perm[v])) for u, v in pairs} == target:
            out.append(perm)
    return tuple(out)


def shape_automorphisms(shape: DecoratedTreeShape) -> tuple[tuple[int, ...], ...]:
    """Free-tree automorphisms that preserve the set of (unordered) pairs."""
    return _shape_auts(shape.tree.code, shape.pairing.pairs)


def orbit_representative_maps(
    shape: DecoratedTreeShape, host: SimpleGraph, J: Iterable[int], budget: int = DEFAULT_BUDGET
) -> np.ndarray:
    """Injective tree maps into ``[n] \\ J`` along host edges, one per orbit."""
    J = set(J)
    verts = [v for v in range(host.n) if v not in J]
    k = shape.aleph
    if len(verts) < k:
        return np.empty((0, k), dtype=np.int64)
    if math.perm(len(verts), k) > budget:
        raise BudgetExceeded(f"{math.perm(len(verts), k)} tree maps exceed budget {budget}")
    maps = np.array(list(permutations(verts, k)), dtype=np.int64).reshape(-1, k)
    adj = np.zeros((host.n, host.n), dtype=bool)
    for u, v in host.edges:
        adj[u, v] = adj[v, u] = True
    for a, b in shape.tree.edges():
        maps = maps[adj[maps[:, a], maps[:, b]]]
    ident = tuple(range(k))
    rows = np.arange(len(maps))
    keep = np.ones(len(maps), dtype=bool)
    for perm in shape_automorphisms(shape):
        if perm == ident:
            continue
        other = maps[:, list(perm)]
        first = (maps != other).argmax(axis=1)
        keep &= maps[rows, first] < other[rows, first]
    return maps[keep]


def _paths(host: SimpleGraph, x: int, y: int, length: int, J: set[int], mode: Mode):
    fn = saw_path_enumerate if mode == "saw" else nb_path_enumerate
    return fn(host, x, y, length, J)


def _sorted_prod(factors) -> float:
    out = 1.0
    for f in sorted(factors):
        out *= f
    return out


class _PathSums:
    """Cached exact path sums ``L(x, y)`` with orientation-independent rounding."""

    def __init__(self, host: SimpleGraph, length: int, J: set[int], mode: Mode):
        self.host, self.length, self.J, self.mode = host, length, J, mode
        self.cache: dict[tuple[int, int], tuple[float, int]] = {}

    def get(self, x: int, y: int) -> tuple[float, int]:
        key = (min(x, y), max(x, y))
        if key not in self.cache:
            ps = _paths(self.host, key[0], key[1], self.length, self.J, self.mode)
            total = math.fsum(_sorted_prod(self.host.weight(a, b) for a, b in zip(p, p[1:])) for p in ps)
            self.cache[key] = (total, len(ps))
        return self.cache[key]


def enumerate_embeddings(
    host: SimpleGraph, shape: DecoratedTreeShape, J: Iterable[int], mode: Mode = "saw", budget: int = DEFAULT_BUDGET
) -> Iterator[Embedding]:
    J = set(J)
    maps = orbit_representative_maps(shape, host, J, budget)
    emitted = 0
    for row in maps.tolist():
        per_pair = [_paths(host, row[u], row[v], shape.path_len, J, mode) for u, v in shape.pairing.pairs]
        count = math.prod(len(p) for p in per_pair)
        emitted += count
        if emitted > budget:
            raise BudgetExceeded(f"more than {budget} embeddings")
        for combo in _product(per_pair):
            yield Embedding(shape, tuple(row), combo, mode)


def _product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for tail in _product(lists[1:]):
            yield (head,) + tail


def embedding_sum(
    host: SimpleGraph,
    shape: DecoratedTreeShape,
    J: Iterable[int],
    mode: Mode = "saw",
    colors: np.ndarray | None = None,
    budget: int = DEFAULT_BUDGET,
) -> float:
    """``sum over embeddings S of [colorful tree image] * prod of edge weights``.

    Paths attach independently given the tree map, so the inner sum factors
    into per-pair path sums.
    """
    J = set(J)
    maps = orbit_representative_maps(shape, host, J, budget)
    if colors is not None and len(maps):
        c = np.asarray(colors)[maps]
        c.sort(axis=1)
        maps = maps[(np.diff(c, axis=1) != 0).all(axis=1)]
    if not len(maps):
        return 0.0
    W = np.zeros((host.n, host.n))
    for u, v in host.edges:
        W[u, v] = W[v, u] = host.weight(u, v)
    cols = [W[maps[:, a], maps[:, b]] for a, b in shape.tree.edges()]
    if shape.pairing.pairs:
        sums = _PathSums(host, shape.path_len, J, mode)
        count = 0
        for u, v in shape.pairing.pairs:
            vals = np.empty(len(maps))
            for i, (x, y) in enumerate(zip(maps[:, u].tolist(), maps[:, v].tolist())):
                vals[i], c_ = sums.get(x, y)
                count += c_
            cols.append(vals)
        if count > budget:
            raise BudgetExceeded(f"more than {budget} path attachments")
    if not cols:
        return float(len(maps))
    F = np.sort(np.stack(cols, axis=1), axis=1)
    terms = np.ones(len(maps))
    for j in range(F.shape[1]):
        terms = terms * F[:, j]
    return math.fsum(terms.tolist())


def phi(X, e: Embedding) -> float:
    """Product of weights over tree and path edges, with multiplicity."""
    return _sorted_prod(X.weight(a, b) for a, b in e.tree_edges() + e.path_edges())
