"""Free-tree generation and rooted-tree counting.

``enumerate_free_trees`` walks level sequences with the constant amortized
time successor rule of Wright, Richmond, Odlyzko and McKay: each rooted
level sequence is advanced by the Beyer-Hedetniemi step, and sequences that
are not the canonical center-rooted form of their free tree are skipped
forward. Correctness is checked against ``count_free_trees``, which only
uses the counting recursion.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from ..errors import SizeTooLarge
from ..graph_core.graphs import SimpleGraph
from ..graph_core.trees import CanonicalTree, canonical_code

MAX_ENUM_SIZE = 20


def _next_rooted(seq: list[int], p: int | None = None) -> list[int] | None:
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split(seq: list[int]) -> tuple[list[int], list[int]]:
    """Split at the root's second child: first subtree vs the rest."""
    m = len(seq)
    seen = False
    for i, d in enumerate(seq):
        if d == 1:
            if seen:
                m = i
                break
            seen = True
    left = [d - 1 for d in seq[1:m]]
    rest = [0] + seq[m:]
    return left, rest


def _next_free(seq: list[int]) -> list[int] | None:
    left, rest = _split(seq)
    lh, rh = max(left), max(rest)
    ok = rh >= lh
    if ok and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            ok = False
    if ok:
        return seq
    p = len(left)
    nxt = _next_rooted(seq, p)
    if nxt is not None and seq[p] > 2:
        new_left, _ = _split(nxt)
        tail = list(range(1, max(new_left) + 2))
        nxt[-len(tail):] = tail
    return nxt


def _level_to_graph(seq: list[int]) -> SimpleGraph:
    edges = []
    stack: list[int] = []
    for v, d in enumerate(seq):
        del stack[d:]
        if stack:
            edges.append((stack[-1], v))
        stack.append(v)
    return SimpleGraph.from_edges(len(seq), edges)


def free_tree_level_sequences(N: int):
    """Yield one level sequence per free tree on ``N`` vertices."""
    if N < 1:
        return
    if N <= 2:
        yield list(range(N))
        return
    seq: list[int] | None = list(range(N // 2 + 1)) + list(range(1, (N + 1) // 2))
    while seq is not None:
        seq = _next_free(seq)
        if seq is not None:
            yield seq
            seq = _next_rooted(seq)


def enumerate_free_trees(N: int) -> list[CanonicalTree]:
    if N < 1:
        raise ValueError("N must be positive")
    if N > MAX_ENUM_SIZE:
        raise SizeTooLarge(f"free-tree enumeration is capped at {MAX_ENUM_SIZE} vertices")
    return [canonical_code(_level_to_graph(s)) for s in free_tree_level_sequences(N)]


def count_rooted_trees(N: int, degree_bound: int | None = None) -> int:
    """Rooted unlabeled trees on ``N`` vertices with at most ``degree_bound`` children per vertex.

    ``G[m+1]`` sums, over child-size profiles ``mu`` with ``sum(i * mu_i) = m``
    and ``sum(mu_i) <= L``, the product of multiset counts
    ``comb(G[i] + mu_i - 1, mu_i)``. ``degree_bound=None`` means unbounded.
    """
    if N < 1:
        raise ValueError("N must be positive")
    L = N if degree_bound is None else degree_bound
    if L < 0:
        raise ValueError("degree_bound must be non-negative")
    G = [0, 1]
    for m in range(1, N):
        # ways[size][kids] over child sizes considered so far
        ways = [[0] * (L + 1) for _ in range(m + 1)]
        ways[0][0] = 1
        for i in range(1, m + 1):
            nxt = [row[:] for row in ways]
            for size in range(m + 1):
                for kids in range(L + 1):
                    w = ways[size][kids]
                    if not w:
                        continue
                    mu = 1
                    while size + i * mu <= m and kids + mu <= L:
                        nxt[size + i * mu][kids + mu] += w * comb(G[i] + mu - 1, mu)
                        mu += 1
            ways = nxt
        G.append(sum(ways[m]))
    return G[N]


@lru_cache(maxsize=None)
def count_free_trees(N: int) -> int:
    """Free trees via Otter's dissimilarity identity on rooted counts."""
    if N < 1:
        raise ValueError("N must be positive")
    r = [0] + [count_rooted_trees(k) for k in range(1, N + 1)]
    pairs = sum(r[i] * r[N - i] for i in range(1, N))
    if N % 2 == 0:
        pairs -= r[N // 2]
    return r[N] - pairs // 2
