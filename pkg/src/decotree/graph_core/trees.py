"""Canonical forms for rooted and free trees.

Rooted trees get AHU codes: a vertex's code is ``"(" + sorted child codes +
")"``. A free tree's code is the smallest rooted code over its center(s).
Every ``CanonicalTree`` also carries a concrete parent array whose vertex
order is the canonical preorder, so vertex ids are stable across any
relabeling of the input.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from math import factorial
from typing import Iterator, Sequence

from ..errors import NotATree
from .graphs import SimpleGraph


@dataclass(frozen=True)
class CanonicalTree:
    code: str
    size: int
    rooted: bool
    aut: int
    # canonical preorder; parent[0] == -1 marks the root (the center for free trees)
    parent: tuple[int, ...]

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        ch: list[list[int]] = [[] for _ in range(self.size)]
        for v, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(v)
        return tuple(tuple(c) for c in ch)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in range(self.size)]
        for v, p in enumerate(self.parent):
            if p >= 0:
                nb[p].append(v)
                nb[v].append(p)
        return tuple(tuple(sorted(x)) for x in nb)

    @cached_property
    def subtree_sizes(self) -> tuple[int, ...]:
        sizes = [1] * self.size
        for v in range(self.size - 1, 0, -1):
            sizes[self.parent[v]] += sizes[v]
        return tuple(sizes)

    @cached_property
    def depth(self) -> tuple[int, ...]:
        d = [0] * self.size
        for v in range(1, self.size):
            d[v] = d[self.parent[v]] + 1
        return tuple(d)

    @property
    def root(self) -> int:
        return 0

    def edges(self) -> list[tuple[int, int]]:
        return [(p, v) for v, p in enumerate(self.parent) if p >= 0]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def descendants(self, v: int) -> list[int]:
        # preorder labels make every subtree a contiguous block
        return list(range(v, v + self.subtree_sizes[v]))

    def distances(self) -> list[list[int]]:
        return [_bfs(self.adjacency, s) for s in range(self.size)]

    def to_graph(self) -> SimpleGraph:
        return SimpleGraph.from_edges(self.size, self.edges())

    def rerooted(self, r: int) -> "CanonicalTree":
        """Rooted canonical form of this tree's shape rooted at vertex ``r``."""
        return canonical_code(self.to_graph(), root=r)

    def subtree(self, v: int) -> "CanonicalTree":
        """Descendant tree of ``v`` as a rooted canonical tree."""
        block = self.descendants(v)
        idx = {u: i for i, u in enumerate(block)}
        edges = [(idx[self.parent[u]], idx[u]) for u in block[1:]]
        return canonical_code(SimpleGraph.from_edges(len(block), edges), root=0)


def _bfs(adj: Sequence[Sequence[int]], s: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[s] = 0
    q = deque([s])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def _check_tree(adj: Sequence[Sequence[int]], n_edges: int) -> None:
    n = len(adj)
    if n == 0:
        raise NotATree("empty graph")
    if n_edges != n - 1 or min(_bfs(adj, 0)) < 0:
        raise NotATree("graph is cyclic or disconnected")


def _rooted_codes(adj: Sequence[Sequence[int]], root: int) -> tuple[list[str], list[int], list[list[int]]]:
    """AHU codes per vertex plus per-vertex aut counts and sorted children."""
    n = len(adj)
    parent = [-1] * n
    order = [root]
    seen = [False] * n
    seen[root] = True
    for u in order:
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
    codes = [""] * n
    aut = [1] * n
    kids: list[list[int]] = [[] for _ in range(n)]
    for u in reversed(order):
        ch = [w for w in adj[u] if w != parent[u]]
        ch.sort(key=lambda w: codes[w])
        kids[u] = ch
        codes[u] = "(" + "".join(codes[w] for w in ch) + ")"
        a = 1
        for w in ch:
            a *= aut[w]
        for m in Counter(codes[w] for w in ch).values():
            a *= factorial(m)
        aut[u] = a
    return codes, aut, kids


def _preorder_parent(kids: list[list[int]], root: int) -> tuple[int, ...]:
    label: dict[int, int] = {}
    parent: list[int] = []
    stack = [(root, -1)]
    while stack:
        u, p = stack.pop()
        label[u] = len(parent)
        parent.append(p)
        for w in reversed(kids[u]):
            stack.append((w, label[u]))
    return tuple(parent)


def centers(adj: Sequence[Sequence[int]]) -> list[int]:
    """The one or two centers of a tree, by repeated leaf stripping."""
    n = len(adj)
    if n <= 2:
        return list(range(n))
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def canonical_code(t: SimpleGraph, root: int | None = None) -> CanonicalTree:
    adj = t.adjacency
    _check_tree(adj, t.num_edges())
    n = t.n
    if root is not None:
        codes, aut, kids = _rooted_codes(adj, root)
        return CanonicalTree(codes[root], n, True, aut[root], _preorder_parent(kids, root))
    cs = centers(adj)
    best = None
    for c in cs:
        codes, aut, kids = _rooted_codes(adj, c)
        if best is None or codes[c] < best[0]:
            best = (codes[c], aut, kids, c, codes)
    code, aut, kids, c, codes = best
    if len(cs) == 1:
        a = aut[c]
    else:
        other = cs[1] if c == cs[0] else cs[0]
        # aut[c] already counts the swap when the two halves coincide, since
        # other's subtree then equals some sibling; recompute from the halves.
        left = _half_aut(adj, c, other)
        right = _half_aut(adj, other, c)
        a = left[0] * right[0] * (2 if left[1] == right[1] else 1)
    return CanonicalTree(code, n, False, a, _preorder_parent(kids, c))


def _half_aut(adj, a: int, b: int) -> tuple[int, str]:
    """Rooted aut and code of the component of ``a`` after deleting edge a-b."""
    pruned = [list(x) for x in adj]
    pruned[a].remove(b)
    pruned[b].remove(a)
    codes, aut, _ = _rooted_codes(pruned, a)
    return aut[a], codes[a]


def automorphism_count(t: CanonicalTree) -> int:
    return t.aut


def tree_from_code(code: str) -> CanonicalTree:
    """Rebuild a rooted canonical tree from its AHU string."""
    parent: list[int] = []
    stack: list[int] = []
    for ch in code:
        if ch == "(":
            parent.append(stack[-1] if stack else -1)
            stack.append(len(parent) - 1)
        else:
            stack.pop()
    edges = [(p, v) for v, p in enumerate(parent) if p >= 0]
    return canonical_code(SimpleGraph.from_edges(len(parent), edges), root=0)


def tree_automorphisms(tree: CanonicalTree, rooted: bool | None = None, limit: int = 10**6) -> Iterator[tuple[int, ...]]:
    """Yield every automorphism as a permutation tuple ``perm[v] = image``.

    Rooted trees (or ``rooted=True``) only get root-fixing automorphisms.
    """
    rooted = tree.rooted if rooted is None else rooted
    adj = tree.adjacency
    roots = [tree.root] if rooted else centers(adj)
    codes, _, kids = _rooted_codes(adj, roots[0])

    def matchings(u: int, v: int) -> Iterator[dict[int, int]]:
        # isomorphisms of the subtree at u onto the subtree at v (equal codes)
        cu, cv = kids[u], kids[v]
        groups: dict[str, tuple[list[int], list[int]]] = {}
        for w in cu:
            groups.setdefault(codes[w], ([], []))[0].append(w)
        for w in cv:
            groups[codes[w]][1].append(w)
        yield from _product_groups(list(groups.values()), {u: v})

    def _product_groups(groups, acc) -> Iterator[dict[int, int]]:
        if not groups:
            yield dict(acc)
            return
        src, dst = groups[0]
        from itertools import permutations

        for perm in permutations(dst):
            partial = [acc]
            for a, b in zip(src, perm):
                partial = [{**p, **m} for p in partial for m in matchings(a, b)]
            for p in partial:
                yield from _product_groups(groups[1:], p)

    count = 0
    starts = [(roots[0], roots[0])]
    if not rooted and len(roots) == 2:
        # the bicentral swap is available iff the halves coincide
        a, b = roots
        if _half_aut(adj, a, b)[1] == _half_aut(adj, b, a)[1]:
            starts.append((a, b))
    for s, t in starts:
        if s == t:
            for m in matchings(s, s):
                count += 1
                if count > limit:
                    raise OverflowError("automorphism enumeration limit exceeded")
                yield tuple(m[v] for v in range(tree.size))
        else:
            pa = [list(x) for x in adj]
            pa[s].remove(t)
            pa[t].remove(s)
            cs, _, ks = _rooted_codes(pa, s)
            ct, _, kt = _rooted_codes(pa, t)
            for m1 in _half_isos(pa, s, t):
                for m2 in _half_isos(pa, t, s):
                    count += 1
                    if count > limit:
                        raise OverflowError("automorphism enumeration limit exceeded")
                    full = {**m1, **m2}
                    yield tuple(full[v] for v in range(tree.size))


def _half_isos(pruned, a: int, b: int) -> Iterator[dict[int, int]]:
    """Isomorphisms from the half-tree at ``a`` onto the half-tree at ``b``."""
    from itertools import permutations

    ca, _, ka = _rooted_codes(pruned, a)
    cb, _, kb = _rooted_codes(pruned, b)

    def match(u, v):
        groups: dict[str, tuple[list[int], list[int]]] = {}
        for w in ka[u]:
            groups.setdefault(ca[w], ([], []))[0].append(w)
        for w in kb[v]:
            groups[cb[w]][1].append(w)
        return _prod(list(groups.values()), {u: v})

    def _prod(groups, acc):
        if not groups:
            yield dict(acc)
            return
        src, dst = groups[0]
        for perm in permutations(dst):
            partial = [acc]
            for x, y in zip(src, perm):
                partial = [{**p, **m} for p in partial for m in match(x, y)]
            for p in partial:
                yield from _prod(groups[1:], p)

    yield from match(a, b)
