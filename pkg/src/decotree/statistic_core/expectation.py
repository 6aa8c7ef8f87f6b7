"""Exact expectations of ``phi_S(A) * phi_K(B)`` under the correlated and null laws.

Given the labels, each distinct pair ``e`` contributes an independent factor
with conditional mean ``u_e + v_e * sigma_i sigma_j``. Averaging the product
over uniform labels keeps exactly the terms whose ``v``-edges form an even
subgraph, so

    E = sum over even subgraphs E' of prod_{E'} v_e * prod_{rest} u_e.

Even subgraphs are enumerated as the cycle space of the union graph.
"""

from __future__ import annotations

import math
from collections import Counter
from itertools import product
from typing import Iterable, Literal, Sequence

from ..errors import ConfigurationUnsupported
from ..graph_core.graphs import norm_edge
from ..sbm_model.moments import exact_edge_moments
from ..sbm_model.params import ModelParams

Law = Literal["P", "Q"]
MAX_CYCLE_RANK = 22


def _edge_counter(edges) -> Counter:
    if hasattr(edges, "tree_edges"):
        edges = edges.tree_edges() + edges.path_edges()
    elif hasattr(edges, "multiplicities"):
        return Counter(dict(edges.multiplicities))
    return Counter(norm_edge(int(a), int(b)) for a, b in edges)


def even_subgraphs(edges: Sequence[tuple[int, int]]) -> list[int]:
    """Bitmasks (over ``edges``) of every subgraph with all degrees even."""
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree_adj: dict[int, list[tuple[int, int]]] = {}
    chords = []
    for idx, (a, b) in enumerate(edges):
        ra, rb = find(a), find(b)
        if ra == rb:
            chords.append(idx)
        else:
            parent[ra] = rb
            tree_adj.setdefault(a, []).append((b, idx))
            tree_adj.setdefault(b, []).append((a, idx))
    if len(chords) > MAX_CYCLE_RANK:
        raise ConfigurationUnsupported(f"cycle rank {len(chords)} too large for exact expansion")

    def tree_path_mask(a: int, b: int) -> int:
        # DFS in the spanning forest from a to b
        stack = [(a, -1, 0)]
        while stack:
            x, prev, mask = stack.pop()
            if x == b:
                return mask
            for y, idx in tree_adj.get(x, []):
                if y != prev:
                    stack.append((y, x, mask ^ (1 << idx)))
        raise AssertionError("chord endpoints must be connected")

    basis = [tree_path_mask(*edges[c]) ^ (1 << c) for c in chords]
    out = []
    for bits in product((0, 1), repeat=len(basis)):
        m = 0
        for take, b in zip(bits, basis):
            if take:
                m ^= b
        out.append(m)
    return out


def _expand(moments: list[tuple[float, float]], edges: list[tuple[int, int]]) -> float:
    terms = []
    for mask in even_subgraphs(edges):
        t = 1.0
        for i, (u, v) in enumerate(moments):
            t *= v if mask >> i & 1 else u
        terms.append(t)
    return math.fsum(terms)


def _single(edges: Counter, p: ModelParams, side: int) -> float:
    keys = sorted(edges)
    if not keys:
        return 1.0
    moms = []
    for e in keys:
        r, t = (edges[e], 0) if side == 0 else (0, edges[e])
        m = exact_edge_moments(r, t, p, correlated=True)
        moms.append((m.u, m.v))
    return _expand(moms, keys)


def expected_phi(S, K, p: ModelParams, law: Law = "P", pi: Sequence[int] | None = None) -> float:
    """Exact ``E[phi_S(A) phi_K(B)]``.

    ``S`` and ``K`` are edge lists (repeats count as multiplicity), multigraphs
    or embeddings. Under ``P`` with permutation ``pi``, ``K`` lives on B's
    labels and is pulled back through ``pi``; under ``Q`` the graphs and their
    labels are independent.
    """
    cs, ck = _edge_counter(S), _edge_counter(K)
    if pi is not None:
        inv = {int(b): a for a, b in enumerate(pi)}
        ck = Counter({norm_edge(inv[a], inv[b]): m for (a, b), m in ck.items()})
    if law == "Q":
        return _single(cs, p, 0) * _single(ck, p, 1)
    if law != "P":
        raise ValueError(f"unknown law {law!r}")
    keys = sorted(set(cs) | set(ck))
    if not keys:
        return 1.0
    moms = []
    for e in keys:
        m = exact_edge_moments(cs.get(e, 0), ck.get(e, 0), p, correlated=True)
        moms.append((m.u, m.v))
    return _expand(moms, keys)


def positivity_check(S1, S2, p: ModelParams, pi: Sequence[int] | None = None, strict: bool = True) -> float:
    """Exact ``E_P[phi_{S1,S2}]``; raises ``ArithmeticError`` when clearly negative and ``strict``."""
    val = expected_phi(S1, S2, p, "P", pi)
    if strict and val < -1e-12:
        raise ArithmeticError(f"negative expectation {val}")
    return val


def _validate_tree_paths(tree_edges, S_paths, K_paths):
    T = {norm_edge(a, b) for a, b in tree_edges}
    if len(T) != len(tree_edges):
        raise ConfigurationUnsupported("repeated tree edge")
    tv = {x for e in T for x in e}
    if len(tv) != len(T) + 1 and T:
        raise ConfigurationUnsupported("tree part must be connected and acyclic")
    adj: dict[int, list[int]] = {}
    for a, b in T:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if T:
        seen = {next(iter(tv))}
        stack = list(seen)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != tv:
            raise ConfigurationUnsupported("tree part must be connected")
    used_inner: set[int] = set()
    used_edges: set[tuple[int, int]] = set(T)
    for path in list(S_paths) + list(K_paths):
        path = list(path)
        if len(path) < 2:
            raise ConfigurationUnsupported("paths need at least one edge")
        if len(set(path)) != len(path):
            raise ConfigurationUnsupported("paths must be self-avoiding")
        if path[0] not in tv or path[-1] not in tv:
            raise ConfigurationUnsupported("paths must end on tree vertices")
        inner = set(path[1:-1])
        if inner & tv or inner & used_inner:
            raise ConfigurationUnsupported("paths may meet the tree and each other only at endpoints")
        used_inner |= inner
        for a, b in zip(path, path[1:]):
            e = norm_edge(a, b)
            if e in used_edges:
                raise ConfigurationUnsupported("paths must not share edges with the tree or each other")
            used_edges.add(e)
    return T, adj, tv


def _tree_parity_edges(T, adj, tv, odd: set[int]) -> set[tuple[int, int]]:
    """Edges of the tree separating an odd number of marked vertices."""
    if not T:
        return set()
    root = min(tv)
    order, par = [root], {root: None}
    for x in order:
        for y in adj[x]:
            if y not in par:
                par[y] = x
                order.append(y)
    parity = {v: int(v in odd) for v in tv}
    out = set()
    for v in reversed(order[1:]):
        if parity[v]:
            out.add(norm_edge(v, par[v]))
            parity[par[v]] ^= 1
    return out


def expected_phi_tree_paths(
    tree_edges: Iterable[tuple[int, int]],
    S_paths: Iterable[Sequence[int]],
    K_paths: Iterable[Sequence[int]],
    p: ModelParams,
    law: Law = "P",
) -> float:
    """``E[phi_S(A) phi_K(B)]`` for ``S = T + S_paths`` and ``K = T + K_paths`` with disjoint attached paths.

    Under ``P`` each path is a chain, so it contributes
    ``prod(u) + sigma_x sigma_y prod(v)``. For every choice of which chains
    take their ``v`` branch, the remaining label product on the tree keeps
    ``v_{1,1}`` exactly on the edges separating an odd number of the chosen
    endpoints.
    """
    tree_edges = list(tree_edges)
    S_paths, K_paths = [list(x) for x in S_paths], [list(x) for x in K_paths]
    T, adj, tv = _validate_tree_paths(tree_edges, S_paths, K_paths)
    if law == "Q":
        S = tree_edges + [(a, b) for q in S_paths for a, b in zip(q, q[1:])]
        K = tree_edges + [(a, b) for q in K_paths for a, b in zip(q, q[1:])]
        return expected_phi(S, K, p, "Q")
    m10 = exact_edge_moments(1, 0, p)
    m01 = exact_edge_moments(0, 1, p)
    m11 = exact_edge_moments(1, 1, p)
    chains = [(m10, q) for q in S_paths] + [(m01, q) for q in K_paths]
    terms = []
    for choice in product((0, 1), repeat=len(chains)):
        coef = 1.0
        odd: set[int] = set()
        for take_v, (m, q) in zip(choice, chains):
            L = len(q) - 1
            coef *= m.v**L if take_v else m.u**L
            if take_v:
                odd ^= {q[0], q[-1]}
        if coef == 0.0:
            continue
        E1 = _tree_parity_edges(T, adj, tv, odd)
        if odd and not T:
            continue
        tree_term = m11.v ** len(E1) * m11.u ** (len(T) - len(E1))
        terms.append(coef * tree_term)
    return math.fsum(terms)
