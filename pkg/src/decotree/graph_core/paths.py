"""Non-backtracking and self-avoiding paths with endpoint-neighbor constraints.

Every path here runs from ``x`` to ``y`` with ``length`` edges, and the
vertices right after ``x`` and right before ``y`` must lie in ``J``. The
endpoints themselves are outside ``J``. Non-backtracking paths may revisit
any vertex (including ``x`` and ``y``) as long as no step immediately
reverses the previous one.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from ..errors import InvalidLength
from .graphs import SimpleGraph
from .hosts import Host


def _check(x: int, y: int, length: int, J: set[int]) -> None:
    if length < 2:
        raise InvalidLength(f"path length must be at least 2, got {length}")
    if x == y:
        raise ValueError("endpoints must differ")
    if x in J or y in J:
        raise ValueError("endpoints must lie outside J")


def _directed_edges(M: SimpleGraph):
    es = sorted(M.edges)
    m = len(es)
    src = np.empty(2 * m, dtype=np.int64)
    dst = np.empty(2 * m, dtype=np.int64)
    w = np.empty(2 * m)
    for k, (u, v) in enumerate(es):
        wt = M.weight(u, v)
        src[2 * k], dst[2 * k], w[2 * k] = u, v, wt
        src[2 * k + 1], dst[2 * k + 1], w[2 * k + 1] = v, u, wt
    rev = np.arange(2 * m) ^ 1
    return src, dst, w, rev


def nb_path_sums_from(M: SimpleGraph, x: int, length: int, J: Iterable[int]) -> np.ndarray:
    """``L(x, y)`` for every ``y`` from one forward sweep over directed edges.

    Entries for ``y == x`` or ``y`` in ``J`` are zero.
    """
    J = set(J)
    if length < 2:
        raise InvalidLength(f"path length must be at least 2, got {length}")
    out = np.zeros(M.n)
    if not M.edges:
        return out
    src, dst, w, rev = _directed_edges(M)
    inJ = np.zeros(M.n, dtype=bool)
    inJ[list(J)] = True
    val = np.where((src == x) & inJ[dst], w, 0.0)
    for _ in range(length - 1):
        inflow = np.bincount(dst, weights=val, minlength=M.n)
        val = w * (inflow[src] - val[rev])
    out = np.bincount(dst, weights=np.where(inJ[src], val, 0.0), minlength=M.n)
    out[x] = 0.0
    out[inJ] = 0.0
    return out


def nb_path_sum(M: SimpleGraph, x: int, y: int, length: int, J: Iterable[int]) -> float:
    J = set(J)
    _check(x, y, length, J)
    return float(nb_path_sums_from(M, x, length, J)[y])


def _walk(M: SimpleGraph, x: int, y: int, length: int, J: set[int], self_avoiding: bool) -> list[tuple[int, ...]]:
    adj = M.adjacency
    out: list[tuple[int, ...]] = []
    path = [x]

    def rec(depth: int) -> None:
        u = path[-1]
        if depth == length:
            if u == y and path[-2] in J:
                out.append(tuple(path))
            return
        for w in adj[u]:
            if depth == 0 and w not in J:
                continue
            if len(path) >= 2 and w == path[-2]:
                continue
            if self_avoiding and w in path:
                continue
            path.append(w)
            rec(depth + 1)
            path.pop()

    rec(0)
    return out


def nb_path_enumerate(M: SimpleGraph, x: int, y: int, length: int, J: Iterable[int]) -> list[tuple[int, ...]]:
    """Every non-backtracking path as a vertex tuple."""
    J = set(J)
    _check(x, y, length, J)
    return _walk(M, x, y, length, J, self_avoiding=False)


def saw_path_enumerate(M: SimpleGraph, x: int, y: int, length: int, J: Iterable[int]) -> list[tuple[int, ...]]:
    """Every self-avoiding path as a vertex tuple."""
    J = set(J)
    _check(x, y, length, J)
    return _walk(M, x, y, length, J, self_avoiding=True)


def path_weight(M: SimpleGraph, path: Iterable[int]) -> float:
    path = list(path)
    prod = 1.0
    for a, b in zip(path, path[1:]):
        prod *= M.weight(a, b)
    return prod


def nb_path_matrix(host: Host, J: Iterable[int], length: int) -> np.ndarray:
    """Dense ``L`` for all pairs on a complete weighted host.

    Uses the non-backtracking recursion ``N_{m+1} = N_m W - C_{m+1}`` where
    the backtrack correction unrolls into alternating Hadamard powers of W.
    ``N_m[x, c]`` sums walks of ``m`` edges from ``x`` to ``c`` whose first
    interior vertex lies in J. Rows and columns of J and the diagonal are
    zeroed in the result.
    """
    if length < 2:
        raise InvalidLength(f"path length must be at least 2, got {length}")
    n = host.n
    mJ = np.zeros(n)
    mJ[list(set(J))] = 1.0
    P = {k: host.power(k) for k in range(1, length + 2)}
    colsum = {k: P[k].colsum() for k in P}
    colsum_J = {k: P[k].colsum(mJ) for k in P}
    eye = np.eye(n)

    N = {1: P[1].dense() * mJ[None, :]}
    for m in range(1, length - 1):
        corr = np.zeros((n, n))
        for i in range(m - 1):
            prev = N[m - 1 - i]
            if i % 2 == 0:
                corr += prev * colsum[i + 2][None, :]
            else:
                corr -= P[i + 2].matmul(prev)
        sign = 1.0 if (m - 1) % 2 == 0 else -1.0
        if (m - 1) % 2 == 0:
            corr += sign * np.diag(colsum_J[m + 1])
        else:
            corr += sign * P[m + 1].dense() * mJ[None, :]
        N[m + 1] = host.matmul(N[m]) - corr

    # last step arrives from a J vertex; terminal terms vanish for x, y outside J
    L = np.zeros((n, n))
    for i in range(length - 1):
        prev = N[length - 1 - i]
        sign = 1.0 if i % 2 == 0 else -1.0
        if i % 2 == 0:
            L += sign * P[i + 1].matmul(prev * mJ[None, :])
        else:
            L += sign * prev * colsum_J[i + 1][None, :]
    keep = 1.0 - mJ
    L *= keep[:, None] * keep[None, :]
    L *= 1.0 - eye
    return L
