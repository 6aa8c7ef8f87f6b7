"""Color-coding dynamic program for decorated-tree embedding sums.

Tables are indexed by color sets (bitmasks) and hold arrays of shape
``(batch, n, *pending)``: the batch of colorings, the image of the current
subtree root, and one axis per pairing endpoint that is still open. A pair
``(u, v)`` is closed in one of three ways, depending on which endpoint
finishes first in post-order:

* the first endpoint multiplies by the path-sum matrix ``L`` and opens an
  axis indexing its partner's image;
* if that partner is an ancestor, the axis is collapsed onto the diagonal
  once the partner is reached;
* otherwise the partner exposes a delta axis under its own name and the two
  axes are contracted where the branches meet.

Colorful images are automatically injective, so no extra distinctness
bookkeeping is needed.
"""

from __future__ import annotations

import math
import string
from typing import Iterable

import numpy as np

from ..errors import ShapeUnsupported
from ..graph_core.graphs import SimpleGraph, VertexColoring
from ..graph_core.hosts import DenseHost, Host
from ..graph_core.paths import nb_path_matrix
from ..statistic_core.embeddings import DEFAULT_BUDGET, embedding_sum, shape_automorphisms
from ..tree_family.family import DecoratedTreeShape

MAX_PENDING = 2

Table = tuple[tuple[int, ...], dict[int, np.ndarray]]


def as_host(M) -> Host:
    if isinstance(M, Host):
        return M
    if isinstance(M, SimpleGraph):
        return DenseHost.from_graph(M)
    return DenseHost(np.asarray(M, dtype=np.float64))


def precompute_nb_sums(M, J: Iterable[int], length: int) -> np.ndarray:
    """Dense table of non-backtracking path sums ``L[x, y]`` for all pairs."""
    return nb_path_matrix(as_host(M), J, length)


def _colors_array(mu, n: int) -> np.ndarray:
    if isinstance(mu, VertexColoring):
        mu = mu.colors
    c = np.asarray(mu, dtype=np.int64)
    if c.ndim == 1:
        c = c[None, :]
    if c.shape[1] != n:
        raise ValueError(f"coloring width {c.shape[1]} does not match host size {n}")
    return c


class _Program:
    def __init__(self, host: Host, colors: np.ndarray, shape: DecoratedTreeShape, J, L, memo: bool):
        self.host = host
        self.shape = shape
        self.tree = shape.tree
        self.n = host.n
        keep = np.ones(self.n, dtype=bool)
        keep[list(set(J))] = False
        self.base = {1 << c: ((colors == c) & keep[None, :]).astype(np.float64) for c in range(shape.aleph)}
        self.L = L
        self.memo = {} if memo else None
        self.finished: set[int] = set()
        # endpoints whose delta axis is still implicit; realized while crossing the parent edge
        self.lazy_delta: set[int] = set()
        self._dense = None
        paired = shape.pairing.vertices
        sizes = self.tree.subtree_sizes
        self.pair_free = [not any(u in paired for u in range(v, v + sizes[v])) for v in range(self.tree.size)]

    # axis helpers; pending axes start at index 2

    def _edge(self, arr: np.ndarray) -> np.ndarray:
        moved = np.moveaxis(arr, 1, -1)
        return np.moveaxis(self.host.matmul(moved), -1, 1)

    def _edge_delta(self, arr: np.ndarray) -> np.ndarray:
        """Edge pass for ``arr[..., y] * delta(y, y')`` without building the delta."""
        if self._dense is None:
            self._dense = self.host.dense()
        moved = np.moveaxis(arr, 1, -1)[:, None]
        extra = arr.ndim - 2
        return moved * self._dense.reshape((1, self.n) + (1,) * extra + (self.n,))

    def _children(self, v: int) -> list[int]:
        # the first endpoint to finish pays a full matmul per color set, so favor small subtrees
        sizes = self.tree.subtree_sizes
        return sorted(self.tree.children[v], key=lambda c: math.comb(self.shape.aleph, sizes[c]))

    def _expand(self, arr: np.ndarray, M: np.ndarray) -> np.ndarray:
        """``out[..., x, ..., z] = arr[..., x, ...] * M[x, z]``."""
        extra = arr.ndim - 2
        shaped = M.reshape((1, self.n) + (1,) * extra + (self.n,))
        return arr[..., None] * shaped

    def _combine(self, left: Table, right: Table) -> Table:
        llab, ltab = left
        rlab, rtab = right
        common = set(llab) & set(rlab)
        out_lab = tuple(x for x in llab + rlab if x not in common)
        letters = {lab: string.ascii_lowercase[2 + i] for i, lab in enumerate(set(llab) | set(rlab))}
        sub_l = "ab" + "".join(letters[x] for x in llab)
        sub_r = "ab" + "".join(letters[x] for x in rlab)
        sub_o = "ab" + "".join(letters[x] for x in out_lab)
        expr = f"{sub_l},{sub_r}->{sub_o}"
        out: dict[int, np.ndarray] = {}
        for ml, al in ltab.items():
            for mr, ar in rtab.items():
                if ml & mr:
                    continue
                val = np.einsum(expr, al, ar, optimize=True)
                m = ml | mr
                if m in out:
                    out[m] += val
                else:
                    out[m] = val
        return out_lab, out

    def run(self, v: int) -> Table:
        key = None
        if self.memo is not None and self.pair_free[v]:
            key = self.tree.subtree(v).code
            if key in self.memo:
                return self.memo[key]
        table: Table = ((), dict(self.base))
        for c in self._children(v):
            clab, ctab = self.run(c)
            edge = self._edge_delta if c in self.lazy_delta else self._edge
            table = self._combine(table, (clab, {m: edge(a) for m, a in ctab.items()}))
        table = self._close(v, table)
        self.finished.add(v)
        if len(table[0]) > MAX_PENDING:
            raise ShapeUnsupported(f"more than {MAX_PENDING} open pairing axes at vertex {v}")
        if key is not None:
            self.memo[key] = table
        return table

    def _close(self, v: int, table: Table) -> Table:
        w = self.shape.pairing.partner(v)
        if w is None:
            return table
        labels, tab = table
        if v in labels:
            k = 2 + labels.index(v)
            tab = {m: np.moveaxis(np.diagonal(a, axis1=1, axis2=k), -1, 1) for m, a in tab.items()}
            return tuple(x for x in labels if x != v), tab
        if w in self.finished:
            self.lazy_delta.add(v)
            return labels + (v,), tab
        return labels + (w,), {m: self._expand(a, self.L) for m, a in tab.items()}


def x_h_dp_batch(
    M,
    colors,
    shape: DecoratedTreeShape,
    J: Iterable[int] = (),
    L: np.ndarray | None = None,
    memo: bool = True,
) -> np.ndarray:
    """Colorful NB embedding sums for a batch of colorings (rows of ``colors``)."""
    host = as_host(M)
    J = set(J)
    colors = _colors_array(colors, host.n)
    if shape.aleph > 20:
        raise ShapeUnsupported("color sets limited to 20 tree vertices")
    if shape.num_pairs and L is None:
        L = precompute_nb_sums(host, J, shape.path_len)
    prog = _Program(host, colors, shape, J, L, memo)
    labels, tab = prog.run(shape.tree.root)
    if labels:
        raise ShapeUnsupported(f"pairing axes left open: {labels}")
    full = (1 << shape.aleph) - 1
    if full not in tab:
        return np.zeros(len(colors))
    return tab[full].sum(axis=1) / len(shape_automorphisms(shape))


def x_h_dp(M, mu, shape: DecoratedTreeShape, J: Iterable[int] = (), L: np.ndarray | None = None, memo: bool = True) -> float:
    """``sum over NB embeddings S of chi_mu(tree image) * prod of weights``."""
    return float(x_h_dp_batch(M, mu, shape, J, L, memo)[0])


def x_h_bruteforce(M, mu, shape: DecoratedTreeShape, J: Iterable[int] = (), budget: int = DEFAULT_BUDGET) -> float:
    """The same sum by explicit enumeration (small hosts only)."""
    if isinstance(M, Host):
        M = M.to_graph()
    elif not isinstance(M, SimpleGraph):
        M = DenseHost(np.asarray(M, dtype=np.float64)).to_graph()
    colors = mu.colors if isinstance(mu, VertexColoring) else np.asarray(mu)
    return embedding_sum(M, shape, J, "nb", colors=colors, budget=budget)


def colorful_probability(aleph: int) -> float:
    """``r = aleph! / aleph^aleph``, the chance a fixed image is colorful."""
    return math.factorial(aleph) / aleph**aleph
