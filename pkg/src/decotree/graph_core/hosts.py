"""Weighted hosts on the complete graph over ``[n]``.

The estimator only ever multiplies by weight matrices, so a host exposes
``matmul`` (``N @ W``), Hadamard powers, and a few column sums. Standardized
adjacency matrices take just two off-diagonal values (one for edges, one for
non-edges); ``TwoLevelHost`` keeps them implicit so the work stays
proportional to the edge count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .graphs import SimpleGraph


class Host:
    n: int

    def matmul(self, N: np.ndarray) -> np.ndarray:
        """``N @ W`` along the last axis of ``N``."""
        raise NotImplementedError

    def power(self, k: int) -> "Host":
        """Entrywise power ``W ** k`` (diagonal stays zero)."""
        raise NotImplementedError

    def colsum(self, mask: np.ndarray | None = None) -> np.ndarray:
        """``sum_a mask[a] * W[a, :]``; all rows when ``mask`` is None."""
        raise NotImplementedError

    def dense(self) -> np.ndarray:
        raise NotImplementedError

    def weight(self, u: int, v: int) -> float:
        raise NotImplementedError

    def to_graph(self) -> SimpleGraph:
        """Materialize as a complete weighted ``SimpleGraph`` (small n only)."""
        W = self.dense()
        edges = [(u, v, float(W[u, v])) for u in range(self.n) for v in range(u + 1, self.n) if W[u, v] != 0.0]
        return SimpleGraph.from_edges(self.n, edges)


@dataclass(frozen=True)
class DenseHost(Host):
    W: np.ndarray

    def __post_init__(self):
        W = np.array(self.W, dtype=np.float64)
        np.fill_diagonal(W, 0.0)
        object.__setattr__(self, "W", W)

    @property
    def n(self) -> int:
        return self.W.shape[0]

    @classmethod
    def from_graph(cls, g: SimpleGraph) -> "DenseHost":
        return cls(g.weight_matrix())

    def matmul(self, N):
        return N @ self.W

    def power(self, k):
        return DenseHost(self.W**k)

    def colsum(self, mask=None):
        if mask is None:
            return self.W.sum(axis=0)
        return np.asarray(mask, dtype=np.float64) @ self.W

    def dense(self):
        return self.W.copy()

    def weight(self, u, v):
        return float(self.W[u, v]) if u != v else 0.0


@dataclass(frozen=True)
class TwoLevelHost(Host):
    """``W[i, j] = on`` for edges, ``off`` for other pairs ``i != j``, 0 on the diagonal."""

    adj: sp.csr_matrix
    on: float
    off: float

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @classmethod
    def from_graph(cls, g: SimpleGraph, on: float, off: float) -> "TwoLevelHost":
        return cls(g.to_sparse().tocsr(), float(on), float(off))

    @property
    def degrees(self) -> np.ndarray:
        return np.asarray(self.adj.sum(axis=0)).ravel()

    def matmul(self, N):
        N = np.asarray(N, dtype=np.float64)
        lead = N.shape[:-1]
        flat = N.reshape(-1, self.n)
        # N @ A through the sparse side: (A^T N^T)^T, A symmetric
        out = (self.adj @ flat.T).T * (self.on - self.off)
        out += self.off * (flat.sum(axis=1, keepdims=True) - flat)
        return out.reshape(*lead, self.n)

    def power(self, k):
        return TwoLevelHost(self.adj, self.on**k, self.off**k)

    def colsum(self, mask=None):
        deg = self.degrees
        if mask is None:
            return self.on * deg + self.off * (self.n - 1 - deg)
        m = np.asarray(mask, dtype=np.float64)
        hits = self.adj @ m
        return self.on * hits + self.off * (m.sum() - m - hits)

    def dense(self):
        W = np.full((self.n, self.n), self.off)
        W[self.adj.toarray() != 0] = self.on
        np.fill_diagonal(W, 0.0)
        return W

    def weight(self, u, v):
        if u == v:
            return 0.0
        return self.on if self.adj[u, v] != 0 else self.off
