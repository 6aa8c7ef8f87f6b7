"""Two-block SBM samplers: single graph, correlated pair, independent null pair.

Edges are drawn per label block by geometric skipping over the block's pair
index space, so the cost is proportional to the number of edges rather than
to ``n^2``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import RateOutOfRange
from ..graph_core.graphs import SimpleGraph
from .params import ModelParams, make_rng

# stream roles under one seed
_LABELS, _EDGES, _KEEP_A, _KEEP_B, _PERM, _J = range(6)


def _skip_positions(total: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Sorted indices in ``[0, total)`` kept independently with probability ``p``."""
    if total <= 0 or p <= 0.0:
        return np.empty(0, dtype=np.int64)
    if p >= 1.0:
        return np.arange(total, dtype=np.int64)
    chunks = []
    pos = -1
    chunk = int(total * p * 1.1) + 64
    while True:
        gaps = rng.geometric(p, size=chunk)
        idx = pos + np.cumsum(gaps)
        keep = idx[idx < total]
        chunks.append(keep)
        if len(keep) < len(idx):
            break
        pos = int(idx[-1])
    return np.concatenate(chunks).astype(np.int64)


def _unrank_triangle(k: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map ``k`` to ``(i, j)`` with ``i < j`` in colex order ``k = j(j-1)/2 + i``."""
    j = np.floor((1 + np.sqrt(1 + 8 * k.astype(np.float64))) / 2).astype(np.int64)
    # float rounding can be off by one for very large k
    j -= (j * (j - 1) // 2 > k).astype(np.int64)
    j += ((j + 1) * j // 2 <= k).astype(np.int64)
    i = k - j * (j - 1) // 2
    return i, j


def _block_edges(sigma: np.ndarray, lam: float, params: ModelParams, rng: np.random.Generator) -> np.ndarray:
    plus = np.flatnonzero(sigma > 0)
    minus = np.flatnonzero(sigma < 0)
    p_in, p_out = params.rate(+1, lam), params.rate(-1, lam)
    parts = []
    for grp in (plus, minus):
        m = len(grp)
        k = _skip_positions(m * (m - 1) // 2, p_in, rng)
        i, j = _unrank_triangle(k)
        parts.append(np.stack([grp[i], grp[j]], axis=1))
    k = _skip_positions(len(plus) * len(minus), p_out, rng)
    if len(minus):
        parts.append(np.stack([plus[k // len(minus)], minus[k % len(minus)]], axis=1))
    e = np.concatenate(parts) if parts else np.empty((0, 2), dtype=np.int64)
    e = np.sort(e, axis=1)
    return e[np.lexsort((e[:, 1], e[:, 0]))]


def _graph(n: int, e: np.ndarray) -> SimpleGraph:
    return SimpleGraph(n, frozenset(map(tuple, e.tolist())))


def _labels(n: int, rng: np.random.Generator) -> np.ndarray:
    return np.where(rng.integers(0, 2, size=n) == 1, 1, -1).astype(np.int64)


def sample_sbm(params: ModelParams, seed: int, lam: float | None = None, stream: int = 0) -> tuple[np.ndarray, SimpleGraph]:
    """Labels and graph from the two-block SBM with rate ``lam`` (defaults to ``params.lam``)."""
    lam = params.lam if lam is None else lam
    if (1 + params.eps) * lam / params.n > 1:
        raise RateOutOfRange("within-block edge probability exceeds 1")
    sigma = _labels(params.n, make_rng(seed, _LABELS, stream))
    e = _block_edges(sigma, lam, params, make_rng(seed, _EDGES, stream))
    return sigma, _graph(params.n, e)


@dataclass(frozen=True)
class CorrelatedSample:
    sigma: np.ndarray
    pi: np.ndarray
    parent: SimpleGraph
    A: SimpleGraph
    B: SimpleGraph


@dataclass(frozen=True)
class NullSample:
    A: SimpleGraph
    B: SimpleGraph
    sigmaA: np.ndarray
    sigmaB: np.ndarray


def sample_correlated(params: ModelParams, seed: int, identity: bool = False) -> CorrelatedSample:
    """Parent SBM, two independent ``s``-subsamples, the second relabeled by a uniform permutation.

    ``identity=True`` fixes the permutation to the identity (the law at ``pi = id``).
    """
    sigma, G = sample_sbm(params, seed)
    e = np.array(sorted(G.edges), dtype=np.int64).reshape(-1, 2)
    keep_a = make_rng(seed, _KEEP_A).random(len(e)) < params.s
    keep_b = make_rng(seed, _KEEP_B).random(len(e)) < params.s
    n = params.n
    pi = np.arange(n) if identity else make_rng(seed, _PERM).permutation(n)
    eb = np.sort(pi[e[keep_b]], axis=1) if len(e) else e
    return CorrelatedSample(sigma, pi, G, _graph(n, e[keep_a]), _graph(n, eb))


def sample_null(params: ModelParams, seed: int) -> NullSample:
    lam = params.lam * params.s
    sa, A = sample_sbm(params, seed, lam, stream=1)
    sb, B = sample_sbm(params, seed, lam, stream=2)
    return NullSample(A, B, sa, sb)


def sample_j_sets(params: ModelParams, seed: int) -> tuple[frozenset[int], frozenset[int]]:
    """Uniform vertex subsets of size ``floor(j_frac * n)`` for each graph."""
    rng = make_rng(seed, _J)
    k = params.j_size
    ja = rng.choice(params.n, size=k, replace=False)
    jb = rng.choice(params.n, size=k, replace=False)
    return frozenset(int(x) for x in ja), frozenset(int(x) for x in jb)


def _edges_json(g: SimpleGraph) -> list[list[int]]:
    return [[u, v] for u, v in sorted(g.edges)]


def pair_to_json(params: ModelParams, seed: int, A: SimpleGraph, B: SimpleGraph, latent: dict | None = None) -> dict:
    obj = {"params": params.to_dict(), "seed": int(seed), "A": _edges_json(A), "B": _edges_json(B)}
    for k, v in (latent or {}).items():
        obj[k] = [int(x) for x in np.asarray(v).tolist()]
    return obj


def save_pair(path: str | Path, obj: dict) -> None:
    Path(path).write_text(json.dumps(obj, sort_keys=True) + "\n")


def load_pair(path: str | Path) -> tuple[ModelParams, int, SimpleGraph, SimpleGraph, dict]:
    obj = json.loads(Path(path).read_text())
    params = ModelParams.from_dict(obj["params"])
    A = SimpleGraph.from_edges(params.n, obj["A"])
    B = SimpleGraph.from_edges(params.n, obj["B"])
    latent = {k: obj[k] for k in ("sigmaA", "sigmaB", "pi") if k in obj}
    return params, int(obj["seed"]), A, B, latent
