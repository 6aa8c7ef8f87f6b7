"""Graph containers on the vertex set ``0..n-1``.

``SimpleGraph`` stores each undirected edge once as ``(min, max)``; optional
real weights are used for standardized adjacency entries. ``Multigraph``
keeps integer multiplicities and simplifies to a ``SimpleGraph``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np
import scipy.sparse as sp

from ..errors import ConfigError, MultiplicityOverflow

MAX_MULTIPLICITY = 2**16

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset[Edge]
    weights: Mapping[Edge, float] | None = None
    _adj: tuple = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) is not a normalized pair below n={self.n}")
        if self.weights is not None:
            extra = set(self.weights) - set(self.edges)
            if extra:
                raise ValueError(f"weights given for non-edges: {sorted(extra)[:3]}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple], weights: Mapping | None = None) -> "SimpleGraph":
        """Build from any iterable of ``(u, v)`` or ``(u, v, w)`` tuples."""
        es = set()
        ws = dict(weights) if weights else {}
        for e in edges:
            key = norm_edge(int(e[0]), int(e[1]))
            es.add(key)
            if len(e) > 2:
                ws[key] = float(e[2])
        ws = {norm_edge(*k): float(w) for k, w in ws.items()}
        return cls(n, frozenset(es), ws or None)

    @classmethod
    def from_sparse(cls, n: int, adj: sp.spmatrix) -> "SimpleGraph":
        coo = sp.triu(adj, k=1).tocoo()
        return cls(n, frozenset(zip(coo.row.tolist(), coo.col.tolist())))

    def weight(self, u: int, v: int) -> float:
        key = norm_edge(u, v)
        if key not in self.edges:
            return 0.0
        if self.weights is None:
            return 1.0
        return self.weights.get(key, 1.0)

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        if self._adj is None:
            nbrs: list[list[int]] = [[] for _ in range(self.n)]
            for u, v in sorted(self.edges):
                nbrs[u].append(v)
                nbrs[v].append(u)
            object.__setattr__(self, "_adj", tuple(tuple(x) for x in nbrs))
        return self._adj

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def num_edges(self) -> int:
        return len(self.edges)

    def to_sparse(self) -> sp.csr_matrix:
        """Symmetric 0/1 adjacency (weights ignored)."""
        if not self.edges:
            return sp.csr_matrix((self.n, self.n), dtype=np.float64)
        e = np.array(sorted(self.edges), dtype=np.int64)
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        data = np.ones(len(rows))
        return sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def weight_matrix(self) -> np.ndarray:
        W = np.zeros((self.n, self.n))
        for u, v in self.edges:
            W[u, v] = W[v, u] = self.weight(u, v)
        return W

    def relabel(self, perm) -> "SimpleGraph":
        """Image under the vertex map ``i -> perm[i]``."""
        perm = [int(p) for p in perm]
        es = frozenset(norm_edge(perm[u], perm[v]) for u, v in self.edges)
        ws = None
        if self.weights is not None:
            ws = {norm_edge(perm[u], perm[v]): w for (u, v), w in self.weights.items()}
        return SimpleGraph(self.n, es, ws)

    def disjoint_union(self, other: "SimpleGraph") -> "SimpleGraph":
        shift = self.n
        es = set(self.edges) | {(u + shift, v + shift) for u, v in other.edges}
        return SimpleGraph(self.n + other.n, frozenset(es))

    # -- serialization --------------------------------------------------
    def to_edge_list(self) -> str:
        lines = [f"n {self.n}"]
        for u, v in sorted(self.edges):
            if self.weights is not None and (u, v) in self.weights:
                lines.append(f"{u} {v} {self.weights[(u, v)]!r}")
            else:
                lines.append(f"{u} {v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse_edge_list(cls, text: str) -> "SimpleGraph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not rows or rows[0][0] != "n" or len(rows[0]) != 2:
            raise ConfigError("edge list must start with 'n <count>'")
        n = int(rows[0][1])
        edges = []
        for r in rows[1:]:
            if len(r) not in (2, 3):
                raise ConfigError(f"bad edge line: {' '.join(r)}")
            edges.append((int(r[0]), int(r[1])) + ((float(r[2]),) if len(r) == 3 else ()))
        return cls.from_edges(n, edges)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[u, v, self.weight(u, v)] for u, v in sorted(self.edges)]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "SimpleGraph":
        edges = [tuple(e) for e in obj["edges"]]
        g = cls.from_edges(int(obj["n"]), edges)
        if g.weights is not None and all(w == 1.0 for w in g.weights.values()):
            g = cls(g.n, g.edges)
        return g

    def save(self, path: str | Path) -> None:
        path = Path(path)
        if path.suffix == ".json":
            path.write_text(json.dumps(self.to_json(), sort_keys=True) + "\n")
        else:
            path.write_text(self.to_edge_list())

    @classmethod
    def load(cls, path: str | Path) -> "SimpleGraph":
        path = Path(path)
        text = path.read_text()
        if path.suffix == ".json":
            return cls.from_json(json.loads(text))
        return cls.parse_edge_list(text)


@dataclass(frozen=True)
class Multigraph:
    n: int
    multiplicities: Mapping[Edge, int]

    def __post_init__(self):
        for (u, v), m in self.multiplicities.items():
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) is not a normalized pair below n={self.n}")
            if m < 1:
                raise ValueError("multiplicities must be positive")
            if m > MAX_MULTIPLICITY:
                raise MultiplicityOverflow(f"multiplicity {m} exceeds {MAX_MULTIPLICITY}")

    @classmethod
    def from_walks(cls, n: int, walks: Iterable[Iterable[int]]) -> "Multigraph":
        """Union of walks (vertex sequences) counting repeated edges."""
        mult: dict[Edge, int] = {}
        for w in walks:
            w = list(w)
            for a, b in zip(w, w[1:]):
                key = norm_edge(a, b)
                mult[key] = mult.get(key, 0) + 1
        return cls(n, mult)

    def simplify(self) -> SimpleGraph:
        return SimpleGraph(self.n, frozenset(self.multiplicities))

    def total_edges(self) -> int:
        return sum(self.multiplicities.values())

    def vertices(self) -> set[int]:
        return {x for e in self.multiplicities for x in e}

    def degrees(self) -> dict[int, int]:
        deg: dict[int, int] = {}
        for (u, v), m in self.multiplicities.items():
            deg[u] = deg.get(u, 0) + m
            deg[v] = deg.get(v, 0) + m
        return deg

    def leaves(self) -> set[int]:
        """Vertices of degree one counting multiplicity."""
        return {v for v, d in self.degrees().items() if d == 1}


def tau(g: SimpleGraph | Multigraph) -> int:
    """Excess ``|E| - |V|``; multigraph edges count with multiplicity."""
    if isinstance(g, Multigraph):
        return g.total_edges() - g.n
    return len(g.edges) - g.n


@dataclass(frozen=True)
class VertexColoring:
    n: int
    colors: np.ndarray
    aleph: int

    def __post_init__(self):
        c = np.asarray(self.colors, dtype=np.int64)
        object.__setattr__(self, "colors", c)
        if c.shape != (self.n,):
            raise ValueError(f"coloring has shape {c.shape}, expected ({self.n},)")
        if c.size and (c.min() < 0 or c.max() >= self.aleph):
            raise ValueError("color out of range")

    @classmethod
    def random(cls, n: int, aleph: int, rng: np.random.Generator) -> "VertexColoring":
        return cls(n, rng.integers(0, aleph, size=n), aleph)


def colorful(mu: VertexColoring, V: Iterable[int]) -> bool:
    V = set(V)
    return len({int(mu.colors[v]) for v in V}) == len(V)
