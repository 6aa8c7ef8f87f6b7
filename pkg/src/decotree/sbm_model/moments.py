"""Exact conditional edge moments and standardized hosts."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from ..graph_core.graphs import SimpleGraph
from ..graph_core.hosts import TwoLevelHost
from .params import ModelParams


@dataclass(frozen=True)
class EdgeMoment:
    """``E[a^r b^t | sigma_i sigma_j = g] = u + v * g`` for standardized entries ``a, b``."""

    u: float
    v: float
    r: int
    t: int

    def given(self, g: int) -> float:
        return self.u + self.v * g


def joint_edge_law(g: int, p: ModelParams, correlated: bool) -> dict[tuple[int, int], float]:
    """Law of ``(A_e, B_e)`` given the label product ``g`` on the edge."""
    pg = p.rate(g)
    s = p.s
    if correlated:
        law = {(1, 1): pg * s * s, (1, 0): pg * s * (1 - s), (0, 1): pg * s * (1 - s)}
    else:
        m = pg * s
        law = {(1, 1): m * m, (1, 0): m * (1 - m), (0, 1): (1 - m) * m}
    law[(0, 0)] = 1.0 - sum(law.values())
    return law


def standardized_values(p: ModelParams) -> tuple[float, float]:
    """Standardized entry for a present and for an absent pair."""
    return (1 - p.q) / p.d, -p.q / p.d


def exact_edge_moments(r: int, t: int, p: ModelParams, correlated: bool = True) -> EdgeMoment:
    if r < 0 or t < 0 or r + t < 1:
        raise ValueError("need r, t >= 0 with r + t >= 1")
    vals = standardized_values(p)
    cond = {}
    for g in (+1, -1):
        law = joint_edge_law(g, p, correlated)
        cond[g] = sum(prob * vals[1 - a] ** r * vals[1 - b] ** t for (a, b), prob in law.items())
    return EdgeMoment((cond[1] + cond[-1]) / 2, (cond[1] - cond[-1]) / 2, r, t)


def chain_expectation(a: list[float], b: list[float], sigma_ends: int) -> float:
    """``E[prod(a_i + b_i s_{i-1} s_i) | s_0 s_l = sigma_ends]`` by summing interior labels.

    Interior labels are uniform and independent. This is the enumeration
    side of the chain identity ``prod(a) + s_0 s_l * prod(b)``.
    """
    length = len(a)
    if length != len(b) or length == 0:
        raise ValueError("need equal non-empty coefficient lists")
    total = 0
    for interior in product((1, -1), repeat=length - 1):
        labels = (1,) + interior + (sigma_ends,)
        term = 1
        for i in range(length):
            term *= a[i] + b[i] * labels[i] * labels[i + 1]
        total += term
    # Fraction inputs stay exact
    if isinstance(total, int):
        return total / 2 ** (length - 1)
    return total / (2 ** (length - 1))


def standardize(g: SimpleGraph, p: ModelParams, center_only: bool = False) -> TwoLevelHost:
    """Lazy standardized adjacency over all pairs of ``[n]``.

    By default entries are ``(X - q) / d``; ``center_only`` gives the plain
    centering ``X - q`` used by the color-coding estimator.
    """
    if center_only:
        return TwoLevelHost.from_graph(g, 1 - p.q, -p.q)
    on, off = standardized_values(p)
    return TwoLevelHost.from_graph(g, on, off)


def standardized_dense(g: SimpleGraph, p: ModelParams) -> np.ndarray:
    return standardize(g, p).dense()
