"""The exact decorated-tree statistic by brute-force embedding sums."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from ..graph_core.graphs import SimpleGraph
from ..sbm_model.moments import standardize
from ..sbm_model.params import ModelParams
from ..tree_family.family import DecoratedTreeShape, Family
from .embeddings import DEFAULT_BUDGET, Mode, embedding_sum


def shape_weight(shape: DecoratedTreeShape, p: ModelParams) -> float:
    """``s^(aleph-1) * Aut(T) * (eps^2 lam s)^(l p) / n^(aleph + l p)``, accumulated in logs."""
    k = shape.aleph
    lp = shape.path_len * shape.num_pairs
    if (p.s == 0 and k > 1) or (p.signal == 0 and lp > 0):
        return 0.0
    log_w = math.log(shape.free_aut) - (k + lp) * math.log(p.n)
    if k > 1:
        log_w += (k - 1) * math.log(p.s)
    if lp:
        log_w += lp * math.log(p.signal)
    return math.exp(log_w)


@dataclass(frozen=True)
class ShapeTerm:
    tree_code: str
    pairing_id: int
    sumA: float
    sumB: float
    weight: float

    @property
    def value(self) -> float:
        return self.weight * self.sumA * self.sumB


@dataclass(frozen=True)
class StatisticReport:
    mode: str
    family_hash: str
    value: float
    per_shape: tuple[ShapeTerm, ...]

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "family_hash": self.family_hash,
            "value": self.value,
            "per_shape": [
                {"tree_code": t.tree_code, "pairing_id": t.pairing_id, "sumA": t.sumA, "sumB": t.sumB, "weight": t.weight}
                for t in self.per_shape
            ],
        }


def _pairing_ids(fam: Family) -> list[int]:
    seen: dict[str, int] = {}
    ids = []
    for s in fam.shapes:
        ids.append(seen.get(s.tree.code, 0))
        seen[s.tree.code] = ids[-1] + 1
    return ids


def f_exact_report(
    A: SimpleGraph,
    B: SimpleGraph,
    fam: Family,
    J_A: Iterable[int],
    J_B: Iterable[int],
    p: ModelParams,
    mode: Mode = "saw",
    budget: int = DEFAULT_BUDGET,
) -> StatisticReport:
    J_A, J_B = set(J_A), set(J_B)
    XA = standardize(A, p).to_graph()
    XB = standardize(B, p).to_graph()
    terms = []
    for shape, pid in zip(fam.shapes, _pairing_ids(fam)):
        sa = embedding_sum(XA, shape, J_A, mode, budget=budget)
        sb = embedding_sum(XB, shape, J_B, mode, budget=budget)
        terms.append(ShapeTerm(shape.tree.code, pid, sa, sb, shape_weight(shape, p)))
    value = math.fsum(t.value for t in terms)
    return StatisticReport(mode, fam.digest(), value, tuple(terms))


def f_exact(
    A: SimpleGraph,
    B: SimpleGraph,
    fam: Family,
    J_A: Iterable[int],
    J_B: Iterable[int],
    p: ModelParams,
    mode: Mode = "saw",
    budget: int = DEFAULT_BUDGET,
) -> float:
    return f_exact_report(A, B, fam, J_A, J_B, p, mode, budget).value
