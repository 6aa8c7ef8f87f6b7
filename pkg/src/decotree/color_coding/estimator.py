"""The averaged color-coding estimator of the non-backtracking statistic."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ..errors import ConfigError
from ..graph_core.graphs import SimpleGraph
from ..sbm_model.moments import standardize
from ..sbm_model.params import ModelParams, make_rng
from ..statistic_core.statistic import shape_weight
from ..tree_family.family import Family
from .dp import colorful_probability, precompute_nb_sums, x_h_dp_batch

# stream roles for colorings of the two graphs
_SIDE_A, _SIDE_B = 0, 1


def default_t(aleph: int) -> int:
    """``ceil(1 / r) = ceil(aleph^aleph / aleph!)``."""
    return math.ceil(aleph**aleph / math.factorial(aleph))


@dataclass(frozen=True)
class EstimatorConfig:
    t: int | None = None
    seed: int = 0
    # colorings per DP call; memory grows as batch * n^2 when pairs are open
    batch: int = 1

    def __post_init__(self):
        if self.t is not None and self.t < 1:
            raise ConfigError("t must be at least 1")
        if self.batch < 1:
            raise ConfigError("batch must be at least 1")

    def colorings(self, aleph: int) -> int:
        return default_t(aleph) if self.t is None else self.t

    def to_dict(self) -> dict:
        return {"t": self.t, "seed": self.seed, "batch": self.batch}

    @classmethod
    def from_dict(cls, d: dict) -> "EstimatorConfig":
        extra = set(d) - {"t", "seed", "batch"}
        if extra:
            raise ConfigError(f"unknown estimator fields: {sorted(extra)}")
        return cls(**d)


def draw_colorings(n: int, aleph: int, t: int, seed: int, side: int) -> np.ndarray:
    """``t`` uniform ``aleph``-colorings of ``[n]`` as rows, shared by every shape of that size."""
    return make_rng(seed, side, aleph).integers(0, aleph, size=(t, n))


def _side_values(host, fam: Family, J: set[int], cfg: EstimatorConfig, side: int) -> list[np.ndarray]:
    n = host.n
    L_cache: dict[int, np.ndarray] = {}
    col_cache: dict[int, np.ndarray] = {}
    out = []
    for shape in fam.shapes:
        L = None
        if shape.num_pairs:
            if shape.path_len not in L_cache:
                L_cache[shape.path_len] = precompute_nb_sums(host, J, shape.path_len)
            L = L_cache[shape.path_len]
        if shape.aleph not in col_cache:
            col_cache[shape.aleph] = draw_colorings(n, shape.aleph, cfg.colorings(shape.aleph), cfg.seed, side)
        colors = col_cache[shape.aleph]
        vals = [x_h_dp_batch(host, colors[i : i + cfg.batch], shape, J, L) for i in range(0, len(colors), cfg.batch)]
        out.append(np.concatenate(vals))
    return out


def coloring_values(
    A: SimpleGraph, B: SimpleGraph, fam: Family, J_A: Iterable[int], J_B: Iterable[int], p: ModelParams, cfg: EstimatorConfig
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Per-shape arrays of ``X_H`` over the colorings of each centered graph."""
    hA = standardize(A, p, center_only=True)
    hB = standardize(B, p, center_only=True)
    return _side_values(hA, fam, set(J_A), cfg, _SIDE_A), _side_values(hB, fam, set(J_B), cfg, _SIDE_B)


def f_bar(
    A: SimpleGraph, B: SimpleGraph, fam: Family, J_A: Iterable[int], J_B: Iterable[int], p: ModelParams, cfg: EstimatorConfig
) -> float:
    """``(1/r^2) sum_H weight(H) * mean_i X_H(A, mu_i) * mean_j X_H(B, nu_j)``.

    X is computed on the plainly centered graphs; each mean is divided by
    ``d^(aleph - 1 + l p)`` so the result estimates the standardized statistic.
    """
    if not len(fam):
        return 0.0
    xa, xb = coloring_values(A, B, fam, J_A, J_B, p, cfg)
    terms = []
    for shape, va, vb in zip(fam.shapes, xa, xb):
        r = colorful_probability(shape.aleph)
        scale = p.d ** (shape.num_edges)
        terms.append(shape_weight(shape, p) * (va.mean() / (r * scale)) * (vb.mean() / (r * scale)))
    return math.fsum(terms)
