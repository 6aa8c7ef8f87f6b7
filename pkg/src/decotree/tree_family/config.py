"""Finite-scale thresholds for tree admissibility and pairing selection."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from typing import Any, Mapping

from ..errors import ConfigError


@dataclass(frozen=True)
class FamilyConfig:
    """Every threshold is explicit; ``asymptotic`` documents the original formulas.

    Constants that only appear in asymptotic statements (the degree and
    growth constants, the parameter ``M >= 100``, and the runtime exponent)
    have no runtime role and are not housed here.
    """

    aleph: int
    num_pairs: int = 1
    num_pairings: int = 1
    path_len: int = 2
    max_degree: int = 4
    max_armpath: int = 3
    tiota_min_frac: float = 0.0
    tiota_threshold: int = 2
    sim_k_frac: float = 0.5
    sim_len: int = 2
    pair_dist_lo: int = 1
    pair_dist_hi: int = 3
    cross_pair_dist: int = 4
    symdiff_min: int = 1
    # bound for the per-subtree pairing density; None reuses sim_k_frac
    intersect_frac: float | None = None
    sim_budget: int = 10**6
    # the root's two child trees must not be similar to each other's descendant trees;
    # switching this off keeps only the size split, which small trees cannot otherwise pass
    root_similarity: bool = True

    def __post_init__(self):
        if self.aleph < 3:
            raise ConfigError("aleph must be at least 3")
        if self.num_pairs < 1 or 2 * self.num_pairs > self.aleph - 1:
            raise ConfigError("need 1 <= num_pairs and 2 * num_pairs <= aleph - 1")
        if self.num_pairings < 1:
            raise ConfigError("num_pairings must be positive")
        if self.path_len < 2:
            raise ConfigError("path_len must be at least 2")
        if not (self.pair_dist_lo <= self.pair_dist_hi < self.cross_pair_dist):
            raise ConfigError("need pair_dist_lo <= pair_dist_hi < cross_pair_dist")
        if self.pair_dist_lo < 1:
            raise ConfigError("pair_dist_lo must be at least 1")
        if self.sim_k_frac < 0 or self.sim_len < 0 or self.tiota_min_frac < 0:
            raise ConfigError("similarity and major-subtree thresholds must be non-negative")
        if self.sim_budget < 1:
            raise ConfigError("sim_budget must be positive")

    @property
    def density_frac(self) -> float:
        return self.sim_k_frac if self.intersect_frac is None else self.intersect_frac

    @classmethod
    def asymptotic(cls, aleph: int, iota: float, path_len: int, **overrides) -> "FamilyConfig":
        """Thresholds from the asymptotic formulas in ``iota``.

        These are rarely satisfiable for any tree small enough to enumerate;
        the helper exists so the formulas live in one place.
        """
        li = math.log(1.0 / iota)
        lli = math.log(li)
        base = dict(
            aleph=aleph,
            num_pairs=max(1, round(iota * aleph)),
            num_pairings=max(1, math.floor(math.exp(iota * lli**4 * aleph))),
            path_len=path_len,
            max_degree=math.floor(li**2),
            max_armpath=math.ceil(li**2),
            tiota_min_frac=1.0 / li**4,
            tiota_threshold=math.ceil(li**2),
            sim_k_frac=1.0 / li,
            sim_len=math.floor(li**2),
            pair_dist_lo=math.ceil(lli**10),
            pair_dist_hi=math.floor(2 * lli**10),
            cross_pair_dist=math.ceil(10 * lli**10),
            symdiff_min=math.ceil(iota * aleph / 2),
        )
        base.update(overrides)
        return cls(**base)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "FamilyConfig":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown family fields: {sorted(extra)}")
        return cls(**d)
