from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from typing import Any, Mapping

import numpy as np

from ..errors import ConfigError, RateOutOfRange


@dataclass(frozen=True)
class ModelParams:
    n: int
    lam: float
    eps: float
    s: float
    j_frac: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError("n must be positive")
        if self.lam < 0:
            raise ConfigError("lambda must be non-negative")
        if not (0.0 <= self.eps < 1.0):
            raise ConfigError("eps must lie in [0, 1)")
        if not (0.0 <= self.s <= 1.0):
            raise ConfigError("s must lie in [0, 1]")
        if not (0.0 <= self.j_frac <= 1.0):
            raise ConfigError("j_frac must lie in [0, 1]")
        if (1 + self.eps) * self.lam / self.n > 1:
            raise RateOutOfRange(f"(1 + eps) * lambda / n = {(1 + self.eps) * self.lam / self.n} exceeds 1")
        if self.q >= 1:
            raise ConfigError("lambda * s / n must be below 1")

    @property
    def q(self) -> float:
        """Marginal edge density ``lambda * s / n`` of each observed graph."""
        return self.lam * self.s / self.n

    @property
    def d(self) -> float:
        """Standardization denominator ``sqrt(q (1 - q))``."""
        return math.sqrt(self.q * (1 - self.q))

    @property
    def j_size(self) -> int:
        return math.floor(self.j_frac * self.n)

    @property
    def signal(self) -> float:
        """``eps^2 * lambda * s``."""
        return self.eps**2 * self.lam * self.s

    def rate(self, g: int, lam: float | None = None) -> float:
        lam = self.lam if lam is None else lam
        return (1 + g * self.eps) * lam / self.n

    def with_(self, **kw) -> "ModelParams":
        return ModelParams(**{**asdict(self), **kw})

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "ModelParams":
        d = dict(d)
        if "lambda" in d:
            d["lam"] = d.pop("lambda")
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown model fields: {sorted(extra)}")
        return cls(**d)


def make_rng(*keys: int) -> np.random.Generator:
    """Counter-based stream keyed by ``keys`` (e.g. master seed, trial index, role)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(k) for k in keys])))
