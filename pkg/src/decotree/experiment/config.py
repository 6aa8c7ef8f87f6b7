"""Experiment configuration and its TOML form."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..color_coding.estimator import EstimatorConfig
from ..errors import ConfigError
from ..sbm_model.params import ModelParams
from ..tree_family.config import FamilyConfig

STATISTICS = ("color", "exact")
MODES = ("saw", "nb")


@dataclass(frozen=True)
class ExperimentConfig:
    model: ModelParams
    family: FamilyConfig
    estimator: EstimatorConfig = field(default_factory=EstimatorConfig)
    trials_p: int = 1
    trials_q: int = 1
    threshold_c: float = 0.5
    master_seed: int = 0
    family_seed: int = 0
    # "color" runs the color-coding estimator, "exact" the brute-force statistic
    statistic: str = "color"
    mode: str = "nb"

    def __post_init__(self):
        if self.trials_p < 1 or self.trials_q < 1:
            raise ConfigError("trials must be at least 1")
        if not (0.0 < self.threshold_c < 1.0):
            raise ConfigError("threshold_c must lie in (0, 1)")
        if self.statistic not in STATISTICS:
            raise ConfigError(f"statistic must be one of {STATISTICS}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")

    def with_(self, **kw) -> "ExperimentConfig":
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d.update(kw)
        return ExperimentConfig(**d)

    def to_dict(self) -> dict[str, Any]:
        return {
            "model": self.model.to_dict(),
            "family": self.family.to_dict(),
            "estimator": self.estimator.to_dict(),
            "experiment": {
                "trials_p": self.trials_p,
                "trials_q": self.trials_q,
                "threshold_c": self.threshold_c,
                "master_seed": self.master_seed,
                "family_seed": self.family_seed,
                "statistic": self.statistic,
                "mode": self.mode,
            },
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "ExperimentConfig":
        extra = set(d) - {"model", "family", "estimator", "experiment"}
        if extra:
            raise ConfigError(f"unknown config sections: {sorted(extra)}")
        if "model" not in d or "family" not in d:
            raise ConfigError("config needs [model] and [family] sections")
        exp = dict(d.get("experiment", {}))
        known = {"trials_p", "trials_q", "threshold_c", "master_seed", "family_seed", "statistic", "mode"}
        if set(exp) - known:
            raise ConfigError(f"unknown experiment fields: {sorted(set(exp) - known)}")
        est = {k: v for k, v in dict(d.get("estimator", {})).items()}
        try:
            return cls(
                model=ModelParams.from_dict(d["model"]),
                family=FamilyConfig.from_dict(d["family"]),
                estimator=EstimatorConfig.from_dict(est),
                **exp,
            )
        except TypeError as e:
            raise ConfigError(str(e)) from e

    @classmethod
    def from_toml(cls, path: str | Path) -> "ExperimentConfig":
        try:
            with open(path, "rb") as fh:
                data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"{path}: {e}") from e
        except OSError as e:
            raise ConfigError(f"cannot read {path}: {e}") from e
        return cls.from_dict(data)
