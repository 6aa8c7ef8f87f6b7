"""Trials, threshold calibration and experiment reports."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import stats

from ..color_coding.estimator import EstimatorConfig, f_bar
from ..errors import DecotreeError, DegenerateCalibration
from ..sbm_model.samplers import sample_correlated, sample_j_sets, sample_null
from ..statistic_core.statistic import f_exact
from ..tree_family.family import Family, build_family
from .config import ExperimentConfig

HYPOTHESES = {"P": 0, "Q": 1}
# calibration draws fresh correlated samples under its own stream
_CALIBRATION = 2
CSV_FIELDS = ("trial_id", "hypothesis", "seed", "value", "status", "wall_time")


def trial_seed(master: int, trial: int, hyp: int) -> int:
    return int(np.random.SeedSequence([master, trial, hyp]).generate_state(1, dtype=np.uint64)[0] >> 1)


@dataclass(frozen=True)
class TrialResult:
    trial_id: int
    hypothesis: str
    seed: int
    value: float
    status: str = "ok"
    wall_time: float | None = None

    def row(self) -> dict:
        return {
            "trial_id": self.trial_id,
            "hypothesis": self.hypothesis,
            "seed": self.seed,
            "value": repr(self.value),
            "status": self.status,
            "wall_time": "" if self.wall_time is None else f"{self.wall_time:.3f}",
        }


def evaluate(cfg: ExperimentConfig, fam: Family, A, B, J_A, J_B, seed: int) -> float:
    if cfg.statistic == "exact":
        return f_exact(A, B, fam, J_A, J_B, cfg.model, cfg.mode)
    est = EstimatorConfig(cfg.estimator.t, seed, cfg.estimator.batch)
    return f_bar(A, B, fam, J_A, J_B, cfg.model, est)


def run_trial(cfg: ExperimentConfig, fam: Family, hypothesis: str, trial: int, timing: bool = False, stream: int | None = None) -> TrialResult:
    """One sampled pair under ``hypothesis`` and its statistic; errors become a failed row."""
    seed = trial_seed(cfg.master_seed, trial, HYPOTHESES[hypothesis] if stream is None else stream)
    start = time.perf_counter()
    try:
        if hypothesis == "P":
            pair = sample_correlated(cfg.model, seed)
        else:
            pair = sample_null(cfg.model, seed)
        J_A, J_B = sample_j_sets(cfg.model, seed)
        value, status = float(evaluate(cfg, fam, pair.A, pair.B, J_A, J_B, seed)), "ok"
    except DecotreeError as e:
        value, status = math.nan, f"failed:{type(e).__name__}"
    wall = time.perf_counter() - start if timing else None
    return TrialResult(trial, hypothesis, seed, value, status, wall)


def _mean_se(values: list[float]) -> tuple[float, float]:
    v = np.array([x for x in values if not math.isnan(x)])
    if len(v) == 0:
        return math.nan, math.nan
    se = float(v.std(ddof=1) / math.sqrt(len(v))) if len(v) > 1 else math.nan
    return float(v.mean()), se


@dataclass(frozen=True)
class Calibration:
    tau: float
    mean: float
    se: float
    values: tuple[float, ...]

    def to_dict(self) -> dict:
        return {"tau": self.tau, "mean": self.mean, "se": self.se, "values": list(self.values)}


def calibrate_threshold(cfg: ExperimentConfig, fam: Family | None = None) -> Calibration:
    """``tau = threshold_c * mean`` of the statistic over ``trials_p`` fresh correlated samples."""
    fam = build_family(cfg.family, cfg.family_seed) if fam is None else fam
    vals = [run_trial(cfg, fam, "P", i, stream=_CALIBRATION).value for i in range(cfg.trials_p)]
    mean, se = _mean_se(vals)
    if not mean > 0:
        raise DegenerateCalibration(f"mean statistic under the correlated law is {mean}, not positive")
    return Calibration(cfg.threshold_c * mean, mean, se, tuple(vals))


def decide(value: float, tau: float) -> str:
    """``"P"`` iff the statistic strictly exceeds the threshold; ties go to the null."""
    return "P" if value > tau else "Q"


@dataclass(frozen=True)
class Report:
    config: dict
    family_hash: str
    rows: tuple[TrialResult, ...]
    summary: dict

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in self.rows:
            w.writerow(r.row())
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "family_hash": self.family_hash,
            "summary": self.summary,
            "trials": [r.row() for r in self.rows],
        }

    def json_text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    def write(self, out_dir: str | Path, stem: str = "experiment") -> tuple[Path, Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        c, j = out / f"{stem}.csv", out / f"{stem}.json"
        c.write_text(self.csv_text())
        j.write_text(self.json_text())
        return c, j


def summarize(rows: list[TrialResult], threshold_c: float) -> dict:
    p_vals = [r.value for r in rows if r.hypothesis == "P" and r.status == "ok"]
    q_vals = [r.value for r in rows if r.hypothesis == "Q" and r.status == "ok"]
    mp, sp = _mean_se(p_vals)
    mq, sq = _mean_se(q_vals)
    out = {
        "n_p": len(p_vals),
        "n_q": len(q_vals),
        "failed": sum(r.status != "ok" for r in rows),
        "mean_p": mp,
        "se_p": sp,
        "mean_q": mq,
        "se_q": sq,
        "welch_t": math.nan,
        "welch_p": math.nan,
        "tau": math.nan,
        "type1": math.nan,
        "type2": math.nan,
    }
    if len(p_vals) > 1 and len(q_vals) > 1:
        res = stats.ttest_ind(p_vals, q_vals, equal_var=False, alternative="greater")
        out["welch_t"], out["welch_p"] = float(res.statistic), float(res.pvalue)
    if p_vals and mp > 0:
        # in-sample calibration: tau scales the correlated-group mean
        tau = threshold_c * mp
        out["tau"] = tau
        out["type2"] = sum(decide(v, tau) == "Q" for v in p_vals) / len(p_vals)
        if q_vals:
            out["type1"] = sum(decide(v, tau) == "P" for v in q_vals) / len(q_vals)
    return {k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in out.items()}


def run_experiment(cfg: ExperimentConfig, timing: bool = False, progress=None) -> Report:
    fam = build_family(cfg.family, cfg.family_seed)
    rows = []
    jobs = [("P", i) for i in range(cfg.trials_p)] + [("Q", i) for i in range(cfg.trials_q)]
    for k, (hyp, i) in enumerate(jobs):
        rows.append(run_trial(cfg, fam, hyp, i, timing))
        if progress is not None:
            progress(k + 1, len(jobs), rows[-1])
    return Report(cfg.to_dict(), fam.digest(), tuple(rows), summarize(rows, cfg.threshold_c))
