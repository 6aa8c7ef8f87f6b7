from .config import ExperimentConfig
from .runner import (
    Calibration,
    Report,
    TrialResult,
    calibrate_threshold,
    decide,
    run_experiment,
    run_trial,
    summarize,
    trial_seed,
)

__all__ = [
    "Calibration",
    "ExperimentConfig",
    "Report",
    "TrialResult",
    "calibrate_threshold",
    "decide",
    "run_experiment",
    "run_trial",
    "summarize",
    "trial_seed",
]
