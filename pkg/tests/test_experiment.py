import json
import math
from pathlib import Path

import pytest

from decotree.errors import ConfigError, DegenerateCalibration
from decotree.experiment import ExperimentConfig, run_experiment
from decotree.experiment.cli import main
from decotree.experiment.runner import TrialResult, calibrate_threshold, decide, summarize, trial_seed

PROFILES = Path(__file__).resolve().parents[1] / "src" / "decotree" / "profiles"


@pytest.fixture
def small():
    return ExperimentConfig.from_toml(PROFILES / "small.toml")


def test_profiles_load():
    for name in ("small.toml", "favorable.toml"):
        cfg = ExperimentConfig.from_toml(PROFILES / name)
        assert ExperimentConfig.from_dict(cfg.to_dict()) == cfg


def test_bad_config(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("[model\nn = 3")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_toml(bad)
    with pytest.raises(ConfigError):
        ExperimentConfig.from_toml(tmp_path / "missing.toml")


def test_config_validation(small):
    with pytest.raises(ConfigError):
        small.with_(trials_p=0)
    with pytest.raises(ConfigError):
        small.with_(threshold_c=1.0)
    with pytest.raises(ConfigError):
        small.with_(statistic="other")


def test_trial_seeds_distinct():
    seeds = {trial_seed(0, t, h) for t in range(50) for h in (0, 1)}
    assert len(seeds) == 100


def test_decide_ties_go_to_null():
    assert decide(1.0, 1.0) == "Q"
    assert decide(1.0 + 1e-12, 1.0) == "P"


def test_summarize():
    rows = [TrialResult(i, "P", 0, v) for i, v in enumerate([3.0, 4.0, 5.0])]
    rows += [TrialResult(i, "Q", 0, v) for i, v in enumerate([0.0, 1.0, -1.0])]
    rows.append(TrialResult(3, "Q", 0, math.nan, "failed:BudgetExceeded"))
    s = summarize(rows, 0.5)
    assert s["n_p"] == 3 and s["n_q"] == 3 and s["failed"] == 1
    assert s["tau"] == 2.0 and s["type1"] == 0.0 and s["type2"] == 0.0
    assert s["welch_p"] < 0.05


def test_experiment_reproducible(small, tmp_path):
    a = run_experiment(small)
    b = run_experiment(small)
    assert a.csv_text() == b.csv_text() and a.json_text() == b.json_text()
    csv_path, json_path = a.write(tmp_path)
    assert json.loads(json_path.read_text())["summary"] == json.loads(a.json_text())["summary"]
    assert len(csv_path.read_text().splitlines()) == 1 + small.trials_p + small.trials_q


def test_calibration(small):
    try:
        cal = calibrate_threshold(small)
    except DegenerateCalibration:
        return
    assert math.isclose(cal.tau, small.threshold_c * cal.mean)


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text("not toml [")
    assert main(["experiment", "--config", str(bad), "--out", str(tmp_path / "o")]) == 2
    assert main(["trees", "count", "7", "--out", str(tmp_path / "c.json")]) == 0
    assert json.loads((tmp_path / "c.json").read_text())
