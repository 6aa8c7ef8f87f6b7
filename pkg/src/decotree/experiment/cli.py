"""Command-line entry point: ``decotree <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ..color_coding.estimator import EstimatorConfig, f_bar
from ..errors import BudgetError, ConfigError, DecotreeError
from ..graph_core.graphs import SimpleGraph
from ..graph_core.trees import tree_from_code
from ..sbm_model.params import ModelParams
from ..sbm_model.samplers import pair_to_json, sample_correlated, sample_j_sets, sample_null, save_pair
from ..statistic_core.statistic import f_exact_report
from ..tree_family.enumeration import count_free_trees, count_rooted_trees, enumerate_free_trees
from ..tree_family.family import build_family
from ..tree_family.structure import check_admissible
from .config import ExperimentConfig
from .runner import calibrate_threshold, run_experiment

log = logging.getLogger("decotree")

EXIT_OK, EXIT_CONFIG, EXIT_BUDGET = 0, 2, 3


def _dump(obj, out: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=1) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_config(args) -> ExperimentConfig:
    cfg = ExperimentConfig.from_toml(args.config)
    if getattr(args, "seed", None) is not None:
        cfg = cfg.with_(master_seed=args.seed)
    return cfg


def cmd_sample(args) -> int:
    cfg = _load_config(args)
    seed = cfg.master_seed
    J_A, J_B = sample_j_sets(cfg.model, seed)
    latent: dict = {"J_A": sorted(J_A), "J_B": sorted(J_B)}
    if args.null:
        pair = sample_null(cfg.model, seed)
        if args.reveal_latent:
            latent.update(sigmaA=pair.sigmaA, sigmaB=pair.sigmaB)
    else:
        pair = sample_correlated(cfg.model, seed)
        if args.reveal_latent:
            latent.update(sigmaA=pair.sigma, pi=pair.pi)
    obj = pair_to_json(cfg.model, seed, pair.A, pair.B, latent)
    obj["hypothesis"] = "Q" if args.null else "P"
    save_pair(args.out, obj)
    return EXIT_OK


def cmd_trees(args) -> int:
    if args.action == "count":
        rows = [
            {"N": N, "free": count_free_trees(N), "rooted": count_rooted_trees(N, args.degree_bound)}
            for N in range(1, args.N + 1)
        ]
        _dump(rows, args.out)
    elif args.action == "list":
        _dump([{"code": t.code, "aut": t.aut} for t in enumerate_free_trees(args.N)], args.out)
    elif args.action == "check":
        cfg = _load_config(args)
        _dump(check_admissible(tree_from_code(args.code), cfg.family).to_dict(), args.out)
    else:
        cfg = _load_config(args)
        fam = build_family(cfg.family, cfg.family_seed)
        obj = fam.to_json()
        obj["digest"] = fam.digest()
        _dump(obj, args.out)
    return EXIT_OK


def _read_pair(path: str):
    obj = json.loads(Path(path).read_text())
    params = ModelParams.from_dict(obj["params"])
    A = SimpleGraph.from_edges(params.n, obj["A"])
    B = SimpleGraph.from_edges(params.n, obj["B"])
    return params, int(obj["seed"]), A, B, set(obj.get("J_A", [])), set(obj.get("J_B", []))


def cmd_stat(args) -> int:
    cfg = _load_config(args)
    params, seed, A, B, J_A, J_B = _read_pair(args.pair)
    fam = build_family(cfg.family, cfg.family_seed)
    if args.method == "exact":
        obj = f_exact_report(A, B, fam, J_A, J_B, params, args.mode).to_json()
    else:
        est = EstimatorConfig(cfg.estimator.t, cfg.master_seed, cfg.estimator.batch)
        obj = {"mode": "color", "family_hash": fam.digest(), "value": f_bar(A, B, fam, J_A, J_B, params, est)}
    _dump(obj, args.out)
    return EXIT_OK


def cmd_calibrate(args) -> int:
    cfg = _load_config(args)
    cal = calibrate_threshold(cfg)
    obj = cal.to_dict()
    obj["threshold_c"] = cfg.threshold_c
    _dump(obj, args.out)
    return EXIT_OK


def cmd_experiment(args) -> int:
    cfg = _load_config(args)

    def progress(k, total, row):
        log.info("trial %d/%d %s value=%s status=%s", k, total, row.hypothesis, row.value, row.status)

    report = run_experiment(cfg, timing=args.timing, progress=progress)
    c, j = report.write(args.out)
    s = report.summary
    print(f"mean_p={s['mean_p']} mean_q={s['mean_q']} welch_t={s['welch_t']} welch_p={s['welch_p']}")
    print(f"wrote {c} and {j}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="decotree", description="Decorated-tree statistics for correlated SBM detection.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, out_required=False):
        p.add_argument("--config", required=True, help="TOML config file")
        p.add_argument("--seed", type=int, default=None, help="override the master seed")
        p.add_argument("--out", required=out_required, default=None)

    p = sub.add_parser("sample", help="sample a graph pair to JSON")
    common(p, out_required=True)
    p.add_argument("--null", action="store_true", help="sample the independent null pair")
    p.add_argument("--reveal-latent", action="store_true", help="include labels and permutation")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("trees", help="tree counts, listings, admissibility and families")
    tsub = p.add_subparsers(dest="action", required=True)
    q = tsub.add_parser("count")
    q.add_argument("N", type=int)
    q.add_argument("--degree-bound", type=int, default=None)
    q.add_argument("--out", default=None)
    q = tsub.add_parser("list")
    q.add_argument("N", type=int)
    q.add_argument("--out", default=None)
    q = tsub.add_parser("check")
    q.add_argument("code")
    common(q)
    q = tsub.add_parser("family")
    common(q)
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("stat", help="evaluate the statistic on a pair file")
    common(p)
    p.add_argument("--pair", required=True)
    p.add_argument("--method", choices=("exact", "color"), default="exact")
    p.add_argument("--mode", choices=("saw", "nb"), default="saw")
    p.set_defaults(func=cmd_stat)

    p = sub.add_parser("calibrate", help="threshold from fresh correlated samples")
    common(p)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("experiment", help="run P and Q trials and write CSV/JSON")
    common(p, out_required=True)
    p.add_argument("--timing", action="store_true", help="record wall times (breaks byte-identical reruns)")
    p.set_defaults(func=cmd_experiment)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except DecotreeError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
