"""Command-line interface: validate, run, compare.

Exit codes: 0 success, 1 configuration error, 2 simulation divergence.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ScenarioConfig, load_config, validate_config
from .errors import ConfigError, DivergenceError
from .optimize import iterated_best_response
from .output import (build_summary, effective_floor_summary, regime_totals,
                     write_compare_csv, write_floors_csv, write_summary_json,
                     write_trajectory_csv)
from .world import run_simulation

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DIVERGENCE = 2


def execute_run(cfg: ScenarioConfig, out_dir: Path) -> dict:
    """Optimize policies, simulate the converged profile, write artifacts.

    Produces trajectory.csv, floors.csv and summary.json in ``out_dir``
    and returns the summary dict.
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    scn = cfg.compile()
    profile, rounds, converged = iterated_best_response(scn, cfg.optimizer)
    s_sched, mu_sched = profile.schedules(scn.horizon)
    result = run_simulation(scn, s_sched, mu_sched, record=True)
    base = scn.base_floors.as_array()
    effective = effective_floor_summary(result.record, base)
    write_trajectory_csv(result.record, out_dir / "trajectory.csv")
    write_floors_csv(scn.table.ids, base, effective, out_dir / "floors.csv")
    summary = build_summary(scn.table.ids, result, rounds, converged)
    write_summary_json(summary, out_dir / "summary.json")
    return summary


def execute_compare(cfg: ScenarioConfig, regimes: list[str], out_dir: Path) -> Path:
    """Run each regime on the same scenario and emit compare.csv.

    Per-regime artifacts land in ``out_dir/<regime>/``; deltas are taken
    against the first regime listed.
    """
    if len(regimes) < 2:
        raise ConfigError(["regimes: at least two regimes are required for compare"])
    out_dir.mkdir(parents=True, exist_ok=True)
    totals = {}
    returns_by_regime = {}
    region_ids = None
    for regime in regimes:
        custom = cfg.custom_floors if regime == "custom" else None
        regime_cfg = validate_config(cfg.with_regime(regime, custom))
        scn = regime_cfg.compile()
        profile, rounds, converged = iterated_best_response(scn, regime_cfg.optimizer)
        s_sched, mu_sched = profile.schedules(scn.horizon)
        result = run_simulation(scn, s_sched, mu_sched, record=True)
        sub = out_dir / regime
        sub.mkdir(parents=True, exist_ok=True)
        base = scn.base_floors.as_array()
        write_trajectory_csv(result.record, sub / "trajectory.csv")
        write_floors_csv(scn.table.ids, base,
                         effective_floor_summary(result.record, base),
                         sub / "floors.csv")
        write_summary_json(build_summary(scn.table.ids, result, rounds, converged),
                           sub / "summary.json")
        totals[regime] = regime_totals(base, result)
        returns_by_regime[regime] = result.returns
        region_ids = scn.table.ids
    compare_path = out_dir / "compare.csv"
    write_compare_csv(region_ids, regimes, totals, returns_by_regime, compare_path)
    return compare_path


def _cmd_validate(args) -> int:
    cfg = load_config(args.config)
    print(f"OK: {args.config} is a valid scenario "
          f"({len(cfg.regions)} regions, horizon {cfg.horizon}, "
          f"regime {cfg.floor_regime})")
    return EXIT_OK


def _cmd_run(args) -> int:
    cfg = load_config(args.config)
    summary = execute_run(cfg, Path(args.out))
    print(f"run complete: horizon {cfg.horizon}, "
          f"converged={summary['converged']} in {summary['roundsUsed']} rounds, "
          f"finalTAT={summary['finalTAT']:.4f}, outputs in {args.out}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    cfg = load_config(args.config)
    regimes = [r.strip() for r in args.regimes.split(",") if r.strip()]
    path = execute_compare(cfg, regimes, Path(args.out))
    print(f"compare complete: regimes {', '.join(regimes)}, report at {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="climneg",
        description="Deterministic multi-region climate-economy negotiation simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check a scenario file and report every violation")
    v.add_argument("--config", required=True, help="path to the scenario JSON")
    v.set_defaults(func=_cmd_validate)

    r = sub.add_parser("run", help="optimize policies and simulate one scenario")
    r.add_argument("--config", required=True, help="path to the scenario JSON")
    r.add_argument("--out", required=True, help="directory for output artifacts")
    r.set_defaults(func=_cmd_run)

    c = sub.add_parser("compare", help="run several floor regimes on one scenario")
    c.add_argument("--config", required=True, help="path to the scenario JSON")
    c.add_argument("--regimes", required=True,
                   help="comma-separated regimes, e.g. uniform,dynamic")
    c.add_argument("--out", required=True, help="directory for output artifacts")
    c.set_defaults(func=_cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print("configuration error:", file=sys.stderr)
        for line in exc.violations:
            print(f"  {line}", file=sys.stderr)
        return EXIT_CONFIG
    except DivergenceError as exc:
        print(f"simulation diverged: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
