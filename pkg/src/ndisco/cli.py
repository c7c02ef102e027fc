"""Command-line front door.

Subcommands: generate, verify, optimize, export-lp, simulate, paper-check.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from .core import (
    BeaconPeriodSet,
    ChannelSet,
    Schedule,
    channel_switch_count,
    discovery_times,
    normalize_bp_set,
)
from .oracle import is_recursive, is_wdt_optimal
from .optimal import build_mdtopt, export_lp, solve_exact
from .schedulers import STRATEGIES
from . import checks, sim


def _parse_bps(text: str, no_normalize: bool) -> BeaconPeriodSet:
    periods = [int(tok) for tok in text.split(",") if tok.strip()]
    bps = BeaconPeriodSet.of(periods)
    if bps.gcd > 1 and not no_normalize:
        reduced = normalize_bp_set(bps)
        print(
            f"note: periods share gcd {bps.gcd}; using reduced set "
            f"{list(reduced.periods)} (pass --no-normalize to keep {list(bps.periods)})",
            file=sys.stderr,
        )
        return reduced
    return bps


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bps", required=True, help="comma-separated beacon periods, e.g. 1,2,4")
    p.add_argument("--channels", required=True, type=int, help="number of channels")
    p.add_argument(
        "--no-normalize",
        action="store_true",
        help="keep the period set as given instead of dividing by its gcd",
    )


def _cmd_generate(args: argparse.Namespace) -> int:
    bps = _parse_bps(args.bps, args.no_normalize)
    channels = ChannelSet(args.channels)
    schedule = STRATEGIES[args.strategy](bps, channels)
    text = schedule.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    report = discovery_times(schedule, bps, channels)
    mdt = f"{float(report.mdt):.12f}" if report.mdt is not None else "undefined"
    print(f"wdt = {report.wdt}, mdt = {mdt}, switches = {channel_switch_count(schedule)}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    bps = _parse_bps(args.bps, args.no_normalize)
    channels = ChannelSet(args.channels)
    if args.schedule == "-":
        text = sys.stdin.read()
    else:
        with open(args.schedule) as fh:
            text = fh.read()
    schedule = Schedule.from_json(text)
    report = discovery_times(schedule, bps, channels)
    verdict = {
        "complete": report.complete,
        "recursive": is_recursive(schedule, bps, channels),
        "wdt_optimal": is_wdt_optimal(schedule, bps, channels),
        "wdt": report.wdt,
        "mdt": float(report.mdt) if report.mdt is not None else None,
    }
    print(json.dumps(verdict))
    return 0


def _cmd_optimize(args: argparse.Namespace) -> int:
    bps = _parse_bps(args.bps, args.no_normalize)
    channels = ChannelSet(args.channels)
    model = build_mdtopt(bps, channels, t_max=args.t_max)
    result = solve_exact(model, node_limit=args.node_limit)
    out = {
        "objective": float(result.objective) if result.objective is not None else None,
        "objective_exact": str(result.objective) if result.objective is not None else None,
        "status": result.status,
        "nodes": result.nodes,
        "schedule": json.loads(result.schedule.to_json()) if result.schedule else None,
    }
    print(json.dumps(out))
    return 0


def _cmd_export_lp(args: argparse.Namespace) -> int:
    bps = _parse_bps(args.bps, args.no_normalize)
    channels = ChannelSet(args.channels)
    model = build_mdtopt(bps, channels, t_max=args.t_max)
    if args.out:
        export_lp(model, args.out)
    else:
        export_lp(model, sys.stdout)
    return 0


def _load_scenarios(path: str) -> list[tuple[sim.Scenario, list[str]]]:
    with open(path) as fh:
        raw = json.load(fh)
    entries = raw if isinstance(raw, list) else [raw]
    seed_override = os.environ.get("NDISCO_SEED")
    grid = []
    for idx, obj in enumerate(entries):
        seed = int(seed_override) if seed_override is not None else int(obj["seed"])
        scenario = sim.Scenario(
            bps=BeaconPeriodSet.of(obj["bps"]),
            channels=ChannelSet(int(obj["channels"])),
            neighbor_count=int(obj["neighbors"]),
            deaf_fraction=float(obj["deaf_fraction"]),
            trials=int(obj["trials"]),
            seed=seed,
            scenario_id=str(obj.get("scenario_id", f"scenario{idx}")),
        )
        grid.append((scenario, list(obj["strategies"])))
    return grid


def _cmd_simulate(args: argparse.Namespace) -> int:
    grid = _load_scenarios(args.scenario)
    metrics, curves = sim.evaluate(grid, normalize_ilp=args.normalize_ilp)
    sim.write_metrics_csv(metrics, args.metrics_out)
    sim.write_curves_csv(curves, args.curves_out)
    print(f"wrote {len(metrics)} metric rows to {args.metrics_out}")
    print(f"wrote {len(curves)} curve rows to {args.curves_out}")
    return 0


def _cmd_paper_check(args: argparse.Namespace) -> int:
    results = checks.run_checks(args.only or None)
    width = max(len(r.name) for r in results)
    failures = 0
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        line = f"[{mark}] {r.name.ljust(width)}  expected: {r.expected}"
        if not r.passed:
            line += f"  actual: {r.actual}"
            failures += 1
        print(line)
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 0 if failures == 0 else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ndisco",
        description="Construct, verify, optimize, and simulate passive "
        "multi-channel neighbor-discovery listening schedules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="construct a listening schedule")
    _add_instance_args(p)
    p.add_argument("--strategy", required=True, choices=sorted(STRATEGIES))
    p.add_argument("--out", help="also write the schedule JSON to this file")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("verify", help="check a schedule against an instance")
    _add_instance_args(p)
    p.add_argument("--schedule", required=True, help="schedule JSON file, or - for stdin")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("optimize", help="solve for an MDT-optimal schedule")
    _add_instance_args(p)
    p.add_argument("--t-max", type=int, default=None, help="horizon override (last slot index)")
    p.add_argument("--node-limit", type=int, default=0, help="search node budget, 0 = unlimited")
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("export-lp", help="write the optimization model in LP format")
    _add_instance_args(p)
    p.add_argument("--t-max", type=int, default=None, help="horizon override (last slot index)")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=_cmd_export_lp)

    p = sub.add_parser("simulate", help="run a scenario/strategy evaluation grid")
    p.add_argument("--scenario", required=True, help="scenario JSON file (object or list)")
    p.add_argument("--metrics-out", required=True, help="metrics CSV output path")
    p.add_argument("--curves-out", required=True, help="SNDoT curves CSV output path")
    p.add_argument(
        "--normalize-ilp",
        action="store_true",
        help="normalize SMDT/SWDT by per-trial exact optima instead of max(B)*|C|",
    )
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("paper-check", help="run the reference result suite")
    p.add_argument(
        "--only",
        nargs="*",
        choices=[name for name, _ in checks.ALL_CHECKS],
        help="restrict to the named check groups",
    )
    p.set_defaults(func=_cmd_paper_check)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
