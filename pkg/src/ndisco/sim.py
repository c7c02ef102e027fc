"""Slotted discovery simulator with sampled neighbor populations.

Beacons are instantaneous events at a fixed intra-slot position (the
neighbor's phase).  A channel switch entering a slot blanks the first
``deaf_fraction`` of that slot, so a beacon is missed iff the slot follows a
switch and the neighbor's phase falls inside the blanked prefix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import mean, stdev
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import BeaconPeriodSet, ChannelSet, Schedule, channel_switch_count
from .schedulers import STRATEGIES

Z95 = 1.959963984540054  # two-sided 95% normal quantile


@dataclass(frozen=True)
class Neighbor:
    channel: int
    period: int
    offset: int
    phase: float  # intra-slot beacon position in [0, 1)


@dataclass(frozen=True)
class Scenario:
    bps: BeaconPeriodSet
    channels: ChannelSet
    neighbor_count: int
    deaf_fraction: float
    trials: int
    seed: int
    scenario_id: str = "scenario"


@dataclass(frozen=True)
class TrialOutcome:
    times: tuple[Optional[int], ...]  # per-neighbor discovery slot, None = miss
    success_rate: float
    smdt: Optional[float]  # mean over discovered neighbors
    swdt: Optional[int]  # max over discovered neighbors
    sndot: tuple[tuple[int, float], ...]  # (slot, cumulative fraction)
    switches: int


def sample_neighbors(scenario: Scenario, trial: int = 0) -> list[Neighbor]:
    """Sample a neighbor population, reproducibly.

    Each neighbor gets its own counter-based stream keyed by
    (seed, trial, neighbor index); draws happen in the order
    period, offset, channel, phase.
    """
    out = []
    periods = scenario.bps.periods
    for idx in range(scenario.neighbor_count):
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=scenario.seed, spawn_key=(trial, idx))
        )
        period = int(periods[rng.integers(len(periods))])
        offset = int(rng.integers(period))
        channel = int(rng.integers(scenario.channels.count))
        phase = float(rng.random())
        out.append(Neighbor(channel, period, offset, phase))
    return out


def _discovery_tables(schedule: Schedule, periods: Iterable[int]):
    """First discovery slot per (channel, period, offset), overall and
    restricted to non-switch slots."""
    first_any: dict[tuple[int, int, int], int] = {}
    first_safe: dict[tuple[int, int, int], int] = {}
    tuned: Optional[int] = None
    periods = tuple(sorted(set(periods)))
    for t, c in schedule.sorted_scans():
        switched = tuned is not None and c != tuned
        tuned = c
        for b in periods:
            key = (c, b, t % b)
            if key not in first_any:
                first_any[key] = t
            if not switched and key not in first_safe:
                first_safe[key] = t
    return first_any, first_safe


def run_trial(schedule: Schedule, neighbors: Sequence[Neighbor], deaf_fraction: float) -> TrialOutcome:
    """Execute one schedule against a concrete population."""
    first_any, first_safe = _discovery_tables(schedule, (n.period for n in neighbors))
    times = []
    for nb in neighbors:
        key = (nb.channel, nb.period, nb.offset)
        if deaf_fraction > 0.0 and nb.phase < deaf_fraction:
            times.append(first_safe.get(key))
        else:
            times.append(first_any.get(key))
    discovered = sorted(t for t in times if t is not None)
    total = len(neighbors)
    curve = []
    for i, t in enumerate(discovered):
        if i + 1 == len(discovered) or discovered[i + 1] != t:
            curve.append((t, (i + 1) / total))
    return TrialOutcome(
        times=tuple(times),
        success_rate=len(discovered) / total,
        smdt=mean(discovered) if discovered else None,
        swdt=discovered[-1] if discovered else None,
        sndot=tuple(curve),
        switches=channel_switch_count(schedule),
    )


def _ci95(values: Sequence[float]) -> tuple[float, float]:
    if len(values) == 1:
        return values[0], 0.0
    return mean(values), Z95 * stdev(values) / math.sqrt(len(values))


@dataclass(frozen=True)
class MetricRow:
    scenario_id: str
    strategy: str
    metric: str
    mean: float
    ci95: float


@dataclass(frozen=True)
class CurveRow:
    scenario_id: str
    strategy: str
    normalized_time: float
    fraction: float


def evaluate(
    grid: Sequence[tuple[Scenario, Sequence[str]]],
    normalize_ilp: bool = False,
    ilp_t_max_ceiling: int = 4096,
) -> tuple[list[MetricRow], list[CurveRow]]:
    """Run every (scenario, strategy) cell and aggregate over trials.

    SMDT/SWDT are normalized by max(B)*|C|, or by per-trial exact optima when
    normalize_ilp is set.  The SNDoT time axis is always normalized by
    max(B)*|C|.
    """
    metrics: list[MetricRow] = []
    curves: list[CurveRow] = []
    for scenario, strategies in grid:
        unit = scenario.bps.b_max * scenario.channels.count
        populations = [
            sample_neighbors(scenario, trial) for trial in range(scenario.trials)
        ]
        norm_mdt: list[Optional[float]] = [None] * scenario.trials
        norm_wdt: list[Optional[float]] = [None] * scenario.trials
        if normalize_ilp:
            from .optimal import build_sample_mdt, build_sample_wdt, solve_exact

            for trial, pop in enumerate(populations):
                m = build_sample_mdt(pop, scenario.bps, scenario.channels)
                if m.t_max > ilp_t_max_ceiling:
                    raise ValueError(
                        f"ILP normalization refused: t_max {m.t_max} exceeds "
                        f"ceiling {ilp_t_max_ceiling}"
                    )
                norm_mdt[trial] = float(solve_exact(m).objective)
                w = build_sample_wdt(pop, scenario.bps, scenario.channels)
                norm_wdt[trial] = float(solve_exact(w).objective)
        for name in strategies:
            schedule = STRATEGIES[name](scenario.bps, scenario.channels)
            per_metric: dict[str, list[float]] = {
                "success_rate": [],
                "smdt_norm": [],
                "swdt_norm": [],
                "switches": [],
            }
            outcomes = [
                run_trial(schedule, pop, scenario.deaf_fraction) for pop in populations
            ]
            for trial, outcome in enumerate(outcomes):
                per_metric["success_rate"].append(outcome.success_rate)
                per_metric["switches"].append(float(outcome.switches))
                if outcome.smdt is not None:
                    denom = norm_mdt[trial] if normalize_ilp else unit
                    per_metric["smdt_norm"].append(
                        outcome.smdt / denom if denom else outcome.smdt
                    )
                if outcome.swdt is not None:
                    denom = norm_wdt[trial] if normalize_ilp else unit
                    per_metric["swdt_norm"].append(
                        outcome.swdt / denom if denom else float(outcome.swdt)
                    )
            for metric, values in per_metric.items():
                if not values:
                    continue
                m, ci = _ci95(values)
                metrics.append(MetricRow(scenario.scenario_id, name, metric, m, ci))
            # pointwise average of the per-trial step curves over the union grid
            grid_slots = sorted({slot for o in outcomes for slot, _ in o.sndot})
            n_trials = len(outcomes)
            if grid_slots:
                levels = [0.0] * n_trials
                positions = [0] * n_trials
                curve_lists = [list(o.sndot) for o in outcomes]
                for slot in grid_slots:
                    for i, curve in enumerate(curve_lists):
                        while positions[i] < len(curve) and curve[positions[i]][0] <= slot:
                            levels[i] = curve[positions[i]][1]
                            positions[i] += 1
                    curves.append(
                        CurveRow(
                            scenario.scenario_id,
                            name,
                            (slot + 1) / unit,
                            sum(levels) / n_trials,
                        )
                    )
    return metrics, curves


def format_decimal(x: float) -> str:
    """Render a decimal with 12 significant digits."""
    return f"{x:.12g}"


def write_metrics_csv(rows: Sequence[MetricRow], path: str) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["scenario_id", "strategy", "metric", "mean", "ci95"])
        for r in rows:
            w.writerow(
                [r.scenario_id, r.strategy, r.metric, format_decimal(r.mean), format_decimal(r.ci95)]
            )


def write_curves_csv(rows: Sequence[CurveRow], path: str) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["scenario_id", "strategy", "normalized_time", "fraction"])
        for r in rows:
            w.writerow(
                [r.scenario_id, r.strategy, format_decimal(r.normalized_time), format_decimal(r.fraction)]
            )
