"""Independent ground truth for certifying schedulers and the exact solver.

Everything here recomputes discovery semantics from first principles and
shares only the domain types with the rest of the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import BeaconPeriodSet, ChannelSet, Schedule


class CeilingExceeded(RuntimeError):
    """Raised when a brute-force search would exceed its configured ceiling."""


def _raw_times(
    schedule: Schedule, bps: BeaconPeriodSet, channels: ChannelSet
) -> dict[tuple[int, int, int], Optional[int]]:
    times: dict[tuple[int, int, int], Optional[int]] = {
        (c, b, d): None
        for c in range(channels.count)
        for b in bps.periods
        for d in range(b)
    }
    for t, c in schedule.sorted_scans():
        for b in bps.periods:
            key = (c, b, t % b)
            if times[key] is None:
                times[key] = t
    return times


def is_complete(schedule: Schedule, bps: BeaconPeriodSet, channels: ChannelSet) -> bool:
    """True iff every configuration is discovered."""
    return all(t is not None for t in _raw_times(schedule, bps, channels).values())


def is_wdt_optimal(schedule: Schedule, bps: BeaconPeriodSet, channels: ChannelSet) -> bool:
    """True iff complete and all discoveries happen before slot max(B)*|C|."""
    times = _raw_times(schedule, bps, channels)
    bound = bps.b_max * channels.count
    return all(t is not None and t < bound for t in times.values())


def is_recursive(schedule: Schedule, bps: BeaconPeriodSet, channels: ChannelSet) -> bool:
    """True iff complete and, for every period b, all period-b configurations
    are discovered within the first b*|C| slots."""
    times = _raw_times(schedule, bps, channels)
    for (c, b, d), t in times.items():
        if t is None or t >= b * channels.count:
            return False
    return True


def recursive_schedule_exists(
    bps: BeaconPeriodSet, channels: ChannelSet, slot_ceiling: int = 4096
) -> tuple[bool, Optional[Schedule]]:
    """Decide whether a recursive schedule exists, by backtracking.

    A schedule is recursive iff every slot t < b*|C| discovers a fresh
    period-b configuration, for every period b; the search enforces exactly
    that, slot by slot, breaking channel symmetry by first use.
    """
    n = channels.count
    horizon = bps.b_max * n
    if horizon > slot_ceiling:
        raise CeilingExceeded(
            f"max(B)*|C| = {horizon} exceeds the ceiling {slot_ceiling}; "
            "reduce the instance or raise slot_ceiling"
        )
    pending = {(c, b): set(range(b)) for c in range(n) for b in bps.periods}
    assignment: list[int] = []

    def place(t: int, used: int) -> bool:
        if t == horizon:
            return True
        for c in range(min(used + 1, n)):
            if any(t < b * n and (t % b) not in pending[(c, b)] for b in bps.periods):
                continue
            removed = []
            for b in bps.periods:
                d = t % b
                if d in pending[(c, b)]:
                    pending[(c, b)].discard(d)
                    removed.append((b, d))
            assignment.append(c)
            if place(t + 1, max(used, c + 1)):
                return True
            assignment.pop()
            for b, d in removed:
                pending[(c, b)].add(d)
        return False

    if place(0, 0):
        return True, Schedule.of({t: c for t, c in enumerate(assignment)})
    return False, None


@dataclass(frozen=True)
class BruteForceResult:
    mdt: Fraction
    schedule: Schedule
    nodes: int


def brute_force_mdt_optimal(
    bps: BeaconPeriodSet,
    channels: ChannelSet,
    t_max: Optional[int] = None,
    node_ceiling: int = 100_000_000,
) -> BruteForceResult:
    """Exhaustive channel-or-idle search for an MDT-optimal complete schedule.

    Enumerates every slot assignment up to t_max (default lcm(B)*|C| - 1),
    pruning only with an admissible residue-class bound, so the returned
    value is the true optimum.  Refuses once node_ceiling expansions are
    spent.
    """
    n = channels.count
    if t_max is None:
        t_max = bps.lcm * n - 1
    weight = {b: bps.lcm // b for b in bps.periods}
    scale = len(bps.periods) * n * bps.lcm
    # pending[(b, d)] = set of channels still undiscovered for that residue
    pending = {(b, d): set(range(n)) for b in bps.periods for d in range(b)}
    best_obj: Optional[int] = None
    best_path: list[tuple[int, int]] = []
    path: list[tuple[int, int]] = []
    nodes = 0

    def lower_bound(t: int) -> Optional[int]:
        # each residue class (b, d) with k undiscovered channels needs k
        # distinct future slots congruent to d mod b
        total = 0
        for (b, d), chans in pending.items():
            k = len(chans)
            if k == 0:
                continue
            first = t + ((d - t) % b)
            if first + (k - 1) * b > t_max:
                return None
            total += weight[b] * (k * first + b * (k * (k - 1) // 2))
        return total

    def rec(t: int, obj: int, remaining: int) -> None:
        nonlocal best_obj, best_path, nodes
        nodes += 1
        if nodes > node_ceiling:
            raise CeilingExceeded(
                f"search exceeded {node_ceiling} nodes; shrink the instance "
                "(sum(B)*|C| <= 12 is always safe) or raise node_ceiling"
            )
        if remaining == 0:
            if best_obj is None or obj < best_obj:
                best_obj = obj
                best_path = list(path)
            return
        if t > t_max:
            return
        lb = lower_bound(t)
        if lb is None or (best_obj is not None and obj + lb >= best_obj):
            return
        gains = []
        for c in range(n):
            g = sum(weight[b] for b in bps.periods if c in pending[(b, t % b)])
            if g > 0:
                gains.append((-g, c))
        gains.sort()
        for neg, c in gains:
            removed = []
            for b in bps.periods:
                key = (b, t % b)
                if c in pending[key]:
                    pending[key].discard(c)
                    removed.append(key)
            path.append((t, c))
            rec(t + 1, obj + (-neg) * t, remaining - len(removed))
            path.pop()
            for key in removed:
                pending[key].add(c)
        # idle slot; a zero-gain scan is objective-equivalent, so this covers both
        rec(t + 1, obj, remaining)

    rec(0, 0, n * sum(bps.periods))
    if best_obj is None:
        raise ValueError(f"no complete schedule fits within t_max = {t_max}")
    return BruteForceResult(
        mdt=Fraction(best_obj, scale),
        schedule=Schedule.of(dict(best_path)),
        nodes=nodes,
    )
