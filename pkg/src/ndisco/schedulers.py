"""Constructive listening-schedule generators.

Includes the IEEE 802.15.4-style passive scan baseline, the greedy family
with pluggable tie-breaking, the channel-train variant that lingers on a
channel while its value does not drop, a backtracking constructor for
two-period sets, and the inductive constructor for divisibility-chain sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .core import BeaconPeriodSet, ChannelSet, Family, Schedule


class TieBreak(Enum):
    """Deterministic tie-breaking among equal-value channels."""

    FIRST = "first"  # lowest channel index
    STAY = "stay"  # currently tuned channel if tied, else lowest index
    LOOKAHEAD = "lookahead"  # channel staying in the argmax set longest, then STAY


def psv(bps: BeaconPeriodSet, channels: ChannelSet) -> Schedule:
    """Passive scan baseline: each channel for max(B) consecutive slots."""
    b = bps.b_max
    scans = {}
    for j in range(channels.count):
        for t in range(j * b, (j + 1) * b):
            scans[t] = j
    return Schedule.of(scans)


class _Undiscovered:
    """Tracks undiscovered configurations with scaled integer probabilities.

    Weights are scaled by |B| * |C| * lcm(B) so that per-channel value
    comparisons stay in integer arithmetic.
    """

    def __init__(self, bps: BeaconPeriodSet, channels: ChannelSet):
        self.periods = bps.periods
        self.weight = {b: bps.lcm // b for b in bps.periods}
        self.pending = {
            (c, b): set(range(b)) for c in range(channels.count) for b in bps.periods
        }
        self.remaining = channels.count * sum(bps.periods)

    def value(self, c: int, t: int) -> int:
        return sum(
            self.weight[b] for b in self.periods if (t % b) in self.pending[(c, b)]
        )

    def discover(self, c: int, t: int) -> int:
        gained = 0
        for b in self.periods:
            offs = self.pending[(c, b)]
            d = t % b
            if d in offs:
                offs.discard(d)
                gained += self.weight[b]
                self.remaining -= 1
        return gained

    def clone(self) -> "_Undiscovered":
        twin = object.__new__(_Undiscovered)
        twin.periods = self.periods
        twin.weight = self.weight
        twin.pending = {k: set(v) for k, v in self.pending.items()}
        twin.remaining = self.remaining
        return twin


def _argmax_channels(und: _Undiscovered, t: int, n_channels: int) -> tuple[int, list[int]]:
    vals = [und.value(c, t) for c in range(n_channels)]
    best = max(vals)
    return best, [c for c, v in enumerate(vals) if v == best]


def _lookahead_run(und: _Undiscovered, t: int, c: int, n_channels: int, cap: int) -> int:
    """Slots from t during which channel c stays in the argmax set if scanned."""
    trial = und.clone()
    run = 0
    while run < cap and trial.remaining:
        best, arg = _argmax_channels(trial, t + run, n_channels)
        if best == 0 or c not in arg:
            break
        trial.discover(c, t + run)
        run += 1
    return run


def greedy(bps: BeaconPeriodSet, channels: ChannelSet, tie: TieBreak = TieBreak.FIRST) -> Schedule:
    """Scan, at every slot, a channel maximizing the expected number of
    fresh discoveries; slots where no channel can discover anything are idle.

    Terminates with a complete schedule within lcm(B) * |C| slots.
    """
    und = _Undiscovered(bps, channels)
    cap = bps.lcm * channels.count
    look_cap = bps.b_max * channels.count
    scans: dict[int, int] = {}
    tuned: Optional[int] = None
    t = 0
    while und.remaining:
        if t >= cap:
            raise RuntimeError("greedy exceeded the lcm(B)*|C| horizon")
        best, arg = _argmax_channels(und, t, channels.count)
        if best == 0:
            t += 1
            continue
        if tie is TieBreak.FIRST:
            c = arg[0]
        elif tie is TieBreak.STAY:
            c = tuned if tuned in arg else arg[0]
        else:  # LOOKAHEAD
            runs = {cand: _lookahead_run(und, t, cand, channels.count, look_cap) for cand in arg}
            longest = max(runs.values())
            finalists = [cand for cand in arg if runs[cand] == longest]
            c = tuned if tuned in finalists else finalists[0]
        scans[t] = c
        und.discover(c, t)
        tuned = c
        t += 1
    return Schedule.of(scans)


def chan_train(bps: BeaconPeriodSet, channels: ChannelSet) -> Schedule:
    """Greedy channel selection that lingers: after picking a channel it keeps
    scanning it while the expected-discovery value at the next slot does not
    drop below the value at the current slot."""
    und = _Undiscovered(bps, channels)
    cap = bps.lcm * channels.count
    scans: dict[int, int] = {}
    t = 0
    while und.remaining:
        if t >= cap:
            raise RuntimeError("chan_train exceeded the lcm(B)*|C| horizon")
        best, arg = _argmax_channels(und, t, channels.count)
        if best == 0:
            t += 1
            continue
        c = arg[0]
        prev = best
        scans[t] = c
        und.discover(c, t)
        t += 1
        while und.remaining and t < cap:
            v = und.value(c, t)
            if v < prev:
                break
            scans[t] = c
            und.discover(c, t)
            prev = v
            t += 1
    return Schedule.of(scans)


def per_slot_values(schedule: Schedule, bps: BeaconPeriodSet, channels: ChannelSet) -> list[int]:
    """Scaled expected-discovery value realized at each slot of a schedule.

    Index i holds the value gained at slot i (0 for idle slots), scaled by
    |B| * |C| * lcm(B).
    """
    und = _Undiscovered(bps, channels)
    out = [0] * schedule.horizon
    for t, c in schedule.sorted_scans():
        out[t] = und.discover(c, t)
    return out


@dataclass(frozen=True)
class ScheduleMatrix:
    """Matrix form of a complete WDT-optimal schedule.

    entries[c][d] = k means channel c is scanned at slot k * period + d,
    where period is the number of columns.  Entries within a column are
    distinct and lie in [0, |C|).
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        period = len(self.entries[0])
        for row in self.entries:
            if len(row) != period:
                raise ValueError("ragged matrix")
            if any(not 0 <= k < n for k in row):
                raise ValueError("entries must lie in [0, |C|)")
        for d in range(period):
            col = [self.entries[c][d] for c in range(n)]
            if len(set(col)) != n:
                raise ValueError("column entries must be distinct")

    @property
    def period(self) -> int:
        return len(self.entries[0])

    @property
    def n_channels(self) -> int:
        return len(self.entries)

    def to_schedule(self) -> Schedule:
        scans = {}
        for c, row in enumerate(self.entries):
            for d, k in enumerate(row):
                scans[k * self.period + d] = c
        return Schedule.of(scans)


def extend_recursive(matrix: ScheduleMatrix, target_period: int) -> ScheduleMatrix:
    """Widen a recursive-schedule matrix to a multiple of its period.

    Mapped cells keep their absolute scan slots; the remaining cells of each
    column are filled with the unused values in ascending channel order.
    """
    b1 = matrix.period
    b2 = target_period
    if b2 % b1 != 0:
        raise ValueError("target period must be a multiple of the matrix period")
    n = matrix.n_channels
    new: list[list[Optional[int]]] = [[None] * b2 for _ in range(n)]
    for c in range(n):
        for d1 in range(b1):
            slot = matrix.entries[c][d1] * b1 + d1
            d2 = slot % b2
            new[c][d2] = slot // b2
    for d2 in range(b2):
        used = {new[c][d2] for c in range(n) if new[c][d2] is not None}
        free = iter(k for k in range(n) if k not in used)
        for c in range(n):
            if new[c][d2] is None:
                new[c][d2] = next(free)
    return ScheduleMatrix(entries=tuple(tuple(row) for row in new))


def recursive_f3(bps: BeaconPeriodSet, channels: ChannelSet) -> Schedule:
    """Build a recursive schedule for a divisibility-chain period set by
    inductively widening the single-period base matrix."""
    if bps.family is not Family.F3:
        raise ValueError("recursive_f3 requires a divisibility-chain period set")
    base = ScheduleMatrix(
        entries=tuple(tuple(c for _ in range(bps.periods[0])) for c in range(channels.count))
    )
    matrix = base
    for b in bps.periods[1:]:
        matrix = extend_recursive(matrix, b)
    return matrix.to_schedule()


def opt_b2(bps: BeaconPeriodSet, channels: ChannelSet) -> Schedule:
    """Recursive schedule for a two-period set, found by deadline-constrained
    backtracking over the first max(B) * |C| slots."""
    if len(bps.periods) != 2:
        raise ValueError("opt_b2 requires exactly two beacon periods")
    n = channels.count
    horizon = bps.b_max * n
    pending = {(c, b): set(range(b)) for c in range(n) for b in bps.periods}
    assignment: list[int] = []

    def feasible(c: int, t: int) -> bool:
        # every period whose deadline window is still open must gain a fresh
        # configuration in every slot of that window
        return all(t >= b * n or (t % b) in pending[(c, b)] for b in bps.periods)

    def place(t: int) -> bool:
        if t == horizon:
            return True
        for c in range(n):
            if not feasible(c, t):
                continue
            removed = []
            for b in bps.periods:
                d = t % b
                if d in pending[(c, b)]:
                    pending[(c, b)].discard(d)
                    removed.append((c, b, d))
            assignment.append(c)
            if place(t + 1):
                return True
            assignment.pop()
            for c2, b2, d2 in removed:
                pending[(c2, b2)].add(d2)
        return False

    if not place(0):
        raise RuntimeError("no recursive schedule found for a two-period set")
    return Schedule.of({t: c for t, c in enumerate(assignment)})


STRATEGIES = {
    "psv": psv,
    "greedy-first": lambda b, c: greedy(b, c, TieBreak.FIRST),
    "greedy-stay": lambda b, c: greedy(b, c, TieBreak.STAY),
    "greedy-lookahead": lambda b, c: greedy(b, c, TieBreak.LOOKAHEAD),
    "chantrain": chan_train,
    "optb2": opt_b2,
    "recursive-f3": recursive_f3,
}
