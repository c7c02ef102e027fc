"""Domain types and exact metrics for passive multi-channel neighbor discovery.

Time is slotted.  A neighbor configuration is a (channel, beacon period,
offset) triple; a listening schedule scans at most one channel per slot.
All probabilities and mean discovery times are exact rationals.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Optional


class Family(Enum):
    """Beacon-period set families, most general to most structured."""

    F1 = "F1"  # arbitrary period sets
    F2 = "F2"  # every period divides the maximum (lcm == max)
    F3 = "F3"  # divisibility chain


def classify_family(periods: Iterable[int]) -> Family:
    """Return the most specific family containing the given period set."""
    ps = sorted(set(periods))
    if not ps:
        raise ValueError("period set must be nonempty")
    if any(p < 1 for p in ps):
        raise ValueError("periods must be positive integers")
    chain = all(ps[i + 1] % ps[i] == 0 for i in range(len(ps) - 1))
    if chain:
        return Family.F3
    if all(ps[-1] % p == 0 for p in ps):
        return Family.F2
    return Family.F1


@dataclass(frozen=True)
class BeaconPeriodSet:
    """An ordered set of beacon periods with cached gcd/lcm and family."""

    periods: tuple[int, ...]
    gcd: int
    lcm: int
    family: Family

    @classmethod
    def of(cls, periods: Iterable[int]) -> "BeaconPeriodSet":
        ps = tuple(sorted(set(periods)))
        if not ps:
            raise ValueError("period set must be nonempty")
        if ps[0] < 1:
            raise ValueError("periods must be positive integers")
        return cls(
            periods=ps,
            gcd=math.gcd(*ps),
            lcm=math.lcm(*ps),
            family=classify_family(ps),
        )

    @property
    def b_max(self) -> int:
        return self.periods[-1]


def normalize_bp_set(bps: BeaconPeriodSet) -> BeaconPeriodSet:
    """Divide every period by the set's gcd, yielding a gcd-1 set."""
    g = bps.gcd
    if g == 1:
        return bps
    return BeaconPeriodSet.of(p // g for p in bps.periods)


@dataclass(frozen=True)
class ChannelSet:
    """Channels are plain indices 0..count-1; no frequency semantics."""

    count: int

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("channel count must be >= 1")


@dataclass(frozen=True)
class Configuration:
    """A potential neighbor: channel, beacon period, offset, and its probability."""

    channel: int
    period: int
    offset: int
    probability: Fraction

    def __post_init__(self) -> None:
        if not 0 <= self.offset < self.period:
            raise ValueError("offset must lie in [0, period)")

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.channel, self.period, self.offset)


def configuration_space(bps: BeaconPeriodSet, channels: ChannelSet) -> list[Configuration]:
    """All |C| * sum(B) configurations under the uniform model.

    Probabilities are 1 / (period * |B| * |C|) and sum exactly to 1.
    """
    nb = len(bps.periods)
    out = []
    for c in range(channels.count):
        for b in bps.periods:
            p = Fraction(1, b * nb * channels.count)
            for d in range(b):
                out.append(Configuration(c, b, d, p))
    return out


@dataclass(frozen=True)
class Schedule:
    """A listening schedule: at most one scanned channel per time slot.

    Idle slots are absent from the scan map.
    """

    scans: Mapping[int, int]
    horizon: int

    @classmethod
    def of(cls, scans: Mapping[int, int] | Iterable[tuple[int, int]]) -> "Schedule":
        d = dict(scans.items() if isinstance(scans, Mapping) else scans)
        if any(t < 0 for t in d):
            raise ValueError("slots must be nonnegative")
        horizon = max(d) + 1 if d else 0
        return cls(scans=d, horizon=horizon)

    def sorted_scans(self) -> list[tuple[int, int]]:
        return sorted(self.scans.items())

    def to_json(self) -> str:
        return json.dumps(
            {"horizon": self.horizon, "scans": [[t, c] for t, c in self.sorted_scans()]}
        )

    @classmethod
    def from_json(cls, text: str) -> "Schedule":
        obj = json.loads(text)
        sched = cls(scans={int(t): int(c) for t, c in obj["scans"]}, horizon=int(obj["horizon"]))
        if sched.scans and max(sched.scans) >= sched.horizon:
            raise ValueError("scanned slot beyond the declared horizon")
        return sched


@dataclass(frozen=True)
class DiscoveryReport:
    """Discovery times of every configuration under a schedule.

    ``times`` maps a configuration to its discovery slot, or None when the
    schedule never observes it.  ``wdt`` and ``mdt`` are defined only for
    complete schedules.
    """

    times: Mapping[Configuration, Optional[int]]
    wdt: Optional[int]
    mdt: Optional[Fraction]
    ndot: tuple[tuple[int, Fraction], ...]

    @property
    def complete(self) -> bool:
        return all(t is not None for t in self.times.values())

    def to_json(self) -> str:
        rows = sorted(
            ([k.channel, k.period, k.offset, t] for k, t in self.times.items()),
            key=lambda r: (r[0], r[1], r[2]),
        )
        return json.dumps({"times": rows})


def discovery_times(
    schedule: Schedule, bps: BeaconPeriodSet, channels: ChannelSet
) -> DiscoveryReport:
    """Compute per-configuration discovery slots and the derived metrics.

    A scan (c, t) discovers configuration (c, b, t mod b) for every period b.
    """
    configs = configuration_space(bps, channels)
    by_key = {cfg.key: cfg for cfg in configs}
    times: dict[Configuration, Optional[int]] = {cfg: None for cfg in configs}
    pending = set(by_key)
    for t, c in schedule.sorted_scans():
        if not pending:
            break
        for b in bps.periods:
            key = (c, b, t % b)
            if key in pending:
                pending.discard(key)
                times[by_key[key]] = t
    complete = not pending
    wdt = max(t for t in times.values() if t is not None) + 1 if complete and times else None
    mdt = sum((cfg.probability * t for cfg, t in times.items()), Fraction(0)) if complete else None
    breakpoints: dict[int, Fraction] = {}
    for cfg, t in times.items():
        if t is not None:
            breakpoints[t] = breakpoints.get(t, Fraction(0)) + cfg.probability
    ndot = []
    acc = Fraction(0)
    for t in sorted(breakpoints):
        acc += breakpoints[t]
        ndot.append((t, acc))
    return DiscoveryReport(times=times, wdt=wdt, mdt=mdt, ndot=tuple(ndot))


def optimal_wdt(bps: BeaconPeriodSet, channels: ChannelSet) -> int:
    """The optimum duration of a complete discovery: max(B) * |C| slots."""
    return bps.b_max * channels.count


def channel_switch_count(schedule: Schedule) -> int:
    """Number of channel changes between consecutive scans; idle gaps keep the channel."""
    switches = 0
    tuned: Optional[int] = None
    for _, c in schedule.sorted_scans():
        if tuned is not None and c != tuned:
            switches += 1
        tuned = c
    return switches
