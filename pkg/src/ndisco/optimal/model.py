"""Binary-program models for schedule optimization.

Models carry y variables (one per entity and beacon occurrence), h variables
(channel scanned in a slot), and for makespan objectives a continuous z.
Entities are either configurations (full-space mean-discovery model) or
concrete neighbors (per-scenario sample models).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..core import BeaconPeriodSet, ChannelSet, configuration_space


class InfeasibleModel(ValueError):
    """The horizon cannot cover some entity's first beacon occurrence."""


@dataclass(frozen=True)
class Entity:
    """One covered object: a configuration or a neighbor."""

    ident: str
    channel: int
    period: int
    offset: int
    weight: Fraction

    def occurrences(self, t_max: int) -> range:
        return range((t_max - self.offset) // self.period + 1)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[tuple[str, Fraction], ...]
    sense: str  # "<=" or "="
    rhs: Fraction
    name: str


@dataclass(frozen=True)
class IlpModel:
    entities: tuple[Entity, ...]
    n_channels: int
    t_max: int
    objective_kind: str  # "weighted_sum" or "makespan"
    symmetric_channels: bool
    y_vars: tuple[str, ...]
    h_vars: tuple[str, ...]
    z_var: Optional[str]
    constraints: tuple[Constraint, ...]
    objective: tuple[tuple[str, Fraction], ...]
    bps: BeaconPeriodSet = field(repr=False, default=None)  # type: ignore[assignment]


def _y(entity: Entity, i: int) -> str:
    return f"y_{i}_{entity.ident}"


def _h(c: int, t: int) -> str:
    return f"h_{c}_{t}"


def _assemble(
    entities: Sequence[Entity],
    bps: BeaconPeriodSet,
    channels: ChannelSet,
    t_max: int,
    objective_kind: str,
    symmetric: bool,
) -> IlpModel:
    for e in entities:
        if e.offset > t_max:
            raise InfeasibleModel(
                f"t_max = {t_max} precedes the first beacon of {e.ident} at slot {e.offset}"
            )
    y_vars: list[str] = []
    constraints: list[Constraint] = []
    one = Fraction(1)
    for e in entities:
        names = [_y(e, i) for i in e.occurrences(t_max)]
        y_vars.extend(names)
        constraints.append(
            Constraint(tuple((nm, one) for nm in names), "=", one, f"cover_{e.ident}")
        )
        for i in e.occurrences(t_max):
            constraints.append(
                Constraint(
                    ((_y(e, i), one), (_h(e.channel, e.offset + i * e.period), -one)),
                    "<=",
                    Fraction(0),
                    f"link_{e.ident}_{i}",
                )
            )
    h_vars = [_h(c, t) for c in range(channels.count) for t in range(t_max + 1)]
    for t in range(t_max + 1):
        constraints.append(
            Constraint(
                tuple((_h(c, t), one) for c in range(channels.count)),
                "<=",
                one,
                f"slot_{t}",
            )
        )
    z_var = None
    if objective_kind == "makespan":
        z_var = "z"
        for e in entities:
            for i in e.occurrences(t_max):
                slot = e.offset + i * e.period
                if slot == 0:
                    continue
                constraints.append(
                    Constraint(
                        ((_y(e, i), Fraction(slot)), (z_var, -one)),
                        "<=",
                        Fraction(0),
                        f"span_{e.ident}_{i}",
                    )
                )
        objective = ((z_var, one),)
    else:
        objective = tuple(
            (_y(e, i), e.weight * (e.offset + i * e.period))
            for e in entities
            for i in e.occurrences(t_max)
        )
    return IlpModel(
        entities=tuple(entities),
        n_channels=channels.count,
        t_max=t_max,
        objective_kind=objective_kind,
        symmetric_channels=symmetric,
        y_vars=tuple(y_vars),
        h_vars=tuple(h_vars),
        z_var=z_var,
        constraints=tuple(constraints),
        objective=objective,
        bps=bps,
    )


def build_mdtopt(
    bps: BeaconPeriodSet, channels: ChannelSet, t_max: Optional[int] = None
) -> IlpModel:
    """Mean-discovery-time model over the full configuration space.

    Default horizon is lcm(B)*|C| - 1 slots, which always admits an optimal
    complete schedule.
    """
    if t_max is None:
        t_max = bps.lcm * channels.count - 1
    entities = [
        Entity(
            ident=f"c{k.channel}b{k.period}d{k.offset}",
            channel=k.channel,
            period=k.period,
            offset=k.offset,
            weight=k.probability,
        )
        for k in configuration_space(bps, channels)
    ]
    return _assemble(entities, bps, channels, t_max, "weighted_sum", symmetric=True)


def _sample_t_max(bps: BeaconPeriodSet, channels: ChannelSet) -> int:
    return min(1000 * bps.b_max * channels.count - 1, bps.lcm * channels.count - 1)


def _neighbor_entities(neighbors, bps: BeaconPeriodSet, channels: ChannelSet) -> list[Entity]:
    if not neighbors:
        raise ValueError("neighbor list must be nonempty")
    w = Fraction(1, len(neighbors))
    out = []
    for idx, nb in enumerate(neighbors):
        if nb.period not in bps.periods:
            raise ValueError(f"neighbor {idx} period {nb.period} not in the period set")
        if nb.channel >= channels.count:
            raise ValueError(f"neighbor {idx} channel {nb.channel} out of range")
        out.append(Entity(f"n{idx}", nb.channel, nb.period, nb.offset, w))
    return out


def build_sample_mdt(
    neighbors, bps: BeaconPeriodSet, channels: ChannelSet, t_max: Optional[int] = None
) -> IlpModel:
    """Minimum sample-mean discovery time over a concrete neighbor set."""
    if t_max is None:
        t_max = _sample_t_max(bps, channels)
    entities = _neighbor_entities(neighbors, bps, channels)
    return _assemble(entities, bps, channels, t_max, "weighted_sum", symmetric=False)


def build_sample_wdt(
    neighbors, bps: BeaconPeriodSet, channels: ChannelSet, t_max: Optional[int] = None
) -> IlpModel:
    """Minimum sample makespan (latest discovery slot) over a neighbor set."""
    if t_max is None:
        t_max = _sample_t_max(bps, channels)
    entities = _neighbor_entities(neighbors, bps, channels)
    return _assemble(entities, bps, channels, t_max, "makespan", symmetric=False)
