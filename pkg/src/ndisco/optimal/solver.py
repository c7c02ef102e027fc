"""Exact solver driver: seeds an incumbent from the constructive schedulers,
then runs the branch-and-bound kernel (compiled when available)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..core import Schedule
from ..schedulers import TieBreak, chan_train, greedy, psv
from .model import IlpModel

try:
    from . import _bb as _kernel

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on the build environment
    from . import _bb_py as _kernel

    BACKEND = "python"

from . import _bb_py as _py_kernel

_STATUS = {0: "optimal", 1: "budget-exceeded", 2: "infeasible"}


@dataclass(frozen=True)
class SolveResult:
    objective: Optional[Fraction]
    schedule: Optional[Schedule]
    status: str
    nodes: int


def _seed_incumbent(model: IlpModel, scale: int):
    """Best heuristic schedule that covers all entities within t_max."""
    candidates = []
    if model.bps is not None:
        from ..core import ChannelSet

        channels = ChannelSet(model.n_channels)
        for gen in (
            lambda: psv(model.bps, channels),
            lambda: greedy(model.bps, channels, TieBreak.FIRST),
            lambda: chan_train(model.bps, channels),
        ):
            try:
                candidates.append(gen())
            except RuntimeError:
                pass
    best = None
    for sched in candidates:
        scans = [(t, c) for t, c in sched.sorted_scans() if t <= model.t_max]
        per_channel: dict[int, list[int]] = {}
        for t, c in scans:
            per_channel.setdefault(c, []).append(t)
        obj = 0
        mk = 0
        ok = True
        for idx, e in enumerate(model.entities):
            hit = next(
                (t for t in per_channel.get(e.channel, []) if t % e.period == e.offset),
                None,
            )
            if hit is None:
                ok = False
                break
            if model.objective_kind == "weighted_sum":
                obj += int(e.weight * scale) * hit
            else:
                mk = max(mk, hit)
        if not ok:
            continue
        val = obj if model.objective_kind == "weighted_sum" else mk
        if best is None or val < best[0]:
            best = (val, scans)
    return best


def solve_exact(
    model: IlpModel, node_limit: int = 0, force_backend: Optional[str] = None
) -> SolveResult:
    """Solve a schedule model to proven optimality by branch-and-bound.

    ``node_limit`` of 0 means unlimited; on exhaustion the best incumbent is
    returned with status "budget-exceeded".  Objectives are exact rationals.
    """
    scale = math.lcm(*(e.weight.denominator for e in model.entities))
    if model.objective_kind == "makespan":
        scale = 1
    seed = _seed_incumbent(model, scale)
    kernel = _kernel
    if force_backend == "python":
        kernel = _py_kernel
    elif force_backend == "compiled" and BACKEND != "compiled":
        raise RuntimeError("compiled kernel is not available")
    status_code, best, scans, nodes = kernel.search(
        model.n_channels,
        model.t_max,
        [e.channel for e in model.entities],
        [e.period for e in model.entities],
        [e.offset for e in model.entities],
        [int(e.weight * scale) if model.objective_kind == "weighted_sum" else 1
         for e in model.entities],
        0 if model.objective_kind == "weighted_sum" else 1,
        model.symmetric_channels,
        node_limit,
        seed[0] if seed else None,
        seed[1] if seed else None,
    )
    status = _STATUS[status_code]
    if best is None:
        return SolveResult(None, None, status, nodes)
    objective = Fraction(best, scale) if model.objective_kind == "weighted_sum" else Fraction(best)
    return SolveResult(objective, Schedule.of(dict(scans)), status, nodes)
