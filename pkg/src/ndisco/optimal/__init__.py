"""Exact optimization of listening schedules: model builders, an LP-format
exporter, and a branch-and-bound solver with a compiled search kernel."""

from .lpwriter import export_lp
from .model import Entity, IlpModel, InfeasibleModel, build_mdtopt, build_sample_mdt, build_sample_wdt
from .solver import BACKEND, SolveResult, solve_exact

__all__ = [
    "BACKEND",
    "Entity",
    "IlpModel",
    "InfeasibleModel",
    "SolveResult",
    "build_mdtopt",
    "build_sample_mdt",
    "build_sample_wdt",
    "export_lp",
    "solve_exact",
]
