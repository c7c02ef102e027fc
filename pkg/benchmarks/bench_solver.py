#!/usr/bin/env python3
"""Benchmark the compiled branch-and-bound kernel against the pure-Python
fallback on the reference optimization instances.

Both backends follow the same traversal, so node counts must match; the
script asserts that and reports wall time per instance.
"""

import time

from ndisco.core import BeaconPeriodSet, ChannelSet
from ndisco.optimal import BACKEND, build_mdtopt, solve_exact

INSTANCES = [
    ((1, 2, 3), 3, None),
    ((1, 2, 4, 5), 2, 39),
    ((1, 2, 4, 5), 2, 9),
    ((2, 3, 4, 6, 12), 2, None),
    ((1, 2, 4, 8), 3, None),
    ((2, 4, 6, 12), 3, None),
]


def _run(model, backend, repeats=5):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = solve_exact(model, force_backend=backend)
        best = min(best, time.perf_counter() - t0)
    return result, best


def main():
    if BACKEND != "compiled":
        print("compiled kernel unavailable; timing the python backend only")
    header = f"{'instance':<28} {'nodes':>8} {'python':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for periods, nc, t_max in INSTANCES:
        bps = BeaconPeriodSet.of(periods)
        model = build_mdtopt(bps, ChannelSet(nc), t_max=t_max)
        py_res, py_t = _run(model, "python")
        label = f"B={list(periods)} |C|={nc}" + (f" T={t_max}" if t_max else "")
        if BACKEND == "compiled":
            cy_res, cy_t = _run(model, "compiled")
            assert cy_res.objective == py_res.objective, label
            assert cy_res.nodes == py_res.nodes, label
            print(
                f"{label:<28} {py_res.nodes:>8} {py_t * 1e3:>8.2f}ms {cy_t * 1e3:>8.2f}ms "
                f"{py_t / cy_t:>7.1f}x"
            )
        else:
            print(f"{label:<28} {py_res.nodes:>8} {py_t * 1e3:>8.2f}ms {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
