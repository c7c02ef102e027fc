"""Pure-Python depth-first branch-and-bound over listening schedules.

Search state is the set of undiscovered entities (a bitmask) and the current
slot.  Idle slots are collapsed by jumping to the next slot where any
undiscovered entity beacons; scanning a zero-gain channel is never useful, so
children are only the channels with positive gain.  The lower bound counts,
for every residue class (period, offset), the cheapest distinct future slots
its undiscovered channels still need.  A transposition table prunes revisits
of a (slot, undiscovered) state with no better partial cost.
"""

from __future__ import annotations

import sys

STATUS_OPTIMAL = 0
STATUS_BUDGET = 1
STATUS_INFEASIBLE = 2

MODE_SUM = 0
MODE_MAKESPAN = 1

_TABLE_CAP = 2_000_000


class _Budget(Exception):
    pass


def search(
    n_channels,
    t_max,
    ent_channel,
    ent_period,
    ent_offset,
    ent_weight,
    mode,
    symmetric,
    node_limit,
    seed_obj,
    seed_scans,
):
    """Minimize the scaled weighted sum of discovery slots (or the makespan).

    Returns (status, best_objective, scans, nodes); best_objective and scans
    are None when infeasible.
    """
    n = len(ent_channel)
    full = (1 << n) - 1

    slot_mask = [[0] * n_channels for _ in range(t_max + 1)]
    for e in range(n):
        c = ent_channel[e]
        for t in range(ent_offset[e], t_max + 1, ent_period[e]):
            slot_mask[t][c] |= 1 << e

    # residue-class groups: entities sharing (period, offset) need distinct
    # slots per distinct channel
    group_of = {}
    groups = []  # (period, offset, [weight per member], member mask is implicit)
    ent_group = [0] * n
    for e in range(n):
        key = (ent_period[e], ent_offset[e])
        if key not in group_of:
            group_of[key] = len(groups)
            groups.append(key)
        ent_group[e] = group_of[key]
    n_groups = len(groups)

    best_obj = seed_obj
    best_scans = list(seed_scans) if seed_scans is not None else None
    nodes = 0
    path = []
    table = {}

    def bound(t, undisc):
        """Admissible completion bound from slot t, or None when infeasible."""
        # bucket undiscovered entities: per group, per-channel weight sums
        buckets = [None] * n_groups
        m = undisc
        while m:
            low = m & -m
            e = low.bit_length() - 1
            m ^= low
            g = ent_group[e]
            if buckets[g] is None:
                buckets[g] = {}
            ch = buckets[g]
            c = ent_channel[e]
            ch[c] = ch.get(c, 0) + ent_weight[e]
        total = 0
        worst = -1
        for g, ch in enumerate(buckets):
            if not ch:
                continue
            b, d = groups[g]
            first = t + ((d - t) % b)
            k = len(ch)
            last = first + (k - 1) * b
            if last > t_max:
                return None, None
            if mode == MODE_SUM:
                slot = first
                for w in sorted(ch.values(), reverse=True):
                    total += w * slot
                    slot += b
            else:
                if last > worst:
                    worst = last
        return total, worst

    def rec(t, undisc, obj, mk, used):
        nonlocal best_obj, best_scans, nodes
        nodes += 1
        if node_limit and nodes > node_limit:
            raise _Budget
        if undisc == 0:
            val = obj if mode == MODE_SUM else mk
            if best_obj is None or val < best_obj:
                best_obj = val
                best_scans = list(path)
            return
        # jump over slots where nothing undiscovered beacons
        tn = t_max + 1
        m = undisc
        while m:
            low = m & -m
            e = low.bit_length() - 1
            m ^= low
            first = t + ((ent_offset[e] - t) % ent_period[e])
            if first < tn:
                tn = first
        t = tn
        if t > t_max:
            return
        lb, worst = bound(t, undisc)
        if lb is None:
            return
        if best_obj is not None:
            if mode == MODE_SUM:
                if obj + lb >= best_obj:
                    return
            else:
                if max(mk, worst) >= best_obj:
                    return
        key = (t, undisc)
        seen = table.get(key)
        ref = obj if mode == MODE_SUM else mk
        if seen is not None and seen <= ref:
            return
        if len(table) < _TABLE_CAP:
            table[key] = ref
        limit = n_channels if not symmetric else min(used + 1, n_channels)
        cand = []
        masks = slot_mask[t]
        for c in range(limit):
            m = masks[c] & undisc
            if m:
                gain = 0
                mm = m
                while mm:
                    low = mm & -mm
                    gain += ent_weight[low.bit_length() - 1]
                    mm ^= low
                cand.append((-gain, c, m))
        cand.sort()
        for neg, c, m in cand:
            path.append((t, c))
            rec(
                t + 1,
                undisc & ~m,
                obj + (-neg) * t if mode == MODE_SUM else obj,
                mk if mode == MODE_SUM else (t if t > mk else mk),
                used if c < used else c + 1,
            )
            path.pop()

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, t_max + 100))
    status = STATUS_OPTIMAL
    try:
        rec(0, full, 0, 0, 0)
    except _Budget:
        status = STATUS_BUDGET
    finally:
        sys.setrecursionlimit(old_limit)
    if best_obj is None:
        return STATUS_INFEASIBLE if status == STATUS_OPTIMAL else STATUS_BUDGET, None, None, nodes
    return status, best_obj, best_scans, nodes
