# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled depth-first branch-and-bound over listening schedules.

Same algorithm and traversal order as the pure-Python fallback in
``_bb_py``; undiscovered sets are arbitrary-width Python ints so instances
are not limited to 64 entities, while slots, channels, and objective
arithmetic run on C integers.
"""

import sys

STATUS_OPTIMAL = 0
STATUS_BUDGET = 1
STATUS_INFEASIBLE = 2

MODE_SUM = 0
MODE_MAKESPAN = 1

DEF TABLE_CAP = 2_000_000


class _Budget(Exception):
    pass


cdef class _Search:
    cdef int n, n_channels, t_max, mode, n_groups
    cdef bint symmetric
    cdef long long node_limit, nodes
    cdef list slot_mask          # [t][c] -> python int bitmask
    cdef int[:] channel_v, period_v, offset_v, group_v
    cdef long long[:] weight_v
    cdef list group_keys         # (period, offset) per group
    cdef object best_obj         # python int or None
    cdef object best_scans       # list of (t, c) or None
    cdef list path
    cdef dict table

    def __init__(self, n_channels, t_max, ent_channel, ent_period, ent_offset,
                 ent_weight, mode, symmetric, node_limit, seed_obj, seed_scans):
        import array
        cdef int e, t, c
        self.n = len(ent_channel)
        self.n_channels = n_channels
        self.t_max = t_max
        self.mode = mode
        self.symmetric = symmetric
        self.node_limit = node_limit
        self.nodes = 0
        self.channel_v = array.array("i", ent_channel)
        self.period_v = array.array("i", ent_period)
        self.offset_v = array.array("i", ent_offset)
        self.weight_v = array.array("q", ent_weight)
        self.slot_mask = [[0] * n_channels for _ in range(t_max + 1)]
        one = 1  # python int; masks must not be C-width
        for e in range(self.n):
            c = ent_channel[e]
            for t in range(ent_offset[e], t_max + 1, ent_period[e]):
                self.slot_mask[t][c] |= one << e
        group_of = {}
        self.group_keys = []
        groups = array.array("i", [0] * self.n)
        for e in range(self.n):
            key = (ent_period[e], ent_offset[e])
            if key not in group_of:
                group_of[key] = len(self.group_keys)
                self.group_keys.append(key)
            groups[e] = group_of[key]
        self.group_v = groups
        self.n_groups = len(self.group_keys)
        self.best_obj = seed_obj
        self.best_scans = list(seed_scans) if seed_scans is not None else None
        self.path = []
        self.table = {}

    cdef tuple bound(self, int t, object undisc):
        cdef long long total = 0
        cdef int worst = -1
        cdef int e, g, b, d, first, k, last, slot
        cdef object m, low
        buckets = [None] * self.n_groups
        m = undisc
        while m:
            low = m & -m
            e = (<object>low).bit_length() - 1
            m ^= low
            g = self.group_v[e]
            ch = buckets[g]
            if ch is None:
                ch = {}
                buckets[g] = ch
            c = self.channel_v[e]
            ch[c] = ch.get(c, 0) + self.weight_v[e]
        for g in range(self.n_groups):
            ch = buckets[g]
            if not ch:
                continue
            b, d = self.group_keys[g]
            first = t + ((d - t) % b + b) % b  # C modulo is negative-signed
            k = len(ch)
            last = first + (k - 1) * b
            if last > self.t_max:
                return None, None
            if self.mode == MODE_SUM:
                slot = first
                for w in sorted(ch.values(), reverse=True):
                    total += (<long long>w) * slot
                    slot += b
            else:
                if last > worst:
                    worst = last
        return total, worst

    cdef void rec(self, int t, object undisc, long long obj, int mk, int used) except *:
        cdef int e, c, tn, first, limit
        cdef long long gain, val
        cdef object m, low, mm, cmask
        self.nodes += 1
        if self.node_limit and self.nodes > self.node_limit:
            raise _Budget
        if undisc == 0:
            val = obj if self.mode == MODE_SUM else mk
            if self.best_obj is None or val < self.best_obj:
                self.best_obj = val
                self.best_scans = list(self.path)
            return
        tn = self.t_max + 1
        m = undisc
        while m:
            low = m & -m
            e = (<object>low).bit_length() - 1
            m ^= low
            first = t + (((self.offset_v[e] - t) % self.period_v[e])
                         + self.period_v[e]) % self.period_v[e]
            if first < tn:
                tn = first
        t = tn
        if t > self.t_max:
            return
        lb, worst = self.bound(t, undisc)
        if lb is None:
            return
        if self.best_obj is not None:
            if self.mode == MODE_SUM:
                if obj + lb >= self.best_obj:
                    return
            else:
                if max(mk, worst) >= self.best_obj:
                    return
        key = (t, undisc)
        ref = obj if self.mode == MODE_SUM else mk
        seen = self.table.get(key)
        if seen is not None and seen <= ref:
            return
        if len(self.table) < TABLE_CAP:
            self.table[key] = ref
        limit = self.n_channels
        if self.symmetric and used + 1 < limit:
            limit = used + 1
        masks = self.slot_mask[t]
        cand = []
        for c in range(limit):
            cmask = masks[c] & undisc
            if cmask:
                gain = 0
                mm = cmask
                while mm:
                    low = mm & -mm
                    gain += self.weight_v[(<object>low).bit_length() - 1]
                    mm ^= low
                cand.append((-gain, c, cmask))
        cand.sort()
        for neg, cc, cmask in cand:
            c = cc
            self.path.append((t, c))
            self.rec(
                t + 1,
                undisc & ~cmask,
                obj + (-(<long long>neg)) * t if self.mode == MODE_SUM else obj,
                mk if self.mode == MODE_SUM else (t if t > mk else mk),
                used if c < used else c + 1,
            )
            self.path.pop()


def search(n_channels, t_max, ent_channel, ent_period, ent_offset, ent_weight,
           mode, symmetric, node_limit, seed_obj, seed_scans):
    """Minimize the scaled weighted sum of discovery slots (or the makespan).

    Returns (status, best_objective, scans, nodes); best_objective and scans
    are None when infeasible.
    """
    s = _Search(n_channels, t_max, ent_channel, ent_period, ent_offset,
                ent_weight, mode, symmetric, node_limit, seed_obj, seed_scans)
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, t_max + 100))
    status = STATUS_OPTIMAL
    try:
        full = (int(1) << len(ent_channel)) - 1
        s.rec(0, full, 0, 0, 0)
    except _Budget:
        status = STATUS_BUDGET
    finally:
        sys.setrecursionlimit(old_limit)
    if s.best_obj is None:
        return (STATUS_INFEASIBLE if status == STATUS_OPTIMAL else STATUS_BUDGET,
                None, None, s.nodes)
    return status, int(s.best_obj), s.best_scans, s.nodes
