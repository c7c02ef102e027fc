import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ndisco.core import (
    BeaconPeriodSet,
    ChannelSet,
    Family,
    Schedule,
    channel_switch_count,
    classify_family,
    configuration_space,
    discovery_times,
    normalize_bp_set,
    optimal_wdt,
)


def test_family_classification():
    assert classify_family([1, 2, 4]) is Family.F3
    assert classify_family([2, 3, 4, 6, 12]) is Family.F2
    assert classify_family([1, 2, 3]) is Family.F1
    assert classify_family([7]) is Family.F3


def test_family_rejects_bad_input():
    with pytest.raises(ValueError):
        classify_family([])
    with pytest.raises(ValueError):
        classify_family([0, 2])


def test_bp_set_dedups_and_sorts():
    bps = BeaconPeriodSet.of([4, 2, 4, 1])
    assert bps.periods == (1, 2, 4)
    assert bps.b_max == 4
    assert bps.gcd == 1
    assert bps.lcm == 4


def test_normalize_divides_by_gcd():
    assert normalize_bp_set(BeaconPeriodSet.of([2, 4, 6])).periods == (1, 2, 3)
    bps = BeaconPeriodSet.of([1, 2])
    assert normalize_bp_set(bps) is bps


def test_configuration_space_counts_and_probability():
    bps = BeaconPeriodSet.of([1, 2])
    space = configuration_space(bps, ChannelSet(2))
    assert len(space) == 6
    by_period = {cfg.period: cfg.probability for cfg in space}
    assert by_period[1] == Fraction(1, 4)
    assert by_period[2] == Fraction(1, 8)


@given(
    periods=st.sets(st.integers(1, 15), min_size=1, max_size=4),
    nc=st.integers(1, 4),
)
def test_configuration_probabilities_sum_to_one(periods, nc):
    bps = BeaconPeriodSet.of(periods)
    space = configuration_space(bps, ChannelSet(nc))
    assert len(space) == nc * sum(bps.periods)
    assert sum(cfg.probability for cfg in space) == 1


def test_schedule_json_round_trip():
    sched = Schedule.of({0: 1, 3: 0})
    again = Schedule.from_json(sched.to_json())
    assert again == sched
    assert again.horizon == 4


def test_schedule_rejects_scan_beyond_horizon():
    with pytest.raises(ValueError):
        Schedule.from_json(json.dumps({"horizon": 2, "scans": [[5, 0]]}))


def test_discovery_times_single_config():
    bps = BeaconPeriodSet.of([1])
    rep = discovery_times(Schedule.of({0: 0}), bps, ChannelSet(1))
    assert rep.complete
    assert rep.wdt == 1
    assert rep.mdt == 0


def test_discovery_times_incomplete_has_no_metrics():
    bps = BeaconPeriodSet.of([2])
    rep = discovery_times(Schedule.of({0: 0}), bps, ChannelSet(1))
    assert not rep.complete
    assert rep.wdt is None and rep.mdt is None


def test_ndot_is_a_cdf_ending_at_one_iff_complete():
    bps = BeaconPeriodSet.of([1, 2])
    ch = ChannelSet(2)
    sched = Schedule.of({0: 0, 1: 1, 2: 1, 3: 0})
    rep = discovery_times(sched, bps, ch)
    fractions = [f for _, f in rep.ndot]
    assert fractions == sorted(fractions)
    assert fractions[-1] == 1


def _random_schedule(draw_slots, draw_channels):
    return Schedule.of(dict(zip(draw_slots, draw_channels)))


@settings(max_examples=60)
@given(
    periods=st.sets(st.integers(1, 6), min_size=1, max_size=3),
    nc=st.integers(1, 3),
    scans=st.dictionaries(st.integers(0, 30), st.integers(0, 2), max_size=20),
    extra_slot=st.integers(0, 30),
    extra_channel=st.integers(0, 2),
)
def test_adding_a_scan_never_delays_discovery(periods, nc, scans, extra_slot, extra_channel):
    bps = BeaconPeriodSet.of(periods)
    ch = ChannelSet(nc)
    scans = {t: c % nc for t, c in scans.items()}
    base = discovery_times(Schedule.of(scans), bps, ch)
    grown = dict(scans)
    grown.setdefault(extra_slot, extra_channel % nc)
    more = discovery_times(Schedule.of(grown), bps, ch)
    base_by_key = {cfg.key: t for cfg, t in base.times.items()}
    for cfg, t in more.times.items():
        t0 = base_by_key[cfg.key]
        if t0 is not None:
            assert t is not None and t <= t0


@settings(max_examples=40)
@given(
    periods=st.sets(st.integers(1, 6), min_size=1, max_size=3),
    nc=st.integers(1, 3),
)
def test_complete_schedules_respect_the_wdt_lower_bound(periods, nc):
    # a trivially complete schedule: every channel for lcm consecutive slots
    bps = BeaconPeriodSet.of(periods)
    ch = ChannelSet(nc)
    scans = {}
    for c in range(nc):
        for t in range(c * bps.lcm, (c + 1) * bps.lcm):
            scans[t] = c
    rep = discovery_times(Schedule.of(scans), bps, ch)
    assert rep.complete
    assert rep.wdt >= optimal_wdt(bps, ch)


def test_switch_count_ignores_idle_gaps():
    assert channel_switch_count(Schedule.of({0: 0, 2: 0})) == 0
    assert channel_switch_count(Schedule.of({0: 0, 2: 1})) == 1
    assert channel_switch_count(Schedule.of({})) == 0
