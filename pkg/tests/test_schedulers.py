from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ndisco.core import (
    BeaconPeriodSet,
    ChannelSet,
    Schedule,
    discovery_times,
)
from ndisco.oracle import is_complete, is_recursive, is_wdt_optimal
from ndisco.schedulers import (
    STRATEGIES,
    ScheduleMatrix,
    TieBreak,
    chan_train,
    extend_recursive,
    greedy,
    opt_b2,
    per_slot_values,
    psv,
    recursive_f3,
)


def test_psv_layout():
    sched = psv(BeaconPeriodSet.of([1, 2, 3]), ChannelSet(3))
    assert [c for _, c in sched.sorted_scans()] == [0, 0, 0, 1, 1, 1, 2, 2, 2]


def test_psv_is_always_complete_and_wdt_optimal():
    for periods, nc in (((1, 2, 3), 3), ((2, 3, 4, 6, 12), 2), ((5,), 4)):
        bps = BeaconPeriodSet.of(periods)
        ch = ChannelSet(nc)
        assert is_wdt_optimal(psv(bps, ch), bps, ch)


def test_greedy_hand_trace_two_periods_two_channels():
    sched = greedy(BeaconPeriodSet.of([1, 2]), ChannelSet(2))
    assert [(t, c) for t, c in sched.sorted_scans()] == [(0, 0), (1, 1), (2, 1), (3, 0)]
    rep = discovery_times(sched, BeaconPeriodSet.of([1, 2]), ChannelSet(2))
    assert rep.mdt == 1


def test_greedy_reference_mdt_values():
    rep = discovery_times(
        greedy(BeaconPeriodSet.of([1, 2, 3]), ChannelSet(3)),
        BeaconPeriodSet.of([1, 2, 3]),
        ChannelSet(3),
    )
    assert rep.mdt == Fraction(49, 18)
    bps = BeaconPeriodSet.of([2, 3, 4, 6, 12])
    rep = discovery_times(greedy(bps, ChannelSet(2)), bps, ChannelSet(2))
    assert rep.wdt == 24
    assert rep.mdt == Fraction(53, 10)


@pytest.mark.parametrize("tie", list(TieBreak))
def test_greedy_is_deterministic_per_tiebreak(tie):
    bps = BeaconPeriodSet.of([2, 3, 5])
    ch = ChannelSet(3)
    assert greedy(bps, ch, tie) == greedy(bps, ch, tie)


def test_chan_train_reference_wdt():
    bps = BeaconPeriodSet.of([2, 3, 4, 6, 12])
    ch = ChannelSet(2)
    rep = discovery_times(chan_train(bps, ch), bps, ch)
    assert rep.wdt == 24


def test_chan_train_differs_from_greedy_outside_chains():
    bps = BeaconPeriodSet.of([1, 2, 3, 6])
    ch = ChannelSet(3)
    assert chan_train(bps, ch) != greedy(bps, ch, TieBreak.FIRST)


def test_chan_train_matches_greedy_values_on_chains():
    bps = BeaconPeriodSet.of([1, 2, 4])
    ch = ChannelSet(2)
    assert per_slot_values(chan_train(bps, ch), bps, ch) == per_slot_values(
        greedy(bps, ch), bps, ch
    )
    assert is_recursive(chan_train(bps, ch), bps, ch)


def test_opt_b2_builds_recursive_schedules():
    for periods, nc in (((2, 3), 2), ((1, 7), 3), ((3, 5), 1)):
        bps = BeaconPeriodSet.of(periods)
        ch = ChannelSet(nc)
        assert is_recursive(opt_b2(bps, ch), bps, ch)


def test_opt_b2_rejects_other_sizes():
    with pytest.raises(ValueError):
        opt_b2(BeaconPeriodSet.of([1, 2, 3]), ChannelSet(2))


def test_recursive_f3_rejects_non_chains():
    with pytest.raises(ValueError):
        recursive_f3(BeaconPeriodSet.of([2, 3]), ChannelSet(2))


def test_recursive_f3_builds_recursive_schedules():
    for periods, nc in (((1, 2, 4), 2), ((2, 6, 12), 3), ((1, 3, 9), 1)):
        bps = BeaconPeriodSet.of(periods)
        ch = ChannelSet(nc)
        assert is_recursive(recursive_f3(bps, ch), bps, ch)


def test_matrix_validation():
    with pytest.raises(ValueError):
        ScheduleMatrix(entries=((0, 0), (0, 1)))  # duplicate in column 0
    with pytest.raises(ValueError):
        ScheduleMatrix(entries=((2,),))  # entry out of range
    m = ScheduleMatrix(entries=((0, 1), (1, 0)))
    assert m.period == 2 and m.n_channels == 2


def test_extend_recursive_preserves_mapped_slots():
    m = ScheduleMatrix(entries=((0,), (1,)))
    wide = extend_recursive(m, 2)
    assert set(m.to_schedule().sorted_scans()) <= set(wide.to_schedule().sorted_scans())


@settings(max_examples=30, deadline=None)
@given(
    chain=st.lists(st.integers(2, 4), min_size=1, max_size=3),
    start=st.integers(1, 3),
    nc=st.integers(1, 3),
)
def test_extension_chain_preserves_earlier_scans(chain, start, nc):
    periods = [start]
    for factor in chain:
        periods.append(periods[-1] * factor)
    base = ScheduleMatrix(
        entries=tuple(tuple(c for _ in range(start)) for c in range(nc))
    )
    matrix = base
    for b in periods[1:]:
        wider = extend_recursive(matrix, b)
        assert set(matrix.to_schedule().sorted_scans()) <= set(
            wider.to_schedule().sorted_scans()
        )
        matrix = wider
    bps = BeaconPeriodSet.of(periods)
    assert is_recursive(matrix.to_schedule(), bps, ChannelSet(nc))


@settings(max_examples=40, deadline=None)
@given(
    periods=st.sets(st.integers(1, 9), min_size=1, max_size=3),
    nc=st.integers(1, 3),
    tie=st.sampled_from(list(TieBreak)),
)
def test_greedy_and_chan_train_always_complete(periods, nc, tie):
    bps = BeaconPeriodSet.of(periods)
    ch = ChannelSet(nc)
    assert is_complete(greedy(bps, ch, tie), bps, ch)
    assert is_complete(chan_train(bps, ch), bps, ch)


def test_strategy_registry_names():
    assert set(STRATEGIES) == {
        "psv",
        "greedy-first",
        "greedy-stay",
        "greedy-lookahead",
        "chantrain",
        "optb2",
        "recursive-f3",
    }
    sched = STRATEGIES["greedy-stay"](BeaconPeriodSet.of([1, 2]), ChannelSet(2))
    assert isinstance(sched, Schedule)
