import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ndisco.core import BeaconPeriodSet, ChannelSet, discovery_times
from ndisco.schedulers import greedy, psv
from ndisco import sim


def _scenario(**overrides):
    base = dict(
        bps=BeaconPeriodSet.of([1, 2, 4]),
        channels=ChannelSet(2),
        neighbor_count=25,
        deaf_fraction=0.0,
        trials=10,
        seed=1234,
        scenario_id="t",
    )
    base.update(overrides)
    return sim.Scenario(**base)


def test_sampling_is_deterministic():
    s = _scenario()
    assert sim.sample_neighbors(s, trial=3) == sim.sample_neighbors(s, trial=3)
    assert sim.sample_neighbors(s, trial=3) != sim.sample_neighbors(s, trial=4)


def test_sampling_respects_the_domain():
    s = _scenario(neighbor_count=500)
    for nb in sim.sample_neighbors(s):
        assert nb.period in s.bps.periods
        assert 0 <= nb.offset < nb.period
        assert 0 <= nb.channel < s.channels.count
        assert 0.0 <= nb.phase < 1.0


def test_period_frequencies_converge():
    s = _scenario(bps=BeaconPeriodSet.of([1, 2]), neighbor_count=100_000)
    pop = sim.sample_neighbors(s)
    share = sum(nb.period == 2 for nb in pop) / len(pop)
    assert abs(share - 0.5) < 0.01


def test_zero_deaf_matches_exact_discovery_times():
    bps = BeaconPeriodSet.of([1, 2, 4])
    ch = ChannelSet(2)
    schedule = greedy(bps, ch)
    exact = {
        cfg.key: t for cfg, t in discovery_times(schedule, bps, ch).times.items()
    }
    pop = sim.sample_neighbors(_scenario(neighbor_count=200))
    outcome = sim.run_trial(schedule, pop, 0.0)
    assert outcome.success_rate == 1.0
    for nb, t in zip(pop, outcome.times):
        assert t == exact[(nb.channel, nb.period, nb.offset)]


def test_deaf_slot_hand_trace():
    # PSV over B={2}, |C|=2 scans c0@{0,1}, c1@{2,3}; slot 2 follows a switch.
    bps = BeaconPeriodSet.of([2])
    ch = ChannelSet(2)
    schedule = psv(bps, ch)
    shy = sim.Neighbor(channel=1, period=2, offset=0, phase=0.1)
    bold = sim.Neighbor(channel=1, period=2, offset=0, phase=0.5)
    outcome = sim.run_trial(schedule, [shy], 0.25)
    assert outcome.times == (None,)
    assert outcome.success_rate == 0.0
    assert outcome.smdt is None and outcome.swdt is None
    outcome = sim.run_trial(schedule, [bold], 0.25)
    assert outcome.times == (2,)


def test_first_scan_slot_is_not_a_switch():
    bps = BeaconPeriodSet.of([1])
    schedule = psv(bps, ChannelSet(1))
    nb = sim.Neighbor(channel=0, period=1, offset=0, phase=0.0)
    assert sim.run_trial(schedule, [nb], 0.9).times == (0,)


@settings(max_examples=25, deadline=None)
@given(
    deaf_lo=st.floats(0.0, 0.9),
    bump=st.floats(0.0, 0.09),
    seed=st.integers(0, 2**32 - 1),
)
def test_success_rate_nonincreasing_in_deaf_fraction(deaf_lo, bump, seed):
    bps = BeaconPeriodSet.of([1, 2, 4])
    ch = ChannelSet(3)
    schedule = greedy(bps, ch)
    pop = sim.sample_neighbors(_scenario(channels=ch, seed=seed, neighbor_count=40))
    low = sim.run_trial(schedule, pop, deaf_lo)
    high = sim.run_trial(schedule, pop, min(deaf_lo + bump, 0.999))
    assert high.success_rate <= low.success_rate


def test_sndot_terminal_value_is_the_success_rate():
    schedule = greedy(BeaconPeriodSet.of([1, 2, 4]), ChannelSet(2))
    pop = sim.sample_neighbors(_scenario(neighbor_count=60, seed=7))
    outcome = sim.run_trial(schedule, pop, 0.3)
    if outcome.sndot:
        assert outcome.sndot[-1][1] == pytest.approx(outcome.success_rate)
    assert all(b[1] >= a[1] for a, b in zip(outcome.sndot, outcome.sndot[1:]))


def test_evaluate_rows_and_determinism():
    grid = [(_scenario(trials=20), ["psv", "greedy-first"])]
    m1, c1 = sim.evaluate(grid)
    m2, c2 = sim.evaluate(grid)
    assert m1 == m2 and c1 == c2
    keys = {(r.strategy, r.metric) for r in m1}
    for strat in ("psv", "greedy-first"):
        for metric in ("success_rate", "smdt_norm", "swdt_norm", "switches"):
            assert (strat, metric) in keys
    for r in m1:
        if r.metric == "success_rate":
            assert r.mean == 1.0 and r.ci95 == 0.0


def test_evaluate_curves_are_normalized_and_monotone():
    _, curves = sim.evaluate([(_scenario(trials=5), ["psv"])])
    fractions = [r.fraction for r in curves]
    assert fractions == sorted(fractions)
    assert all(0 < r.normalized_time <= 1.0 for r in curves)


def test_ilp_normalization_smoke():
    grid = [(_scenario(trials=3, neighbor_count=5), ["greedy-first"])]
    rows, _ = sim.evaluate(grid, normalize_ilp=True)
    smdt = next(r for r in rows if r.metric == "smdt_norm")
    assert smdt.mean >= 1.0  # normalized by the per-trial optimum


def test_ilp_normalization_refuses_large_horizons():
    grid = [(_scenario(trials=1, neighbor_count=3), ["greedy-first"])]
    with pytest.raises(ValueError):
        sim.evaluate(grid, normalize_ilp=True, ilp_t_max_ceiling=2)


def test_csv_writers(tmp_path):
    rows, curves = sim.evaluate([(_scenario(trials=4), ["psv"])])
    mp, cp = tmp_path / "m.csv", tmp_path / "c.csv"
    sim.write_metrics_csv(rows, str(mp))
    sim.write_curves_csv(curves, str(cp))
    header = mp.read_text().splitlines()[0]
    assert header == "scenario_id,strategy,metric,mean,ci95"
    header = cp.read_text().splitlines()[0]
    assert header == "scenario_id,strategy,normalized_time,fraction"


def test_ci_halfwidth_formula():
    m, ci = sim._ci95([1.0, 2.0, 3.0])
    assert m == 2.0
    assert ci == pytest.approx(sim.Z95 * 1.0 / math.sqrt(3))
    assert sim._ci95([5.0]) == (5.0, 0.0)
