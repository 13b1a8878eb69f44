import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import SCENARIO_PI
from possverify.core import validate
from possverify.errors import EmptySample, InvalidCategory
from possverify.scorecard import (
    VerificationPair,
    aggregate,
    floored,
    joint_skill,
    score_pair,
)
from test_core import forecasts

K = 6

TABLE = {  # alpha*, eta, delta, ignorance, nc*
    "A": (1.00, 0.222, 0.778, 0.10, 0.833),
    "B": (1.00, 0.439, 0.561, 0.45, 0.273),
    "C": (0.00, 0.196, -0.196, 0.15, 0.00),
}


@pytest.mark.parametrize("name", "ABC")
def test_scenario_rows(scenarios, name):
    row = score_pair(scenarios[name])
    got = (row.alpha_star, row.eta, row.delta, row.ignorance, row.nc_star)
    assert got == pytest.approx(TABLE[name], abs=1e-3)
    assert row.delta == row.alpha_star - row.eta
    assert row.joint_skill == pytest.approx(row.alpha_star * (1 - row.eta), abs=1e-12)


def test_joint_skill(scenarios):
    assert joint_skill(score_pair(scenarios["A"])) == pytest.approx(1.0 * (1 - 1.2 / 5.4))
    uniform = score_pair(VerificationPair(validate([0.3] * 6), 2))
    assert uniform.eta == 1.0 and joint_skill(uniform) == 0.0
    assert joint_skill(score_pair(scenarios["C"])) == 0.0


def test_aggregate_single_row(scenarios):
    row = score_pair(scenarios["B"])
    agg = aggregate([row])
    assert agg.count == 1
    for name in ("alpha_star", "eta", "delta", "ignorance", "nc_star"):
        assert agg.means[name] == getattr(row, name)


def test_aggregate_two_rows(scenarios):
    rows = [score_pair(scenarios["A"]), score_pair(scenarios["B"])]
    agg = aggregate(rows)
    assert agg.means["alpha_star"] == 1.0
    # two-row arithmetic mean of the exact deltas 7/9 and 1 - 1.45/3.3
    assert agg.means["delta"] == pytest.approx((7 / 9 + (1 - 1.45 / 3.3)) / 2, abs=1e-12)
    assert agg.means["delta"] == pytest.approx(0.669192, abs=1e-6)
    assert sum(n for n, _ in agg.by_category.values()) == 2


def test_aggregate_empty():
    with pytest.raises(EmptySample):
        aggregate([])


def test_aggregate_order_independent(scenario_pairs):
    rows = [score_pair(p) for p in scenario_pairs] * 7
    assert aggregate(rows).means == aggregate(rows[::-1]).means


def test_pair_rejects_bad_observation():
    with pytest.raises(InvalidCategory):
        VerificationPair(validate([1, 0, 0, 0, 0, 0]), 6)
    with pytest.raises(InvalidCategory):
        VerificationPair(validate([1, 0, 0, 0, 0, 0]), "MDT")


def test_flooring_experiment(scenarios):
    def delta_shift(name):
        pair = scenarios[name]
        before = score_pair(pair).delta
        after = score_pair(VerificationPair(floored(pair.forecast, 0.01), pair.observed)).delta
        return after - before

    assert delta_shift("C") == pytest.approx(0.006, abs=1e-3)
    assert delta_shift("A") == pytest.approx(-0.004, abs=1e-3)


def test_tied_peak_has_zero_dominance():
    row = score_pair(VerificationPair(validate([0.3, 0.5, 0.5, 0, 0, 0]), 1))
    assert row.alpha_star == 1.0 and row.nc_star == 0.0


@given(forecasts(), st.integers(0, K - 1), st.floats(min_value=0.01, max_value=1.0))
def test_scale_invariance(f, obs, lam):
    assume(f.commitment > 1e-300)  # scaling a subnormal peak can underflow to zero
    base = score_pair(VerificationPair(f, obs))
    scaled = score_pair(VerificationPair(validate([lam * x for x in f.pi]), obs))
    for name in ("alpha_star", "eta", "delta", "nc_star"):
        assert getattr(scaled, name) == pytest.approx(getattr(base, name), abs=1e-12)
    assert scaled.ignorance == pytest.approx(1 - lam * f.commitment, abs=1e-12)


@given(forecasts(), st.integers(0, K - 1))
def test_structure_and_ranges(f, obs):
    row = score_pair(VerificationPair(f, obs))
    assert 1 / K - 1e-12 <= row.eta <= 1.0
    assert -(1 - 1 / K) - 1e-12 <= row.delta <= 1 - 1 / K + 1e-12
    assert 0.0 <= row.nc_star <= 1.0
    if row.nc_star > 0:
        assert row.alpha_star == 1.0
    top = [i for i, x in enumerate(f.pi) if x == f.commitment]
    if top == [obs]:
        runner_up = max(x for i, x in enumerate(f.pi) if i != obs)
        assert row.alpha_star == 1.0
        assert row.nc_star == pytest.approx(1 - runner_up / f.commitment, abs=1e-12)
    else:
        assert row.nc_star == 0.0
