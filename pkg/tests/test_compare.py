import dataclasses

import pytest

from possverify.compare import (
    CONTEXT,
    FACETS,
    HIGHER,
    LOWER,
    CompareSettings,
    UnknownMetric,
    compare,
    metric_range,
    orientation,
    orientation_registry,
)
from possverify.core import Universe, validate
from possverify.errors import EmptySample, UniverseMismatch, UnpairedSamples
from possverify.scorecard import VerificationPair
from possverify.synthgen import SynthConfig, generate

FAST = CompareSettings(resamples=200, seed=5)


@pytest.fixture(scope="module")
def sample():
    return generate(SynthConfig(n=200, seed=4)).pairs


def test_self_comparison_is_flat(sample):
    report = compare(sample, sample, FAST)
    for row in report.rows:
        assert row.delta in (0.0, None)
        assert not row.significant
        assert row.verdict in ("unchanged", "undefined")


def test_every_metric_once(sample):
    report = compare(sample, sample, FAST)
    names = [r.metric for r in report.rows]
    assert sorted(names) == sorted(m for ms in FACETS.values() for m in ms)
    assert len(names) == len(set(names))
    assert set(report.facets) == set(FACETS)


def _sharpen(pair, bump):
    """Raise the observed category's possibility by ``bump`` (capped at the peak)."""
    pi = list(pair.forecast.pi)
    top = max(pi)
    pi[pair.observed] = min(top, pi[pair.observed] + bump * top)
    return VerificationPair(validate(pi, pair.forecast.universe), pair.observed, pair.id)


def test_constructed_improvement(sample):
    better = [_sharpen(p, 0.2) for p in sample]
    report = compare(sample, better, FAST)
    a = report["alpha_star"]
    assert a.delta > 0 and a.significant and a.verdict == "improved"
    d = report["delta"]
    assert d.significant and d.verdict == "improved"
    assert report["ignorance"].delta == pytest.approx(0.0, abs=1e-12)
    assert report["ig"].verdict == "improved"


def test_context_metric_never_judged(sample):
    vaguer = [
        VerificationPair(validate([0.5 * x for x in p.forecast.pi]), p.observed, p.id)
        for p in sample
    ]
    row = compare(sample, vaguer, FAST)["ignorance"]
    assert row.significant and row.verdict == "changed"
    assert row.orientation == CONTEXT


def test_orientation_registry():
    reg = orientation_registry()
    assert reg["far"] == LOWER and reg["pod"] == HIGHER and reg["eta"] == LOWER
    assert reg["ignorance"] == CONTEXT
    assert set(reg) == {m for ms in FACETS.values() for m in ms}
    with pytest.raises(UnknownMetric):
        orientation("brier")


def test_metric_range():
    assert metric_range("eta", 6) == pytest.approx(5 / 6)
    assert metric_range("delta", 6) == pytest.approx(5 / 3)
    assert metric_range("hss", 6) == 2.0
    assert metric_range("pod", 6) == 1.0


def test_deterministic(sample):
    half = sample[:80]
    other = [_sharpen(p, 0.05) for p in half]
    s = dataclasses.replace(FAST, resamples=100)
    assert compare(half, other, s) == compare(half, other, s)


def test_unpaired_mode(sample):
    other = generate(SynthConfig(n=150, seed=9)).pairs
    with pytest.raises(UnpairedSamples):
        compare(sample, other, FAST)
    report = compare(sample, other, dataclasses.replace(FAST, paired=False))
    assert report.baseline_n == 200 and report.candidate_n == 150


def test_errors(sample):
    with pytest.raises(EmptySample):
        compare([], sample, FAST)
    tiny = Universe(("lo", "hi"), (0.5, 0.5))
    foreign = [VerificationPair(validate([1.0, 0.2], tiny), 0)]
    with pytest.raises(UniverseMismatch):
        compare(sample[:1], foreign, FAST)
