"""Two-version comparison scorecard with bootstrap significance.

Every metric is written as a function of per-record weights, so the point
estimate uses unit weights and a bootstrap resample uses the multiplicity
of each record in the resample. In paired mode both versions share the
resampled indices (same observations, record by record).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import bridge
from .categorical import check_threshold, hss_from_array, peak_category, scores_from_counts
from .errors import EmptySample, PossibilityError, UniverseMismatch, UnpairedSamples
from .scorecard import score_pair

HIGHER = "higher-better"
LOWER = "lower-better"
CONTEXT = "context-dependent"

FACETS = {
    "possibilistic": ("alpha_star", "eta", "delta", "ignorance", "nc_star"),
    "probabilistic": ("ig", "dsc", "rel", "mean_surprise"),
    "categorical": ("pod", "far", "csi", "pss", "hss"),
}

_ORIENTATION = {
    "alpha_star": HIGHER, "delta": HIGHER, "nc_star": HIGHER, "ig": HIGHER,
    "dsc": HIGHER, "pod": HIGHER, "csi": HIGHER, "pss": HIGHER, "hss": HIGHER,
    "eta": LOWER, "rel": LOWER, "far": LOWER, "mean_surprise": LOWER,
    "ignorance": CONTEXT,
}

SMALL, MEDIUM = 0.02, 0.05


class UnknownMetric(PossibilityError, KeyError):
    pass


def orientation_registry() -> dict[str, str]:
    return dict(_ORIENTATION)


def orientation(metric: str) -> str:
    try:
        return _ORIENTATION[metric]
    except KeyError:
        raise UnknownMetric(f"no orientation registered for {metric!r}") from None


def metric_range(metric: str, k: int) -> float:
    """Width of a metric's natural range, used to bucket change magnitude."""
    if metric == "eta":
        return 1.0 - 1.0 / k
    if metric == "delta":
        return 2.0 * (1.0 - 1.0 / k)
    if metric in ("pss", "hss"):
        return 2.0
    if metric in ("ig", "dsc", "rel", "mean_surprise"):
        return math.log2(k)
    return 1.0


@dataclass(frozen=True)
class CompareSettings:
    resamples: int = 1000
    confidence: float = 0.95
    seed: int = 0
    threshold: int = 1
    epsilon: float = bridge.DEFAULT_EPSILON
    paired: bool = True


@dataclass(frozen=True)
class MetricDelta:
    metric: str
    facet: str
    baseline: float | None
    candidate: float | None
    delta: float | None
    orientation: str
    significant: bool
    magnitude: str | None
    verdict: str
    ci_low: float | None = None
    ci_high: float | None = None


@dataclass(frozen=True)
class ComparisonReport:
    facets: dict[str, tuple[MetricDelta, ...]]
    baseline_n: int
    candidate_n: int
    settings: CompareSettings = field(default_factory=CompareSettings)

    @property
    def rows(self) -> list[MetricDelta]:
        return [row for facet in FACETS for row in self.facets[facet]]

    def __getitem__(self, metric: str) -> MetricDelta:
        for row in self.rows:
            if row.metric == metric:
                return row
        raise UnknownMetric(metric)


class _SampleArrays:
    """Per-record arrays for one version, computed once."""

    def __init__(self, pairs: Sequence, threshold: int, epsilon: float):
        if not pairs:
            raise EmptySample("comparison sample is empty")
        self.universe = pairs[0].forecast.universe
        self.k = self.universe.size
        rows = [score_pair(p) for p in pairs]
        self.per_record = {
            name: np.array([getattr(r, name) for r in rows]) for name in FACETS["possibilistic"]
        }
        self.observed = np.array([p.observed for p in pairs], dtype=np.int64)
        self.probs = bridge.convert_all([p.forecast for p in pairs])
        self.groups = bridge.group_ids(self.probs)
        idx = np.arange(len(pairs))
        clim = np.asarray(bridge.climatology_vector(self.universe).p)
        s_fc = -np.log2(np.maximum(self.probs[idx, self.observed], epsilon))
        s_clim = -np.log2(np.maximum(clim[self.observed], epsilon))
        self.per_record["ig"] = s_clim - s_fc
        self.peaks = np.array([peak_category(p.forecast) for p in pairs], dtype=np.int64)
        self.fc_yes = self.peaks >= threshold
        self.obs_yes = self.observed >= threshold
        self.epsilon = epsilon

    def __len__(self) -> int:
        return len(self.observed)

    def metrics(self, w: np.ndarray) -> dict[str, float | None]:
        total = w.sum()
        out: dict[str, float | None] = {
            name: float(np.dot(w, x) / total) for name, x in self.per_record.items()
        }
        dec = bridge.decompose_arrays(self.probs, self.observed, self.epsilon, w, self.groups)
        out.update(dsc=dec.dsc, rel=dec.rel, mean_surprise=dec.mean_surprise)
        a = float(w[self.fc_yes & self.obs_yes].sum())
        b = float(w[self.fc_yes & ~self.obs_yes].sum())
        c = float(w[~self.fc_yes & self.obs_yes].sum())
        d = float(w[~self.fc_yes & ~self.obs_yes].sum())
        scores = scores_from_counts(a, b, c, d)
        out.update(pod=scores.pod, far=scores.far, csi=scores.csi, pss=scores.pss)
        cm = np.zeros((self.k, self.k))
        np.add.at(cm, (self.peaks, self.observed), w)
        out["hss"] = hss_from_array(cm)
        return out


def _bucket(delta: float | None, metric: str, k: int) -> str | None:
    if delta is None:
        return None
    rel = abs(delta) / metric_range(metric, k)
    return "small" if rel < SMALL else "medium" if rel < MEDIUM else "large"


def _verdict(delta: float | None, significant: bool, orient: str) -> str:
    if delta is None:
        return "undefined"
    if not significant:
        return "unchanged"
    if orient == CONTEXT:
        return "changed"
    better = delta > 0 if orient == HIGHER else delta < 0
    return "improved" if better else "degraded"


def _diff(x: float | None, y: float | None) -> float | None:
    return None if x is None or y is None else y - x


def compare(baseline: Sequence, candidate: Sequence, settings: CompareSettings | None = None) -> ComparisonReport:
    settings = settings or CompareSettings()
    if not baseline or not candidate:
        raise EmptySample("both samples must be nonempty")
    universe = baseline[0].forecast.universe
    for p in list(baseline) + list(candidate):
        if p.forecast.universe.categories != universe.categories:
            raise UniverseMismatch("samples use different universes")
    if settings.resamples < 1:
        raise PossibilityError("resamples must be positive")
    if not 0.0 < settings.confidence < 1.0:
        raise PossibilityError("confidence must lie in (0, 1)")
    threshold = check_threshold(settings.threshold, universe)
    eps = bridge.check_epsilon(settings.epsilon)
    if settings.paired and (
        len(baseline) != len(candidate)
        or any(b.observed != c.observed for b, c in zip(baseline, candidate))
    ):
        raise UnpairedSamples("paired comparison needs the same observations in the same order")

    base = _SampleArrays(baseline, threshold, eps)
    cand = _SampleArrays(candidate, threshold, eps)
    point_b = base.metrics(np.ones(len(base)))
    point_c = cand.metrics(np.ones(len(cand)))

    names = [m for facet in FACETS.values() for m in facet]
    boot: dict[str, list[float]] = {m: [] for m in names}
    for r in range(settings.resamples):
        rng = np.random.default_rng([settings.seed, r])
        wb = np.bincount(rng.integers(0, len(base), len(base)), minlength=len(base)).astype(float)
        if settings.paired:
            wc = wb
        else:
            wc = np.bincount(rng.integers(0, len(cand), len(cand)), minlength=len(cand)).astype(float)
        mb, mc = base.metrics(wb), cand.metrics(wc)
        for m in names:
            d = _diff(mb[m], mc[m])
            if d is not None:
                boot[m].append(d)

    tail = 100.0 * (1.0 - settings.confidence) / 2.0
    facets = {}
    for facet, members in FACETS.items():
        rows = []
        for m in members:
            delta = _diff(point_b[m], point_c[m])
            orient = orientation(m)
            lo = hi = None
            significant = False
            if delta is not None and boot[m]:
                lo, hi = (float(v) for v in np.percentile(boot[m], [tail, 100.0 - tail]))
                significant = lo > 0.0 or hi < 0.0
            rows.append(MetricDelta(
                metric=m, facet=facet, baseline=point_b[m], candidate=point_c[m],
                delta=delta, orientation=orient, significant=significant,
                magnitude=_bucket(delta, m, universe.size),
                verdict=_verdict(delta, significant, orient), ci_low=lo, ci_high=hi,
            ))
        facets[facet] = tuple(rows)
    return ComparisonReport(facets, len(baseline), len(candidate), settings)
