"""Peak-category reduction and contingency-table scores.

A forecast is reduced to its peak category (ties go to the most severe
category). Thresholds are category indices ``t >= 1``: the forecast says "yes"
when its peak is at or above ``t`` and the observation is "yes" when the
observed category is. Scores with a zero denominator are ``None``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import PossibilityForecast, Universe
from .errors import BadThreshold, EmptySample, UniverseMismatch


def peak_category(f: PossibilityForecast) -> int:
    m = f.commitment
    return max(i for i, x in enumerate(f.pi) if x == m)


@dataclass(frozen=True)
class ContingencyTable:
    a: int  # hits
    b: int  # false alarms
    c: int  # misses
    d: int  # correct negatives
    threshold: int

    @property
    def n(self) -> int:
        return self.a + self.b + self.c + self.d

    def __add__(self, other: "ContingencyTable") -> "ContingencyTable":
        if other.threshold != self.threshold:
            raise BadThreshold("cannot merge tables built at different thresholds")
        return ContingencyTable(
            self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d,
            self.threshold,
        )


@dataclass(frozen=True)
class CategoricalScores:
    pod: float | None
    far: float | None
    csi: float | None
    pss: float | None
    hss: float | None

    def as_dict(self) -> dict[str, float | None]:
        return {"pod": self.pod, "far": self.far, "csi": self.csi,
                "pss": self.pss, "hss": self.hss}


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts indexed ``[peak, observed]``."""

    counts: tuple[tuple[int, ...], ...]
    universe: Universe

    @property
    def array(self) -> np.ndarray:
        return np.array(self.counts, dtype=np.int64)

    @property
    def n(self) -> int:
        return int(sum(map(sum, self.counts)))


def _universe_of(pairs: Sequence) -> Universe:
    if not pairs:
        raise EmptySample("no forecast-observation pairs")
    universe = pairs[0].forecast.universe
    for p in pairs:
        if p.forecast.universe != universe:
            raise UniverseMismatch("pairs are defined over different universes")
    return universe


def check_threshold(threshold: int, universe: Universe) -> int:
    t = int(threshold)
    if not 1 <= t <= universe.size - 1:
        raise BadThreshold(
            f"threshold index {t} outside [1, {universe.size - 1}]"
        )
    return t


def tally(peaks: Iterable[int], observed: Iterable[int], threshold: int) -> ContingencyTable:
    a = b = c = d = 0
    for fc, ob in zip(peaks, observed):
        yes_f, yes_o = fc >= threshold, ob >= threshold
        if yes_f and yes_o:
            a += 1
        elif yes_f:
            b += 1
        elif yes_o:
            c += 1
        else:
            d += 1
    return ContingencyTable(a, b, c, d, threshold)


def contingency(pairs: Sequence, threshold: int) -> ContingencyTable:
    universe = _universe_of(pairs)
    t = check_threshold(threshold, universe)
    return tally((peak_category(p.forecast) for p in pairs), (p.observed for p in pairs), t)


def _ratio(num: float, den: float) -> float | None:
    return num / den if den else None


def scores_from_counts(a: float, b: float, c: float, d: float) -> CategoricalScores:
    """The five threshold scores; counts may be non-integer (weighted)."""
    pod = _ratio(a, a + c)
    pofd = _ratio(b, b + d)
    hss_den = (a + c) * (c + d) + (a + b) * (b + d)
    return CategoricalScores(
        pod=pod,
        far=_ratio(b, a + b),
        csi=_ratio(a, a + b + c),
        pss=None if pod is None or pofd is None else pod - pofd,
        hss=_ratio(2.0 * (a * d - b * c), hss_den),
    )


def binary_scores(table: ContingencyTable) -> CategoricalScores:
    return scores_from_counts(table.a, table.b, table.c, table.d)


def confusion(pairs: Sequence) -> ConfusionMatrix:
    universe = _universe_of(pairs)
    k = universe.size
    counts = np.zeros((k, k), dtype=np.int64)
    for p in pairs:
        counts[peak_category(p.forecast), p.observed] += 1
    return ConfusionMatrix(tuple(tuple(int(x) for x in row) for row in counts), universe)


def hss_from_array(counts: np.ndarray) -> float | None:
    counts = np.asarray(counts, dtype=float)
    n = counts.sum()
    if n <= 0:
        return None
    correct = np.trace(counts)
    expected = float(counts.sum(axis=1) @ counts.sum(axis=0)) / n
    if n == expected:
        return None
    return float((correct - expected) / (n - expected))


def hss_multicategory(cm: ConfusionMatrix | np.ndarray) -> float | None:
    """Multi-category Heidke skill: agreement beyond marginal-matching chance."""
    counts = cm.array if isinstance(cm, ConfusionMatrix) else cm
    return hss_from_array(counts)
