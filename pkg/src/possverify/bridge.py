"""Possibility to probability conversion and log-score verification.

The conversion keeps the forecast's ignorance as an explicit extra outcome
(the last entry of every :class:`ProbabilityVector`), so a hedging forecast
pays for the mass it did not commit. That outcome is never observed.

All logarithms are base 2 (bits). The epsilon floor is applied only when a
probability is scored, never inside the conversion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import PossibilityForecast, Universe
from .errors import (
    EmptySample,
    InvalidCategory,
    InvalidEpsilon,
    MissingClimatology,
    UniverseMismatch,
)

DEFAULT_EPSILON = 0.01
GROUP_DECIMALS = 6


@dataclass(frozen=True)
class ProbabilityVector:
    """K category probabilities followed by the ignorance outcome."""

    p: tuple[float, ...]
    universe: Universe

    @property
    def ignorance(self) -> float:
        return self.p[-1]

    @property
    def values(self) -> np.ndarray:
        return np.asarray(self.p, dtype=float)

    def __getitem__(self, i: int) -> float:
        return self.p[i]


@dataclass(frozen=True)
class SurpriseReport:
    surprise_bits: float
    floored: bool
    epsilon: float


@dataclass(frozen=True)
class Decomposition:
    mean_surprise: float
    unc: float
    dsc: float
    rel: float
    groups: int
    count: int

    @property
    def information_gain(self) -> float:
        """Gain over the sample base rate: ``DSC - REL``."""
        return self.dsc - self.rel


def convert(f: PossibilityForecast) -> ProbabilityVector:
    total = math.fsum(f.pi)
    scale = f.commitment / total
    return ProbabilityVector(tuple(x * scale for x in f.pi) + (f.ignorance,), f.universe)


def naive_normalise(f: PossibilityForecast) -> ProbabilityVector:
    """Plain ``pi / sum(pi)``; discards ignorance. For contrast only."""
    total = math.fsum(f.pi)
    return ProbabilityVector(tuple(x / total for x in f.pi) + (0.0,), f.universe)


def climatology_vector(universe: Universe) -> ProbabilityVector:
    if universe.climatology is None:
        raise MissingClimatology("universe has no climatology")
    return ProbabilityVector(tuple(universe.climatology) + (0.0,), universe)


def check_epsilon(epsilon: float) -> float:
    eps = float(epsilon)
    if not 0.0 < eps < 0.5:
        raise InvalidEpsilon(f"epsilon must lie in (0, 0.5), got {epsilon}")
    return eps


def _check_obs(p: ProbabilityVector, c_obs: int) -> int:
    k = p.universe.size
    if isinstance(c_obs, bool) or not 0 <= int(c_obs) < k:
        # the ignorance outcome (index K) is never a valid observation
        raise InvalidCategory(f"observed index {c_obs} outside [0, {k})")
    return int(c_obs)


def surprise(p: ProbabilityVector, c_obs: int, epsilon: float = DEFAULT_EPSILON) -> SurpriseReport:
    eps = check_epsilon(epsilon)
    prob = p.p[_check_obs(p, c_obs)]
    floor_hit = prob < eps
    return SurpriseReport(-math.log2(max(prob, eps)), floor_hit, eps)


def information_gain(
    baseline: ProbabilityVector,
    forecast: ProbabilityVector,
    c_obs: int,
    epsilon: float = DEFAULT_EPSILON,
) -> float:
    """Bits of surprise saved by ``forecast`` relative to ``baseline``."""
    if baseline.universe.categories != forecast.universe.categories:
        raise UniverseMismatch("baseline and forecast use different universes")
    return (surprise(baseline, c_obs, epsilon).surprise_bits
            - surprise(forecast, c_obs, epsilon).surprise_bits)


def _kl_bits(obs_freq: np.ndarray, forecast: np.ndarray) -> np.ndarray:
    """Row-wise KL divergence in bits; terms with zero observed frequency vanish."""
    mask = obs_freq > 0
    safe_f = np.where(mask, forecast, 1.0)
    safe_o = np.where(mask, obs_freq, 1.0)
    return np.sum(np.where(mask, obs_freq * np.log2(safe_o / safe_f), 0.0), axis=-1)


def group_ids(vectors: np.ndarray, decimals: int = GROUP_DECIMALS) -> np.ndarray:
    """Label rows sharing the same vector after rounding to ``decimals``."""
    rounded = np.round(np.asarray(vectors, dtype=float), decimals) + 0.0  # folds -0.0
    _, inverse = np.unique(rounded, axis=0, return_inverse=True)
    return inverse.reshape(-1)


def decompose_arrays(
    probs: np.ndarray,
    observed: np.ndarray,
    epsilon: float = DEFAULT_EPSILON,
    weights: np.ndarray | None = None,
    groups: np.ndarray | None = None,
) -> Decomposition:
    """Decomposition over an ``(n, K+1)`` array of converted forecasts.

    ``weights`` are per-record multiplicities (a bootstrap resample is just a
    weight vector); ``groups`` may be precomputed with :func:`group_ids`.
    """
    eps = check_epsilon(epsilon)
    probs = np.asarray(probs, dtype=float)
    observed = np.asarray(observed, dtype=np.int64)
    n_rec, n_out = probs.shape
    if n_rec == 0:
        raise EmptySample("cannot decompose an empty sample")
    w = np.ones(n_rec) if weights is None else np.asarray(weights, dtype=float)
    total = w.sum()
    if total <= 0:
        raise EmptySample("sample has zero total weight")
    if groups is None:
        groups = group_ids(probs)
    n_groups = int(groups.max()) + 1

    floored = np.maximum(probs, eps)
    surprises = -np.log2(floored[np.arange(n_rec), observed])
    mean_surprise = float(np.dot(w, surprises) / total)

    group_w = np.bincount(groups, weights=w, minlength=n_groups)
    # group forecast = weighted mean of members (identical under exact grouping)
    group_f = np.zeros((n_groups, n_out))
    np.add.at(group_f, groups, floored * w[:, None])
    counts = np.zeros((n_groups, n_out))
    np.add.at(counts, (groups, observed), w)

    lo = np.full((n_groups, n_out), np.inf)
    hi = np.full((n_groups, n_out), -np.inf)
    np.minimum.at(lo, groups, floored)
    np.maximum.at(hi, groups, floored)

    live = group_w > 0
    group_w, group_f, counts = group_w[live], group_f[live], counts[live]
    lo, hi = lo[live], hi[live]
    group_f /= group_w[:, None]
    # members that agree exactly keep their exact value (no averaging noise)
    group_f = np.where(lo == hi, lo, group_f)
    group_freq = counts / group_w[:, None]
    base = counts.sum(axis=0) / total

    nz = base > 0
    unc = float(-np.sum(base[nz] * np.log2(base[nz])))
    dsc = float(np.dot(group_w, _kl_bits(group_freq, base[None, :])) / total)
    rel = float(np.dot(group_w, _kl_bits(group_freq, group_f)) / total)
    return Decomposition(mean_surprise, unc, dsc, rel, int(live.sum()), n_rec)


def decompose(
    sample: Iterable[tuple[ProbabilityVector, int]],
    epsilon: float = DEFAULT_EPSILON,
) -> Decomposition:
    """Split mean surprise into ``UNC - DSC + REL``.

    The base rate comes from the sample itself. Forecasts are grouped by
    their vectors rounded to six decimals. The identity is exact for any
    epsilon, but once the floor lifts a nonzero probability the floored
    vector sums past one and REL can dip slightly below zero.
    """
    sample = list(sample)
    if not sample:
        raise EmptySample("cannot decompose an empty sample")
    universe = sample[0][0].universe
    for p, _ in sample:
        if p.universe.categories != universe.categories:
            raise UniverseMismatch("sample mixes universes")
    observed = np.array([_check_obs(p, c) for p, c in sample], dtype=np.int64)
    probs = np.array([p.p for p, _ in sample], dtype=float)
    return decompose_arrays(probs, observed, epsilon)


def convert_all(forecasts: Sequence[PossibilityForecast]) -> np.ndarray:
    return np.array([convert(f).p for f in forecasts], dtype=float)
