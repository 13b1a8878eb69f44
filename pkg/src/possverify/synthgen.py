"""Seeded synthetic possibilistic reforecast.

Each record draws an observed category from climatology, picks a forecast
peak (correct or a near miss), builds an exponential-decay shape around the
peak and scales it down to a subnormal peak ``1 - h``.

Record ``i`` uses its own generator seeded from ``(seed, i)``, so any subset of
records can be regenerated independently and in any order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .categorical import peak_category
from .core import SPC_CATEGORIES, SPC_CLIMATOLOGY, Universe, validate
from .errors import EmptySample, InvalidConfig
from .scorecard import VerificationPair

SHIFTS = (-2, -1, 1, 2)


@dataclass(frozen=True)
class SynthConfig:
    n: int = 800
    categories: tuple[str, ...] = SPC_CATEGORIES
    climatology: tuple[float, ...] = SPC_CLIMATOLOGY
    p_correct: tuple[float, float] = (0.82, 0.18)
    # exponent on the severity fraction; 1 is a straight line between endpoints
    p_correct_shape: float = 4.0
    shift_probs: dict[int, float] = field(
        default_factory=lambda: {-2: 0.1, -1: 0.4, 1: 0.4, 2: 0.1}
    )
    sigma_mean: tuple[float, float] = (2.6, 0.7)
    sigma_spread: float = 0.3
    sigma_min: float = 0.1
    ignorance_mean: tuple[float, float] = (0.06, 0.52)
    ignorance_spread: float = 0.10
    ignorance_max: float = 0.95
    noise: float = 0.03
    seed: int = 0

    @property
    def universe(self) -> Universe:
        return Universe(self.categories, self.climatology)

    def validate(self) -> "SynthConfig":
        try:
            self.universe
        except ValueError as exc:
            raise InvalidConfig(str(exc)) from exc
        if self.n < 1:
            raise InvalidConfig("n must be positive")
        if not 0 <= self.seed < 2**64:
            raise InvalidConfig("seed must be an unsigned 64-bit integer")
        for lo, hi, name in ((*self.p_correct, "p_correct"),
                             (*self.ignorance_mean, "ignorance_mean")):
            if not (0.0 <= lo <= 1.0 and 0.0 <= hi <= 1.0):
                raise InvalidConfig(f"{name} endpoints must lie in [0, 1]")
        if min(self.sigma_mean) <= 0 or self.sigma_min <= 0:
            raise InvalidConfig("sigma must be positive")
        if self.p_correct_shape <= 0:
            raise InvalidConfig("p_correct_shape must be positive")
        if set(self.shift_probs) - set(SHIFTS) or any(v < 0 for v in self.shift_probs.values()):
            raise InvalidConfig("shift probabilities must be nonnegative, keyed by +-1/+-2")
        if math.fsum(self.shift_probs.values()) > 1.0 + 1e-9:
            raise InvalidConfig("shift probabilities sum above 1")
        if self.noise < 0 or self.sigma_spread < 0 or self.ignorance_spread < 0:
            raise InvalidConfig("spreads and noise must be nonnegative")
        if not 0.0 <= self.ignorance_max < 1.0:
            raise InvalidConfig("ignorance_max must lie in [0, 1)")
        return self

    def _lerp(self, ends: tuple[float, float], c: int) -> float:
        frac = c / (len(self.categories) - 1)
        return ends[0] + (ends[1] - ends[0]) * frac

    def correct_probability(self, c: int) -> float:
        frac = (c / (len(self.categories) - 1)) ** self.p_correct_shape
        lo, hi = self.p_correct
        return lo + (hi - lo) * frac

    def sigma_for(self, c: int) -> float:
        return self._lerp(self.sigma_mean, c)

    def ignorance_for(self, c: int) -> float:
        return self._lerp(self.ignorance_mean, c)


@dataclass(frozen=True)
class SynthRecord:
    pair: VerificationPair
    sigma: float
    ignorance: float
    peak: int


@dataclass(frozen=True)
class SynthSample:
    config: SynthConfig
    records: tuple[SynthRecord, ...]

    @property
    def pairs(self) -> list[VerificationPair]:
        return [r.pair for r in self.records]


def _record(config: SynthConfig, universe: Universe, index: int) -> SynthRecord:
    rng = np.random.default_rng([config.seed, index])
    k = universe.size
    obs = int(rng.choice(k, p=np.asarray(config.climatology)))

    if rng.random() < config.correct_probability(obs):
        peak = obs
    else:
        shifts = [s for s in SHIFTS if 0 <= obs + s < k and config.shift_probs.get(s, 0) > 0]
        if shifts:
            weights = np.array([config.shift_probs[s] for s in shifts])
            peak = obs + shifts[int(rng.choice(len(shifts), p=weights / weights.sum()))]
        else:
            peak = obs

    sigma = max(rng.normal(config.sigma_for(obs), config.sigma_spread), config.sigma_min)
    distance = np.abs(np.arange(k) - peak)
    pi = np.exp(-sigma * distance) + rng.uniform(0.0, config.noise, size=k)

    h = float(np.clip(rng.normal(config.ignorance_for(obs), config.ignorance_spread),
                      0.0, config.ignorance_max))
    pi = pi * ((1.0 - h) / pi.max())
    pi = np.clip(pi, 0.0, 1.0)
    pi[int(np.argmax(pi))] = 1.0 - h

    pair = VerificationPair(validate(pi, universe), obs, id=f"syn-{index:05d}", model="synthetic")
    return SynthRecord(pair, float(sigma), h, peak)


def generate(config: SynthConfig | None = None) -> SynthSample:
    config = (config or SynthConfig()).validate()
    universe = config.universe
    records = tuple(_record(config, universe, i) for i in range(config.n))
    return SynthSample(config, records)


@dataclass(frozen=True)
class SampleStats:
    n: int
    counts: dict[int, int]
    peak_accuracy: float
    mean_ignorance: dict[int, float]


def sample_stats(sample: SynthSample | list[VerificationPair]) -> SampleStats:
    pairs = sample.pairs if isinstance(sample, SynthSample) else list(sample)
    if not pairs:
        raise EmptySample("empty synthetic sample")
    k = pairs[0].forecast.universe.size
    counts = {c: 0 for c in range(k)}
    ign: dict[int, list[float]] = {c: [] for c in range(k)}
    hits = 0
    for p in pairs:
        counts[p.observed] += 1
        ign[p.observed].append(p.forecast.ignorance)
        hits += peak_category(p.forecast) == p.observed
    mean_ign = {c: math.fsum(v) / len(v) for c, v in ign.items() if v}
    return SampleStats(len(pairs), counts, hits / len(pairs), mean_ign)
