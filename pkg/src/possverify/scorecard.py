"""Five-number scorecard for forecast-observation pairs.

Per pair: depth-of-truth ``alpha_star``, diffuseness ``eta``, support margin
``delta``, ``ignorance`` and the conditional necessity of the truth
``nc_star``. Only ignorance looks at the raw scale; the rest use the
normalised shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .categorical import peak_category
from .core import PossibilityForecast, normalise, validate
from .errors import EmptySample, InvalidCategory

METRICS = ("alpha_star", "eta", "delta", "ignorance", "nc_star")


@dataclass(frozen=True)
class VerificationPair:
    forecast: PossibilityForecast
    observed: int
    id: str | None = None
    model: str | None = None

    def __post_init__(self):
        k = self.forecast.universe.size
        try:
            whole = not isinstance(self.observed, bool) and float(self.observed).is_integer()
        except (TypeError, ValueError):
            whole = False
        if not whole:
            raise InvalidCategory(f"observed index {self.observed!r} is not an integer")
        object.__setattr__(self, "observed", int(self.observed))
        if not 0 <= self.observed < k:
            raise InvalidCategory(f"observed index {self.observed!r} outside [0, {k})")


@dataclass(frozen=True)
class ScorecardRow:
    alpha_star: float
    eta: float
    delta: float
    ignorance: float
    nc_star: float
    commitment: float
    peak: int
    observed: int
    joint_skill: float
    id: str | None = None

    def metric(self, name: str) -> float:
        return getattr(self, name)


@dataclass(frozen=True)
class ScorecardAggregate:
    count: int
    means: dict[str, float]
    by_category: dict[int, tuple[int, dict[str, float]]] = field(default_factory=dict)


def score_pair(pair: VerificationPair) -> ScorecardRow:
    f = pair.forecast
    shape = normalise(f).pi
    k = len(shape)
    obs = pair.observed
    alpha = shape[obs]
    eta = math.fsum(shape) / k
    rival = max((x for i, x in enumerate(shape) if i != obs), default=0.0)
    skill = alpha * (1.0 - eta)
    return ScorecardRow(
        alpha_star=alpha,
        eta=eta,
        delta=alpha - eta,
        ignorance=f.ignorance,
        nc_star=1.0 - rival,
        commitment=f.commitment,
        peak=peak_category(f),
        observed=obs,
        joint_skill=skill,
        id=pair.id,
    )


def joint_skill(row: ScorecardRow) -> float:
    """Possibilistic analogue of CSI: ``alpha_star * (1 - eta)``."""
    return row.alpha_star * (1.0 - row.eta)


def _means(rows: Sequence[ScorecardRow]) -> dict[str, float]:
    # fsum keeps the result independent of row order
    return {name: math.fsum(r.metric(name) for r in rows) / len(rows) for name in METRICS}


def aggregate(rows: Sequence[ScorecardRow], observed: Sequence[int] | None = None) -> ScorecardAggregate:
    rows = list(rows)
    if not rows:
        raise EmptySample("cannot aggregate an empty scorecard")
    if observed is None:
        observed = [r.observed for r in rows]
    elif len(observed) != len(rows):
        raise EmptySample("observed categories and rows differ in length")
    strata: dict[int, list[ScorecardRow]] = {}
    for r, c in zip(rows, observed):
        strata.setdefault(int(c), []).append(r)
    by_category = {c: (len(group), _means(group)) for c, group in sorted(strata.items())}
    return ScorecardAggregate(len(rows), _means(rows), by_category)


def floored(f: PossibilityForecast, floor: float) -> PossibilityForecast:
    """Raise every possibility to at least ``floor`` (the anti-gaming probe)."""
    return validate([max(x, floor) for x in f.pi], f.universe)
