"""Possibility calculus over a finite, severity-ordered universe.

Forecasts are stored raw, i.e. possibly subnormal (peak below one). The gap
between the peak ("commitment") and one is the forecast's ignorance. Shape
metrics work on the normalised form ``pi / m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AllZero,
    EmptyEvent,
    InvalidCategory,
    OutOfRange,
    PossibilityError,
    WrongArity,
)

SPC_CATEGORIES = ("NONE", "MRGL", "SLGT", "ENH", "MDT", "HIGH")
SPC_CLIMATOLOGY = (0.60, 0.18, 0.12, 0.06, 0.032, 0.008)

CLIMATOLOGY_TOL = 1e-9


@dataclass(frozen=True)
class Universe:
    """Ordered category labels, least severe first, with optional climatology."""

    categories: tuple[str, ...]
    climatology: tuple[float, ...] | None = None

    def __post_init__(self):
        cats = tuple(str(c) for c in self.categories)
        object.__setattr__(self, "categories", cats)
        if len(cats) < 2:
            raise PossibilityError("a universe needs at least two categories")
        if len(set(cats)) != len(cats):
            raise PossibilityError(f"duplicate category labels in {cats}")
        if self.climatology is not None:
            clim = tuple(float(x) for x in self.climatology)
            if len(clim) != len(cats):
                raise WrongArity(
                    f"climatology has {len(clim)} entries, expected {len(cats)}"
                )
            if any(not (0.0 <= x <= 1.0) for x in clim):
                raise OutOfRange("climatology entries must lie in [0, 1]")
            if abs(math.fsum(clim) - 1.0) > CLIMATOLOGY_TOL:
                raise OutOfRange(f"climatology sums to {math.fsum(clim)}, not 1")
            object.__setattr__(self, "climatology", clim)

    @property
    def size(self) -> int:
        return len(self.categories)

    def __len__(self) -> int:
        return len(self.categories)

    def index(self, category: str | int) -> int:
        """Resolve a label or an integer index to an index."""
        if isinstance(category, (int, np.integer)) and not isinstance(category, bool):
            idx = int(category)
            if not 0 <= idx < self.size:
                raise InvalidCategory(f"category index {idx} outside [0, {self.size})")
            return idx
        try:
            return self.categories.index(str(category))
        except ValueError:
            raise InvalidCategory(
                f"unknown category {category!r}; expected one of {self.categories}"
            ) from None

    def label(self, index: int) -> str:
        return self.categories[self.index(index)]


SPC_UNIVERSE = Universe(SPC_CATEGORIES, SPC_CLIMATOLOGY)


@dataclass(frozen=True)
class PossibilityForecast:
    """A validated (possibly subnormal) possibility distribution.

    Build these through :func:`validate`; the constructor itself does not
    check the axioms.
    """

    pi: tuple[float, ...]
    universe: Universe

    @property
    def values(self) -> np.ndarray:
        return np.asarray(self.pi, dtype=float)

    @property
    def commitment(self) -> float:
        return max(self.pi)

    @property
    def ignorance(self) -> float:
        return 1.0 - self.commitment

    @property
    def is_normal(self) -> bool:
        return self.commitment == 1.0


@dataclass(frozen=True)
class NormalisedForecast(PossibilityForecast):
    """Shape-normalised forecast; its peak is exactly 1."""

    @property
    def pi_norm(self) -> tuple[float, ...]:
        return self.pi


def validate(pi: Sequence[float], universe: Universe = SPC_UNIVERSE) -> PossibilityForecast:
    values = tuple(float(x) for x in pi)
    if len(values) != universe.size:
        raise WrongArity(f"got {len(values)} possibility values, expected {universe.size}")
    for label, x in zip(universe.categories, values):
        if not (0.0 <= x <= 1.0):  # also rejects NaN
            raise OutOfRange(f"pi({label}) = {x} is outside [0, 1]")
    if max(values) <= 0.0:
        raise AllZero("at least one category must have positive possibility")
    return PossibilityForecast(values, universe)


def _event(f: PossibilityForecast, event: Iterable[int | str]) -> frozenset[int]:
    return frozenset(f.universe.index(e) for e in event)


def _complement_max(f: PossibilityForecast, members: frozenset[int]) -> float:
    # max over the empty set is 0 by convention
    return max((x for i, x in enumerate(f.pi) if i not in members), default=0.0)


def possibility(f: PossibilityForecast, event: Iterable[int | str]) -> float:
    members = _event(f, event)
    if not members:
        raise EmptyEvent("possibility of the empty event is undefined")
    return max(f.pi[i] for i in members)


def necessity(f: PossibilityForecast, event: Iterable[int | str]) -> float:
    """Raw necessity ``1 - max`` over the complement.

    On a subnormal forecast this can exceed the event's possibility, so the
    ``[N, Pi]`` bracket no longer holds; prefer :func:`conditional_necessity`.
    """
    return 1.0 - _complement_max(f, _event(f, event))


def normalise(f: PossibilityForecast) -> NormalisedForecast:
    m = f.commitment
    # exact 1.0 at the peak absorbs division rounding
    pi_norm = tuple(1.0 if x == m else min(x / m, 1.0) for x in f.pi)
    return NormalisedForecast(pi_norm, f.universe)


def ignorance(f: PossibilityForecast) -> float:
    return f.ignorance


def commitment(f: PossibilityForecast) -> float:
    return f.commitment


def conditional_necessity(f: PossibilityForecast, event: Iterable[int | str]) -> float:
    """Necessity of ``event`` computed on the normalised shape, in [0, 1]."""
    members = _event(f, event)
    if not members:
        raise EmptyEvent("conditional necessity of the empty event is undefined")
    value = 1.0 - _complement_max(f, members) / f.commitment
    return min(max(value, 0.0), 1.0)
