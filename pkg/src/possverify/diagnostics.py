"""Plot-ready tables for the diagnostic diagrams.

Nothing here draws. The performance diagram puts specificity ``1 - eta`` on x
and ``alpha_star`` on y, with hexbins coloured by mean ignorance. The
commitment diagram puts commitment ``m`` on x and ``delta`` on y, with hexbins
coloured by count. The reliability curve tracks hit rate against a floor on
the conditional necessity of each forecast's own peak category.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .categorical import peak_category
from .core import conditional_necessity
from .errors import EmptySample, PossibilityError
from .scorecard import ScorecardRow

DEFAULT_GRIDSIZE = 18
DEFAULT_TAU_STEP = 0.05

PERFORMANCE_EXTENT = (0.0, 1.0, 0.0, 1.0)
COMMITMENT_EXTENT = (0.0, 1.0, -1.0, 1.0)


@dataclass(frozen=True)
class DiagramPoint:
    x: float
    y: float
    ignorance: float
    observed: int
    pair_id: str | None = None


@dataclass(frozen=True)
class HexBinCell:
    x: float
    y: float
    count: int
    mean_ignorance: float | None = None


@dataclass(frozen=True)
class CategoryMean:
    observed: int
    x: float
    y: float
    count: int


@dataclass(frozen=True)
class DiagramData:
    points: tuple[DiagramPoint, ...]
    hexbins: tuple[HexBinCell, ...]
    category_means: tuple[CategoryMean, ...]


@dataclass(frozen=True)
class ReliabilityPoint:
    tau: float
    hit_rate: float | None
    sample_count: int


@dataclass(frozen=True)
class ReliabilityCurve:
    points: tuple[ReliabilityPoint, ...]
    chance: float
    accuracy: float


def hex_centers(x, y, gridsize: int = DEFAULT_GRIDSIZE, extent=PERFORMANCE_EXTENT):
    """Nearest pointy-top hexagon centre for each point.

    The extent is mapped onto the unit square, which holds ``gridsize``
    hexagon columns. The hex lattice is the union of two rectangular
    lattices offset by half a cell. Within each the nearest node comes from
    rounding, and the closer of the two nodes is the nearest hex centre.
    Returns integer cell keys and centres in data coordinates.
    """
    if gridsize < 1:
        raise PossibilityError("gridsize must be positive")
    x0, x1, y0, y1 = extent
    u = (np.asarray(x, dtype=float) - x0) / (x1 - x0)
    v = (np.asarray(y, dtype=float) - y0) / (y1 - y0)
    w = 1.0 / gridsize
    h = w * math.sqrt(3.0)  # row-pair height; rows are h/2 apart

    ia, ja = np.round(u / w), np.round(v / h)
    ib, jb = np.floor(u / w), np.floor(v / h)
    ax, ay = ia * w, ja * h
    bx, by = (ib + 0.5) * w, (jb + 0.5) * h
    use_a = (u - ax) ** 2 + (v - ay) ** 2 <= (u - bx) ** 2 + (v - by) ** 2

    col = np.where(use_a, 2 * ia, 2 * ib + 1).astype(np.int64)
    row = np.where(use_a, 2 * ja, 2 * jb + 1).astype(np.int64)
    cu, cv = np.where(use_a, ax, bx), np.where(use_a, ay, by)
    return col, row, x0 + cu * (x1 - x0), y0 + cv * (y1 - y0)


def hexbin(points: Sequence[DiagramPoint], gridsize: int = DEFAULT_GRIDSIZE,
           extent=PERFORMANCE_EXTENT, with_ignorance: bool = True) -> tuple[HexBinCell, ...]:
    if not points:
        return ()
    xs = np.array([p.x for p in points])
    ys = np.array([p.y for p in points])
    col, row, cx, cy = hex_centers(xs, ys, gridsize, extent)
    cells: dict[tuple[int, int], list[int]] = {}
    for i, key in enumerate(zip(col.tolist(), row.tolist())):
        cells.setdefault(key, []).append(i)
    out = []
    for key in sorted(cells, key=lambda k: (k[1], k[0])):
        members = cells[key]
        i0 = members[0]
        mean_ign = (math.fsum(points[i].ignorance for i in members) / len(members)
                    if with_ignorance else None)
        out.append(HexBinCell(float(cx[i0]), float(cy[i0]), len(members), mean_ign))
    return tuple(out)


def category_means(points: Sequence[DiagramPoint]) -> tuple[CategoryMean, ...]:
    strata: dict[int, list[DiagramPoint]] = {}
    for p in points:
        strata.setdefault(p.observed, []).append(p)
    return tuple(
        CategoryMean(c, math.fsum(p.x for p in g) / len(g), math.fsum(p.y for p in g) / len(g), len(g))
        for c, g in sorted(strata.items())
    )


def performance_points(rows: Sequence[ScorecardRow], gridsize: int = DEFAULT_GRIDSIZE) -> DiagramData:
    if not rows:
        raise EmptySample("no scorecard rows")
    points = tuple(
        DiagramPoint(1.0 - r.eta, r.alpha_star, r.ignorance, r.observed, r.id) for r in rows
    )
    return DiagramData(points, hexbin(points, gridsize, PERFORMANCE_EXTENT), category_means(points))


def commitment_points(rows: Sequence[ScorecardRow], gridsize: int = DEFAULT_GRIDSIZE) -> DiagramData:
    if not rows:
        raise EmptySample("no scorecard rows")
    points = tuple(
        DiagramPoint(r.commitment, r.delta, r.ignorance, r.observed, r.id) for r in rows
    )
    cells = hexbin(points, gridsize, COMMITMENT_EXTENT, with_ignorance=False)
    return DiagramData(points, cells, category_means(points))


def skill_contour(level: float, n: int = 50) -> list[tuple[float, float]]:
    """Points on the curve ``alpha_star * (1 - eta) = level`` inside the unit square."""
    if not 0.0 < level <= 1.0:
        raise PossibilityError("skill level must lie in (0, 1]")
    xs = np.linspace(level, 1.0, n)
    return [(float(x), float(level / x)) for x in xs]


def tau_grid(step: float = DEFAULT_TAU_STEP) -> list[float]:
    """``0, step, 2*step, ...`` strictly below 1."""
    if not 0.0 < step <= 1.0:
        raise PossibilityError("tau step must lie in (0, 1]")
    count = int(math.ceil(1.0 / step - 1e-9))
    return [round(i * step, 12) for i in range(count)]


def reliability_curve(pairs: Sequence, taus: Sequence[float] | None = None) -> ReliabilityCurve:
    if not pairs:
        raise EmptySample("no forecast-observation pairs")
    taus = tau_grid() if taus is None else [float(t) for t in taus]
    if any(not 0.0 <= t <= 1.0 for t in taus) or any(b < a for a, b in zip(taus, taus[1:])):
        raise PossibilityError("tau grid must be ascending within [0, 1]")
    k = pairs[0].forecast.universe.size
    peaks = [peak_category(p.forecast) for p in pairs]
    nc = np.array([conditional_necessity(p.forecast, [c]) for p, c in zip(pairs, peaks)])
    hits = np.array([c == p.observed for p, c in zip(pairs, peaks)])
    points = []
    for t in taus:
        keep = nc >= t
        n_keep = int(keep.sum())
        rate = float(hits[keep].sum() / n_keep) if n_keep else None
        points.append(ReliabilityPoint(t, rate, n_keep))
    return ReliabilityCurve(tuple(points), 1.0 / k, float(hits.sum() / len(hits)))
