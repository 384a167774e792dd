"""Weighted area and perimeter functionals on planar sectors.

The sector of half-opening ``theta0`` carries the density ``r**p`` used to
weight both perimeter and area (area therefore picks up ``r**(p+2)`` after
the extra Jacobian factor ``r`` and the normalization ``1/(p+2)``).  Curves
are polar graphs ``r(theta)`` sampled on a grid; quadrature is composite
Simpson on the stored (possibly graded) grid and derivatives come from
five-point finite-difference stencils with arbitrary spacing.

Closed forms for the two model competitors, the origin-centered arc and the
half-disk with diameter on a sector edge, are provided along with the scale
invariant ratio ``P / A**((p+1)/(p+2))`` that compares them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.special import gammaln

from .errors import (
    DegenerateGrid,
    NonFiniteSample,
    NonPositiveInput,
    OutOfDomain,
    ZeroExponent,
)

__all__ = [
    "PowerDensity",
    "PolarGraph",
    "Measure",
    "wallis_integral",
    "sector_grid",
    "derivative_samples",
    "weighted_area_polar",
    "weighted_perimeter_polar",
    "polar_measures",
    "iso_ratio",
    "arc_measures",
    "arc_ratio",
    "semicircle_measures",
    "semicircle_ratio",
    "arc_semicircle_crossover",
    "change_coordinates",
]


@dataclass(frozen=True)
class PowerDensity:
    """Radial density ``r**p`` weighting perimeter; area is weighted by
    ``r**(p+2) / (p+2)`` per unit angle."""

    p: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.p):
            raise OutOfDomain(f"density exponent must be finite, got {self.p}")


@dataclass(frozen=True)
class Measure:
    """Weighted perimeter, weighted area, and the scale invariant ratio."""

    perimeter: float
    area: float
    ratio: float


def _as_measure(perimeter: float, area: float, dens: PowerDensity) -> Measure:
    return Measure(perimeter=perimeter, area=area,
                   ratio=iso_ratio(perimeter, area, dens))


class PolarGraph:
    """A polar graph ``r(theta)`` over ``[0, theta0]``.

    ``theta`` must be strictly increasing, start at 0, and end at ``theta0``
    (both up to 1e-9 absolute slack, after which the endpoints are snapped).
    Radii must be nonnegative and may vanish only at the endpoints.
    """

    __slots__ = ("theta", "radius", "theta0")

    def __init__(self, theta, radius, theta0: float | None = None):
        theta = np.ascontiguousarray(theta, dtype=float)
        radius = np.ascontiguousarray(radius, dtype=float)
        if theta.ndim != 1 or theta.shape != radius.shape:
            raise DegenerateGrid("theta and radius must be 1-d arrays of equal length")
        if theta.size < 3:
            raise DegenerateGrid(f"need at least 3 nodes, got {theta.size}")
        if not (np.all(np.isfinite(theta)) and np.all(np.isfinite(radius))):
            raise NonFiniteSample("non-finite node in polar graph")
        if np.any(np.diff(theta) <= 0.0):
            raise DegenerateGrid("theta grid must be strictly increasing")
        if theta0 is None:
            theta0 = float(theta[-1])
        if abs(theta[0]) > 1e-9 or abs(theta[-1] - theta0) > 1e-9 * max(1.0, abs(theta0)):
            raise DegenerateGrid("theta grid must span [0, theta0]")
        theta = theta.copy()
        theta[0] = 0.0
        theta[-1] = theta0
        if np.any(radius < 0.0):
            raise DegenerateGrid("radii must be nonnegative")
        if np.any(radius[1:-1] == 0.0):
            raise DegenerateGrid("radius may vanish only at the endpoints")
        self.theta = theta
        self.radius = radius
        self.theta0 = float(theta0)

    def __len__(self) -> int:
        return int(self.theta.size)


def wallis_integral(m: float) -> float:
    """``integral of cos(t)**m over [-pi/2, pi/2]`` for ``m > -1``.

    Evaluated through log-gamma as ``sqrt(pi) * G((m+1)/2) / G((m+2)/2)``,
    which stays accurate for large ``m``.
    """
    if not math.isfinite(m) or m <= -1.0:
        raise OutOfDomain(f"wallis integral needs m > -1, got {m}")
    return math.sqrt(math.pi) * math.exp(gammaln((m + 1.0) / 2.0) - gammaln((m + 2.0) / 2.0))


def _graded_offsets(span: float, count: int, levels: int) -> np.ndarray:
    """Offsets from a singular endpoint: geometric levels, factor one half.

    Returns strictly increasing offsets in ``(0, span]`` whose spacing halves
    toward 0, with roughly ``count // levels`` nodes per level.  The innermost
    level is subdivided down to the endpoint itself (offset 0 excluded here;
    the caller owns the endpoint node).
    """
    per = max(4, count // max(1, levels))
    edges = span * np.ldexp(1.0, -np.arange(levels + 1))
    pieces = []
    for k in range(levels):
        lo, hi = edges[k + 1], edges[k]
        pieces.append(np.linspace(lo, hi, per, endpoint=(k == 0)))
    lo = edges[levels]
    pieces.append(np.linspace(0.0, lo, per, endpoint=False)[1:])
    out = np.unique(np.concatenate(pieces))
    return out


def sector_grid(theta0: float, nodes: int = 1025, *,
                singular_start: bool = False, singular_end: bool = False,
                levels: int = 22) -> np.ndarray:
    """Angular grid on ``[0, theta0]``, graded toward flagged endpoints.

    Grading uses geometric refinement (spacing factor one half per level)
    so that integrands with an algebraic endpoint singularity, such as the
    perimeter weight of a curve reaching ``r = 0``, still integrate to
    around 1e-9 relative accuracy with a couple thousand nodes.  The node
    count is rounded up to an odd number so composite Simpson pairs cover
    the grid exactly.
    """
    if not (math.isfinite(theta0) and theta0 > 0.0):
        raise NonPositiveInput(f"theta0 must be positive, got {theta0}")
    if nodes < 9:
        raise DegenerateGrid(f"need at least 9 nodes, got {nodes}")
    if not (singular_start or singular_end):
        n = nodes if nodes % 2 == 1 else nodes + 1
        return np.linspace(0.0, theta0, n)
    n_ends = int(singular_start) + int(singular_end)
    reserve = max(levels * 4, int(0.25 * nodes))
    graded_span = 0.25 * theta0
    start_part = _graded_offsets(graded_span, reserve, levels) if singular_start else None
    end_part = _graded_offsets(graded_span, reserve, levels) if singular_end else None
    used = sum(part.size for part in (start_part, end_part) if part is not None)
    mid_lo = graded_span if singular_start else 0.0
    mid_hi = theta0 - (graded_span if singular_end else 0.0)
    n_mid = max(9, nodes - used - 2)
    pieces = [np.array([0.0])]
    if start_part is not None:
        pieces.append(start_part)
        pieces.append(np.linspace(mid_lo, mid_hi, n_mid, endpoint=False)[1:])
    else:
        pieces.append(np.linspace(mid_lo, mid_hi, n_mid, endpoint=False)[1:])
    if end_part is not None:
        pieces.append(theta0 - start_part[::-1] if singular_start and end_part is None
                      else theta0 - end_part[::-1])
    pieces.append(np.array([theta0]))
    grid = np.unique(np.concatenate(pieces))
    if grid.size % 2 == 0:
        mids = 0.5 * (grid[:-1] + grid[1:])
        widths = np.diff(grid)
        k = int(np.argmax(widths))
        grid = np.sort(np.append(grid, mids[k]))
    return grid


_STENCIL = 5


def _fd_weights(x0: float, x: np.ndarray, m: int) -> np.ndarray:
    """Finite-difference weights for the m-th derivative at ``x0`` on the
    nodes ``x`` (Fornberg's recursion)."""
    n = x.size
    c = np.zeros((n, m + 1))
    c1 = 1.0
    c4 = x[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - x0
        for j in range(i):
            c3 = x[i] - x[j]
            c2 = c2 * c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


def derivative_samples(theta: np.ndarray, values: np.ndarray, order: int = 1) -> np.ndarray:
    """Pointwise derivative of sampled data on an arbitrary grid.

    Interior nodes use five-point stencils (fourth order on smooth data);
    the two boundary nodes use one-sided three-point stencils for the first
    derivative and shifted five-point stencils for the second.
    """
    n = theta.size
    if n < _STENCIL:
        raise DegenerateGrid(f"need at least {_STENCIL} nodes for derivatives, got {n}")
    if order not in (1, 2):
        raise OutOfDomain(f"derivative order must be 1 or 2, got {order}")
    out = np.empty(n)
    for i in range(n):
        if order == 1 and i in (0, n - 1):
            i0 = 0 if i == 0 else n - 3
            width = 3
        else:
            i0 = min(max(i - _STENCIL // 2, 0), n - _STENCIL)
            width = _STENCIL
        w = _fd_weights(theta[i], theta[i0:i0 + width], order)
        out[i] = float(np.dot(w, values[i0:i0 + width]))
    if not np.all(np.isfinite(out)):
        raise NonFiniteSample("non-finite derivative sample")
    return out


def _density_power(radius: np.ndarray, expo: float) -> np.ndarray:
    """``radius**expo`` with the convention ``0**expo = 0`` for ``expo > 0``;
    a zero radius with ``expo <= 0`` is rejected."""
    if expo > 0.0:
        with np.errstate(divide="ignore"):
            out = np.where(radius > 0.0, radius, 1.0) ** expo
        out = np.where(radius > 0.0, out, 0.0)
    else:
        if np.any(radius == 0.0):
            raise NonFiniteSample(
                f"radius vanishes but weight exponent {expo} is not positive")
        out = radius ** expo
    return out


def weighted_area_polar(graph: PolarGraph, dens: PowerDensity) -> float:
    """Weighted area ``integral of r**(p+2)/(p+2) d(theta)`` of the region
    under the graph."""
    p = dens.p
    if p <= -2.0:
        raise OutOfDomain(f"area weight needs p > -2, got {p}")
    y = _density_power(graph.radius, p + 2.0) / (p + 2.0)
    if not np.all(np.isfinite(y)):
        raise NonFiniteSample("non-finite area integrand")
    return float(simpson(y, x=graph.theta))


def weighted_perimeter_polar(graph: PolarGraph, dens: PowerDensity) -> float:
    """Weighted length ``integral of r**p * sqrt(r**2 + r'**2) d(theta)``
    of the graph itself."""
    rp = derivative_samples(graph.theta, graph.radius, order=1)
    weight = _density_power(graph.radius, dens.p)
    y = weight * np.hypot(graph.radius, rp)
    if not np.all(np.isfinite(y)):
        raise NonFiniteSample("non-finite perimeter integrand")
    return float(simpson(y, x=graph.theta))


def polar_measures(graph: PolarGraph, dens: PowerDensity) -> Measure:
    """Both weighted measures of a polar graph plus the invariant ratio."""
    return _as_measure(weighted_perimeter_polar(graph, dens),
                       weighted_area_polar(graph, dens), dens)


def iso_ratio(perimeter: float, area: float, dens: PowerDensity) -> float:
    """Scale invariant comparison ratio ``P / A**((p+1)/(p+2))``.

    Under the dilation ``r -> k r`` one has ``P -> k**(p+1) P`` and
    ``A -> k**(p+2) A``, so this ratio is constant along each scaling orbit
    and lower values win the isoperimetric comparison.
    """
    p = dens.p
    if p <= -2.0:
        raise OutOfDomain(f"ratio needs p > -2, got {p}")
    if not (perimeter > 0.0 and area > 0.0):
        raise NonPositiveInput(
            f"ratio needs positive measures, got P={perimeter}, A={area}")
    return perimeter * area ** (-(p + 1.0) / (p + 2.0))


def arc_measures(radius: float, dens: PowerDensity, theta0: float) -> Measure:
    """Measures of the centered arc ``r = radius`` across the sector."""
    if not (radius > 0.0 and theta0 > 0.0):
        raise NonPositiveInput(f"need radius, theta0 > 0, got {radius}, {theta0}")
    p = dens.p
    if p <= -2.0:
        raise OutOfDomain(f"arc measures need p > -2, got {p}")
    perimeter = theta0 * radius ** (p + 1.0)
    area = theta0 * radius ** (p + 2.0) / (p + 2.0)
    return _as_measure(perimeter, area, dens)


def arc_ratio(dens: PowerDensity, theta0: float) -> float:
    """Closed form of the centered-arc ratio:
    ``theta0**(1/(p+2)) * (p+2)**((p+1)/(p+2))``."""
    if theta0 <= 0.0:
        raise NonPositiveInput(f"theta0 must be positive, got {theta0}")
    p = dens.p
    if p <= -2.0:
        raise OutOfDomain(f"arc ratio needs p > -2, got {p}")
    return theta0 ** (1.0 / (p + 2.0)) * (p + 2.0) ** ((p + 1.0) / (p + 2.0))


def semicircle_measures(diameter: float, dens: PowerDensity) -> Measure:
    """Measures of the half-disk whose diameter ``[0, diameter]`` lies on a
    sector edge; they do not depend on the sector opening.

    With ``W(m)`` the cosine-power integral of :func:`wallis_integral`,
    ``P = diameter**(p+1) * W(p) / 2`` and
    ``A = diameter**(p+2) * W(p+2) / (2 (p+2))``.
    """
    if diameter <= 0.0:
        raise NonPositiveInput(f"diameter must be positive, got {diameter}")
    p = dens.p
    if p <= 0.0:
        raise OutOfDomain(
            f"edge half-disk needs p > 0 for finite weighted length, got {p}")
    perimeter = 0.5 * diameter ** (p + 1.0) * wallis_integral(p)
    area = 0.5 * diameter ** (p + 2.0) * wallis_integral(p + 2.0) / (p + 2.0)
    return _as_measure(perimeter, area, dens)


def semicircle_ratio(dens: PowerDensity) -> float:
    """Ratio of the edge half-disk (diameter drops out by scale invariance)."""
    return semicircle_measures(1.0, dens).ratio


def arc_semicircle_crossover(dens: PowerDensity) -> float:
    """Sector opening where the centered arc and the edge half-disk tie.

    Solving ``arc_ratio(theta0) = semicircle_ratio`` gives
    ``theta0 = c_semi**(p+2) / (p+2)**(p+1)``.
    """
    c_semi = semicircle_ratio(dens)
    p = dens.p
    return c_semi ** (p + 2.0) / (p + 2.0) ** (p + 1.0)


def change_coordinates(p_perimeter: float, q_area: float, theta0: float,
                       n: float) -> tuple[float, float, float]:
    """Push a weighted sector problem through the map ``(r, theta) ->
    (r**n, n*theta)``.

    A perimeter density ``r**p`` and an independent area density ``r**q``
    transform to exponents ``(p+1)/n - 1`` and ``(q+2)/n - 2``, while the
    opening becomes ``|n| * theta0``.  Negative ``n`` flips the radial
    direction but preserves the opening size.
    """
    if n == 0.0:
        raise ZeroExponent("coordinate change exponent must be nonzero")
    if theta0 <= 0.0:
        raise NonPositiveInput(f"theta0 must be positive, got {theta0}")
    return ((p_perimeter + 1.0) / n - 1.0,
            (q_area + 2.0) / n - 2.0,
            abs(n) * theta0)
