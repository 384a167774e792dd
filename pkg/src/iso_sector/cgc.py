"""Constant generalized curvature curves in the weighted plane.

With density ``r**p`` the generalized curvature of a polar graph is

    lam(theta) = (r**2 + 2 r'**2 - r r'') / (r**2 + r'**2)**1.5
                 + p / sqrt(r**2 + r'**2)

and equilibrium curves keep ``lam`` constant.  Normalizing the inner radius
to 1, the constant-curvature graphs oscillating between radii ``1`` and
``r1 > 1`` ("undularies") satisfy the first integral

    r**(p+1) * sin(sigma) = 1 - (lam / (p+2)) * (1 - r**(p+2))

where ``sigma`` is the angle between the radial direction and the curve.
This module evaluates their half period (the angle swept from inner to
outer radius), their weighted measures, samples them as polar graphs, and
solves the boundary problem ``half_period(r1) = theta0``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BracketFailure,
    DegenerateGrid,
    MonotonicityViolation,
    NonFiniteSample,
    OutOfDomain,
    QuadratureFailure,
)
from .measures import PolarGraph, PowerDensity, derivative_samples

__all__ = [
    "CurveClass",
    "classify_curvature",
    "geodesic_radius",
    "lambda_of_r1",
    "half_period",
    "half_period_low_limit",
    "half_period_high_limit",
    "UndularySpec",
    "undulary_measures",
    "integrate_undulary",
    "period_table",
    "NoSolution",
    "solve_equilibrium_undulary",
    "curvature_samples",
    "generalized_curvature_of",
]


class CurveClass(enum.Enum):
    """Qualitative type of a constant generalized curvature value."""

    GEODESIC = "geodesic"
    CIRCLE_ABOUT_ORIGIN = "circle-about-origin"
    CIRCLE_THROUGH_ORIGIN = "circle-through-origin"
    UNDULARY = "undulary"
    NODOID = "nodoid"


def classify_curvature(lam: float, dens: PowerDensity) -> CurveClass:
    """Map a constant curvature value to its curve class.

    Equalities are tested exactly on the input: ``0`` is the geodesic,
    ``p+1`` the centered circle, ``p+2`` the circle through the origin,
    values strictly inside ``(0, p+2)`` other than ``p+1`` are undularies,
    and everything outside ``[0, p+2]`` is a nodoid.
    """
    p = dens.p
    if not math.isfinite(lam):
        raise OutOfDomain(f"curvature must be finite, got {lam}")
    if lam == 0.0:
        return CurveClass.GEODESIC
    if lam == p + 1.0:
        return CurveClass.CIRCLE_ABOUT_ORIGIN
    if lam == p + 2.0:
        return CurveClass.CIRCLE_THROUGH_ORIGIN
    if 0.0 < lam < p + 2.0:
        return CurveClass.UNDULARY
    return CurveClass.NODOID


def geodesic_radius(theta: float, dens: PowerDensity) -> float:
    """Zero-curvature graph through ``r(0) = 1``:
    ``r = sec((p+1) theta)**(1/(p+1))`` for ``|theta| < pi/(2(p+1))``."""
    p = dens.p
    if p <= -1.0:
        raise OutOfDomain(f"geodesic graph needs p > -1, got {p}")
    half_width = math.pi / (2.0 * (p + 1.0))
    if abs(theta) >= half_width:
        raise OutOfDomain(
            f"geodesic blows up at |theta| = {half_width}, got {theta}")
    return (1.0 / math.cos((p + 1.0) * theta)) ** (1.0 / (p + 1.0))


def lambda_of_r1(r1: float, dens: PowerDensity) -> float:
    """Curvature of the undulary oscillating between radii 1 and ``r1``.

    From the first integral with ``sin(sigma) = 1`` at both turning radii:
    ``lam = (p+2) (1 - r1**(p+1)) / (1 - r1**(p+2))``, evaluated through
    ``expm1``/``log1p`` so it stays accurate as ``r1 -> 1``.
    """
    p = dens.p
    if not r1 > 1.0:
        raise OutOfDomain(f"outer radius must exceed 1, got {r1}")
    delta = r1 - 1.0
    num = math.expm1((p + 1.0) * math.log1p(delta))
    den = math.expm1((p + 2.0) * math.log1p(delta))
    return (p + 2.0) * num / den


def half_period_low_limit(dens: PowerDensity) -> float:
    """Half period limit as ``r1 -> 1``: ``pi / sqrt(p+1)``."""
    if dens.p <= -1.0:
        raise OutOfDomain(f"limit needs p > -1, got {dens.p}")
    return math.pi / math.sqrt(dens.p + 1.0)


def half_period_high_limit(dens: PowerDensity) -> float:
    """Half period limit as ``r1 -> infinity``: ``pi (p+2) / (2p+2)``."""
    if dens.p <= -1.0:
        raise OutOfDomain(f"limit needs p > -1, got {dens.p}")
    return math.pi * (dens.p + 2.0) / (2.0 * dens.p + 2.0)


_GAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _GAUSS_CACHE:
        x, w = np.polynomial.legendre.leggauss(n)
        _GAUSS_CACHE[n] = (x, w)
    return _GAUSS_CACHE[n]


def _u_breaks(delta: float) -> np.ndarray:
    """Segment boundaries in the substitution variable ``u``.

    The substitution ``r = 1 + delta * sin(u)**2`` maps the half wave to
    ``u`` in ``[0, pi/2]``.  For large ``delta`` the integrand varies over
    many scales of ``r - 1``, so segment boundaries follow a geometric
    ladder of ``sin(u)**2`` values reaching down to ``1e-2 / delta`` or
    finer, with more decades the larger ``delta`` is.
    """
    decades = max(2, int(math.ceil(math.log10(max(delta, 1e-12)))) + 7)
    rho = np.concatenate(([0.0], 10.0 ** -np.arange(decades, 0, -1.0), [1.0]))
    return np.arcsin(np.sqrt(rho))


def _undulary_kernel(u: np.ndarray, r1: float, p: float):
    """Integrand pieces at substitution nodes ``u``.

    Returns ``(F, r, x_p1, x_p2, W)`` where ``F`` is d(theta)/du and the
    rest are reused by the measure integrands: ``x_m = r**m`` computed in
    log1p form and ``W = r**(p+1) sin(sigma)``, the first-integral value.
    All differences that suffer cancellation near the turning radii are
    expanded in ``expm1`` form; the formulas are accurate for
    ``r1 - 1 >= 1e-8``.
    """
    delta = r1 - 1.0
    num = math.expm1((p + 1.0) * math.log1p(delta))
    den = math.expm1((p + 2.0) * math.log1p(delta))
    kk = num / den
    y_p1 = math.exp((p + 1.0) * math.log1p(delta))
    s2 = np.sin(u) ** 2
    c2 = np.cos(u) ** 2
    dlt = delta * s2
    lp = np.log1p(dlt)
    x_p1 = np.exp((p + 1.0) * lp)
    x_p2 = np.exp((p + 2.0) * lp)
    r = 1.0 + dlt
    w_first = 1.0 - kk * (1.0 - x_p2)
    b = delta * y_p1 * np.expm1((p + 1.0) * lp) - dlt * x_p1 * num
    e = b / (delta * delta * s2 * c2 * den)
    f = 2.0 * w_first / (r * np.sqrt(e * (x_p1 + w_first)))
    return f, r, x_p1, x_p2, w_first


def _segment_nodes(r1: float, n_per_seg: int):
    """Gauss-Legendre nodes and weights covering ``u`` in ``[0, pi/2]``."""
    breaks = _u_breaks(r1 - 1.0)
    x, w = _gauss(n_per_seg)
    lo = breaks[:-1]
    hi = breaks[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    u = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wu = (half[:, None] * w[None, :]).ravel()
    return u, wu


def half_period(r1: float, dens: PowerDensity, n_per_seg: int = 64) -> float:
    """Angle swept by the undulary from radius 1 to radius ``r1``.

    Uses the turning-point-resolving substitution ``r = 1 + (r1-1) sin(u)**2``
    and per-segment Gauss-Legendre quadrature; converged to near machine
    precision for ``r1 - 1 >= 1e-8`` (below that, cancellation in the first
    integral degrades accuracy, and the limit ``pi/sqrt(p+1)`` should be
    used instead).
    """
    p = dens.p
    if p <= -1.0:
        raise OutOfDomain(f"oscillating solutions need p > -1, got {p}")
    if not r1 > 1.0:
        raise OutOfDomain(f"outer radius must exceed 1, got {r1}")
    u, wu = _segment_nodes(r1, n_per_seg)
    f, *_ = _undulary_kernel(u, r1, p)
    total = float(np.dot(wu, f))
    if not math.isfinite(total) or total <= 0.0:
        raise QuadratureFailure(
            f"half period quadrature returned {total} at r1={r1}, p={p}")
    return total


@dataclass(frozen=True)
class UndularySpec:
    """An undulary pinned down by its turning radii ``1`` and ``r1``."""

    r1: float
    p: float
    lam: float

    @classmethod
    def from_r1(cls, r1: float, dens: PowerDensity) -> "UndularySpec":
        return cls(r1=r1, p=dens.p, lam=lambda_of_r1(r1, dens))


def undulary_measures(spec: UndularySpec, n_per_seg: int = 64
                      ) -> tuple[float, float, float]:
    """``(theta_span, perimeter, area)`` of one half wave.

    Computed in the substitution variable: with ``W`` the first-integral
    value, ``sqrt(r**2 + r'**2) = r**(p+2) / W`` gives the perimeter density
    ``r**(2p+2) / W`` and the area density ``r**(p+2)/(p+2)`` per unit angle.
    """
    dens = PowerDensity(spec.p)
    if not spec.r1 > 1.0:
        raise OutOfDomain(f"outer radius must exceed 1, got {spec.r1}")
    u, wu = _segment_nodes(spec.r1, n_per_seg)
    f, r, x_p1, x_p2, w_first = _undulary_kernel(u, spec.r1, dens.p)
    theta_span = float(np.dot(wu, f))
    perimeter = float(np.dot(wu, f * x_p1 * x_p1 / w_first))
    area = float(np.dot(wu, f * x_p2 / (spec.p + 2.0)))
    if not all(map(math.isfinite, (theta_span, perimeter, area))):
        raise QuadratureFailure(f"non-finite undulary measures at r1={spec.r1}")
    return theta_span, perimeter, area


def _cumulative_simpson_uniform(y: np.ndarray, h: float) -> np.ndarray:
    """Cumulative integral of uniformly sampled data (odd sample count).

    Even indices accumulate composite Simpson pairs; odd indices add the
    half-pair integral of the local quadratic, ``h (5 y0 + 8 y1 - y2)/12``.
    """
    n = y.size
    out = np.empty(n)
    out[0] = 0.0
    pair = h / 3.0 * (y[0:-2:2] + 4.0 * y[1:-1:2] + y[2::2])
    even = np.concatenate(([0.0], np.cumsum(pair)))
    out[2::2] = even[1:]
    out[1::2] = even[:-1] + h / 12.0 * (5.0 * y[0:-2:2] + 8.0 * y[1:-1:2] - y[2::2])
    return out


def integrate_undulary(spec: UndularySpec, nodes: int = 1025) -> PolarGraph:
    """Sample the half wave as a polar graph ``r(theta)``.

    The radius is exact, ``r = 1 + (r1-1) sin(u)**2`` on a uniform ``u``
    grid; the angle is the cumulative integral of d(theta)/du, so
    ``theta[-1]`` reproduces :func:`half_period` to quadrature accuracy
    (around 1e-9 at the default resolution over the supported range).
    The graph runs from the inner radius at angle 0 to the outer radius
    at ``theta[-1]``.

    The angle density is even about both endpoints of the ``u`` range, so
    its endpoint values come from even-symmetric extrapolation off the two
    adjacent interior nodes; evaluating the kernel at the endpoints would
    hit a 0/0 limit.  The interior evaluation itself loses roughly
    ``eps / ((r1-1) h**2)`` relative accuracy at the node nearest ``pi/2``,
    which caps sampling at ``r1 - 1 >= 1e-3`` for the supported grids.
    """
    if nodes < 65:
        raise DegenerateGrid(f"need at least 65 nodes, got {nodes}")
    if spec.r1 < 1.0 + 1e-3:
        raise OutOfDomain(
            f"wave sampling needs r1 >= 1.001, got {spec.r1}; the period "
            "and measure quadratures stay valid down to r1 = 1 + 1e-8")
    n = nodes if nodes % 2 == 1 else nodes + 1
    u = np.linspace(0.0, math.pi / 2.0, n)
    f = np.empty(n)
    f[1:-1], *_ = _undulary_kernel(u[1:-1], spec.r1, spec.p)
    f[0] = (4.0 * f[1] - f[2]) / 3.0
    f[-1] = (4.0 * f[-2] - f[-3]) / 3.0
    if not np.all(np.isfinite(f)):
        raise NonFiniteSample(f"non-finite angle density at r1={spec.r1}")
    theta = _cumulative_simpson_uniform(f, u[1] - u[0])
    radius = 1.0 + (spec.r1 - 1.0) * np.sin(u) ** 2
    if np.any(np.diff(radius) <= 0.0):
        raise MonotonicityViolation("undulary radius must increase along the half wave")
    return PolarGraph(theta, radius, theta0=float(theta[-1]))


def period_table(dens: PowerDensity, r1_values) -> list[tuple[float, float]]:
    """Rows ``(r1, half_period(r1))`` for a sweep of outer radii."""
    return [(float(r1), half_period(float(r1), dens)) for r1 in r1_values]


@dataclass(frozen=True)
class NoSolution:
    """Returned when no undulary half wave can be certified at the opening.

    Covers both a target period outside the attainable range and one so
    close to its boundary that the root cannot be refined to tolerance.
    ``t_min`` and ``t_max`` bound the half periods attained over the probed
    range of outer radii.
    """

    t_min: float
    t_max: float
    theta0: float


def solve_equilibrium_undulary(theta0: float, dens: PowerDensity, *,
                               r1_min: float = 1.0 + 1e-8,
                               r1_max: float = 1e6,
                               probes: int = 61
                               ) -> UndularySpec | NoSolution:
    """Find ``r1`` with ``half_period(r1) = theta0``, if one exists.

    The half period is probed on a logarithmic ladder of ``r1 - 1`` values
    and the last sign change of ``half_period - theta0`` is refined by
    bisection.  No monotonicity of the period map is assumed, but the last
    crossing is the one trusted: quadrature noise near the degenerate end
    ``r1 -> 1`` (a few 1e-5 in the period) can fake crossings at the first
    few probes when ``theta0`` sits within that noise of the attainable
    boundary.  Returns a :class:`NoSolution` record with the attained
    period range when the target is never crossed, and likewise when the
    refined root cannot be certified to ``|T - theta0| < 1e-8``.
    """
    from scipy.optimize import brentq

    if theta0 <= 0.0:
        raise OutOfDomain(f"opening must be positive, got {theta0}")
    grid = 1.0 + np.geomspace(r1_min - 1.0, r1_max - 1.0, probes)
    periods = np.array([half_period(float(r), dens) for r in grid])
    if not np.all(np.isfinite(periods)):
        raise BracketFailure("non-finite half period during probing")
    resid = periods - theta0
    hit = np.nonzero(resid == 0.0)[0]
    if hit.size:
        return UndularySpec.from_r1(float(grid[hit[0]]), dens)
    sign_change = np.nonzero(np.sign(resid[:-1]) * np.sign(resid[1:]) < 0)[0]
    if sign_change.size == 0:
        return NoSolution(t_min=float(periods.min()),
                          t_max=float(periods.max()),
                          theta0=theta0)
    k = int(sign_change[-1])
    root = brentq(lambda r: half_period(float(r), dens) - theta0,
                  float(grid[k]), float(grid[k + 1]), xtol=1e-13, rtol=8.9e-16)
    achieved = half_period(float(root), dens)
    if abs(achieved - theta0) > 1e-8:
        return NoSolution(t_min=float(periods.min()),
                          t_max=float(periods.max()),
                          theta0=theta0)
    return UndularySpec.from_r1(float(root), dens)


def curvature_samples(theta: np.ndarray, radius: np.ndarray,
                      dens: PowerDensity) -> np.ndarray:
    """Generalized curvature of raw samples ``radius(theta)``."""
    theta = np.asarray(theta, dtype=float)
    r = np.asarray(radius, dtype=float)
    if theta.size < 5:
        raise DegenerateGrid("need at least 5 nodes for curvature")
    if np.any(r <= 0.0):
        raise OutOfDomain("curvature needs strictly positive radii")
    rp = derivative_samples(theta, r, order=1)
    rpp = derivative_samples(theta, r, order=2)
    speed2 = r * r + rp * rp
    lam = (r * r + 2.0 * rp * rp - r * rpp) / speed2 ** 1.5 \
        + dens.p / np.sqrt(speed2)
    if not np.all(np.isfinite(lam)):
        raise NonFiniteSample("non-finite curvature sample")
    return lam


def generalized_curvature_of(graph: PolarGraph, dens: PowerDensity) -> np.ndarray:
    """Pointwise generalized curvature of a sampled polar graph."""
    return curvature_samples(graph.theta, graph.radius, dens)
