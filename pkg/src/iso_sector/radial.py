"""Radial densities in R^n: off-center balls, convexity tests, averaging.

Three groups of tools:

* weighted volume and surface of a round ball at distance ``h`` from the
  origin under density ``|x|**p``, with closed forms at ``h = 0``;
* the convexity certificate for a nondecreasing radial profile ``a(r)``:
  with ``f(s) = (a(s**(1/n)) - a(0)) * s**(1 - 1/n)``, convexity of ``f``
  makes centered balls minimize the ``a``-weighted surface among regions
  of given volume (the constant part of ``a`` contributes a classical
  Euclidean term and drops out of the comparison);
* a discrete averaging chain on star-shaped trial regions that exhibits
  the two inequalities behind that statement,

      Q_full >= Q_tangential >= Q_ball,

  where ``Q_full`` is the (a - a(0))-weighted surface integral,
  ``Q_tangential`` drops the normal tilt factor, and ``Q_ball`` evaluates
  ``f`` at the average of ``t = r**n`` (Jensen).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .errors import (
    GridTooCoarse,
    NonFiniteProfile,
    NonPositiveInput,
    OriginInside,
    OutOfDomain,
    VolumeUnattainable,
)

__all__ = [
    "unit_sphere_area",
    "sphere_measures",
    "closed_ball_measures",
    "vanishing_perimeter_demo",
    "DemoRow",
    "inverted_exponent",
    "RadialProfile",
    "profile_from_samples",
    "power_profile",
    "betta_convexity_check",
    "BettaReport",
    "StarRegion",
    "sphere_grid",
    "random_star_region",
    "averaging_inequality_check",
    "AveragingReport",
]


def unit_sphere_area(n: int) -> float:
    """Surface measure of the unit sphere in R^n:
    ``2 pi**(n/2) / Gamma(n/2)``."""
    if n < 1:
        raise OutOfDomain(f"dimension must be >= 1, got {n}")
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


_GAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss01(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights on [0, 1]."""
    if n not in _GAUSS_CACHE:
        x, w = np.polynomial.legendre.leggauss(n)
        _GAUSS_CACHE[n] = (0.5 * (x + 1.0), 0.5 * w)
    return _GAUSS_CACHE[n]


def _surface_integral(n: int, p: float, h: float, radius: float,
                      nodes: int) -> float:
    """``integral of |x|**p`` over the sphere of given radius centered at
    distance ``h``, reduced to the axial angle."""
    x, w = _gauss01(nodes)
    beta = math.pi * x
    wb = math.pi * w
    r2 = h * h + radius * radius + 2.0 * h * radius * np.cos(beta)
    belt = unit_sphere_area(n - 1) if n > 2 else 2.0
    integrand = r2 ** (0.5 * p) * np.sin(beta) ** (n - 2)
    return belt * radius ** (n - 1) * float(np.dot(wb, integrand))


def sphere_measures(n: int, p: float, h: float, radius: float, *,
                    nodes: int = 256) -> tuple[float, float]:
    """Weighted ``(volume, surface)`` of the ball ``|x - he| = radius``
    under density ``|x|**p``.

    For ``p < 0`` the origin must lie strictly outside the ball
    (``h > radius``); for ``p >= 0`` any position is allowed.  Quadrature
    is a tensor Gauss-Legendre rule over the radial shells and the axial
    angle, accurate to about 1e-8 relative at the default node count.
    """
    if n < 2:
        raise OutOfDomain(f"dimension must be >= 2, got {n}")
    if radius <= 0.0:
        raise NonPositiveInput(f"radius must be positive, got {radius}")
    if h < 0.0:
        raise NonPositiveInput(f"center distance must be >= 0, got {h}")
    if p < 0.0 and h <= radius:
        raise OriginInside(
            f"density |x|**{p} needs the origin outside: h={h} <= R={radius}")
    surface = _surface_integral(n, p, h, radius, nodes)
    x, w = _gauss01(nodes)
    shells = radius * x
    vol = radius * float(np.dot(
        w, [_surface_integral(n, p, h, float(t), nodes) for t in shells]))
    return vol, surface


def closed_ball_measures(n: int, p: float, radius: float) -> tuple[float, float]:
    """Closed forms for the centered ball: volume
    ``|S| R**(n+p) / (n+p)`` and surface ``|S| R**(n-1+p)``."""
    if n < 2:
        raise OutOfDomain(f"dimension must be >= 2, got {n}")
    if radius <= 0.0:
        raise NonPositiveInput(f"radius must be positive, got {radius}")
    if p <= -n:
        raise OutOfDomain(f"centered volume needs p > -n, got p={p}, n={n}")
    s = unit_sphere_area(n)
    return s * radius ** (n + p) / (n + p), s * radius ** (n - 1 + p)


@dataclass(frozen=True)
class DemoRow:
    """One step of the vanishing-perimeter construction."""

    radius: float
    center: float
    volume: float
    surface: float


def vanishing_perimeter_demo(n: int, p: float, volume: float, *,
                             radii: tuple[float, ...] = (2.0, 4.0, 8.0, 16.0,
                                                         32.0, 64.0, 128.0,
                                                         256.0),
                             nodes: int = 256) -> list[DemoRow]:
    """Balls of fixed weighted volume whose weighted surface tends to 0.

    Works in the range ``-n <= p < 0``, where pushing a growing ball away
    from the origin trades volume for surface at a winning rate.  For each
    ball radius the center distance is solved so the weighted volume
    matches ``volume`` (it decreases in ``h``), and the weighted surface is
    reported; along the returned rows it decreases toward zero, so no
    isoperimetric region of this volume exists.
    """
    if not (-float(n) <= p < 0.0):
        raise OutOfDomain(
            f"vanishing-surface construction needs -n <= p < 0, got p={p}")
    if volume <= 0.0:
        raise NonPositiveInput(f"volume must be positive, got {volume}")
    rows: list[DemoRow] = []
    for radius in radii:
        lo = radius * (1.0 + 1e-9)
        v_lo = sphere_measures(n, p, lo, radius, nodes=nodes)[0]
        if v_lo < volume:
            raise VolumeUnattainable(
                f"ball of radius {radius} cannot hold weighted volume "
                f"{volume} (max {v_lo:.6g})")
        hi = 2.0 * radius
        while sphere_measures(n, p, hi, radius, nodes=nodes)[0] > volume:
            hi *= 2.0
            if hi > 1e12:
                raise VolumeUnattainable(
                    f"no center distance attains volume {volume} at R={radius}")
        h = float(brentq(
            lambda c: sphere_measures(n, p, float(c), radius, nodes=nodes)[0]
            - volume, lo, hi, xtol=1e-12, rtol=1e-12))
        vol, surf = sphere_measures(n, p, h, radius, nodes=nodes)
        rows.append(DemoRow(radius=radius, center=h, volume=vol, surface=surf))
    return rows


def inverted_exponent(n: int, p: float) -> float:
    """Exponent of the surface element after the inversion ``s = r**(p+n)``
    used in the strongly negative range ``p < -n``: the weight becomes
    ``s**(1 - 1/(p+n))`` with exponent strictly greater than 1, hence
    convex, reducing that range to the convexity certificate."""
    if p >= -float(n):
        raise OutOfDomain(f"inversion applies for p < -n, got p={p}, n={n}")
    return 1.0 - 1.0 / (p + n)


@dataclass(frozen=True)
class RadialProfile:
    """Nondecreasing density profile ``a(r)`` on the half line.

    ``fn`` evaluates the profile; profiles built from samples interpolate
    with a cubic spline in ``log r``.  ``r_max`` bounds the range the
    profile was specified on (checks sample ``s`` up to ``r_max**n``).
    """

    fn: Callable[[np.ndarray], np.ndarray]
    r_max: float
    label: str = "profile"

    def __call__(self, r) -> np.ndarray:
        out = np.asarray(self.fn(np.asarray(r, dtype=float)), dtype=float)
        if not np.all(np.isfinite(out)):
            raise NonFiniteProfile(f"profile {self.label} returned non-finite values")
        return out

    @property
    def a0(self) -> float:
        return float(self(np.array([0.0]))[0])


def power_profile(expo: float, *, r_max: float = 10.0) -> RadialProfile:
    """Profile ``a(r) = r**expo`` for ``expo > 0`` (so ``a(0) = 0``)."""
    if expo <= 0.0:
        raise OutOfDomain(f"power profile needs a positive exponent, got {expo}")
    return RadialProfile(fn=lambda r: r ** expo, r_max=r_max,
                         label=f"r**{expo:g}")


def profile_from_samples(r: np.ndarray, a: np.ndarray,
                         label: str = "sampled") -> RadialProfile:
    """Monotone profile from samples, interpolated in ``log r``.

    The value at ``r = 0`` is taken as ``a[0]``; queries between 0 and the
    first sample interpolate linearly to it.
    """
    r = np.asarray(r, dtype=float)
    a = np.asarray(a, dtype=float)
    if r.ndim != 1 or r.shape != a.shape or r.size < 4:
        raise OutOfDomain("need matching 1-d sample arrays with >= 4 points")
    if np.any(r <= 0.0) or np.any(np.diff(r) <= 0.0):
        raise OutOfDomain("sample radii must be positive and increasing")
    if np.any(np.diff(a) < 0.0):
        raise OutOfDomain("profile samples must be nondecreasing")
    if not (np.all(np.isfinite(r)) and np.all(np.isfinite(a))):
        raise NonFiniteProfile("non-finite profile samples")
    spline = CubicSpline(np.log(r), a)
    r0, a_first = float(r[0]), float(a[0])

    def fn(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.empty_like(x)
        small = x < r0
        out[small] = a_first * np.where(r0 > 0.0, x[small] / r0, 1.0)
        out[~small] = spline(np.log(np.maximum(x[~small], r0)))
        return out

    return RadialProfile(fn=fn, r_max=float(r[-1]), label=label)


@dataclass(frozen=True)
class BettaReport:
    """Outcome of the discrete convexity certificate."""

    n: int
    convex: bool
    worst_second_difference: float
    grid_size: int


def betta_convexity_check(profile: RadialProfile, n: int, *,
                          grid_size: int = 2001,
                          tol: float = 1e-9) -> BettaReport:
    """Discrete convexity of ``f(s) = (a(s**(1/n)) - a(0)) s**(1-1/n)``.

    ``f`` is sampled uniformly on ``[0, r_max**n]`` and centered second
    differences are required to clear ``-tol * max|f|``.  A convex ``f``
    certifies that centered balls minimize the ``a``-weighted surface at
    fixed volume.
    """
    if n < 2:
        raise OutOfDomain(f"dimension must be >= 2, got {n}")
    if grid_size < 16:
        raise GridTooCoarse(f"need >= 16 grid points, got {grid_size}")
    s = np.linspace(0.0, profile.r_max ** n, grid_size)
    r = s ** (1.0 / n)
    with np.errstate(invalid="ignore"):
        f = (profile(r) - profile.a0) * np.where(s > 0.0, s, 1.0) ** (1.0 - 1.0 / n)
    f[s == 0.0] = 0.0
    if not np.all(np.isfinite(f)):
        raise NonFiniteProfile(f"profile {profile.label} non-finite on s-grid")
    d2 = f[2:] - 2.0 * f[1:-1] + f[:-2]
    scale = max(float(np.max(np.abs(f))), 1e-300)
    worst = float(d2.min())
    return BettaReport(n=n, convex=bool(worst >= -tol * scale),
                       worst_second_difference=worst, grid_size=grid_size)


@dataclass(frozen=True)
class StarRegion:
    """Star-shaped trial region sampled on a spherical grid.

    ``dirs`` are unit direction vectors with quadrature ``weights``
    summing to the sphere area; ``t = r**n`` stores the radial extent in
    volume-linear coordinates and ``grad_t`` the magnitude of its
    tangential gradient on the sphere.
    """

    n: int
    dirs: np.ndarray
    weights: np.ndarray
    t: np.ndarray
    grad_t: np.ndarray

    def __post_init__(self) -> None:
        if np.any(self.t < 0.0):
            raise OutOfDomain("radial extent t must be nonnegative")
        total = float(self.weights.sum())
        target = unit_sphere_area(self.n)
        if abs(total - target) > 1e-9 * target:
            raise OutOfDomain(
                f"grid weights sum to {total}, expected sphere area {target}")


def sphere_grid(n: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature grid on the unit sphere: uniform angles for ``n = 2``,
    a Fibonacci lattice for ``n = 3``; equal weights in both cases."""
    if count < 8:
        raise GridTooCoarse(f"need >= 8 nodes, got {count}")
    if n == 2:
        ang = (np.arange(count) + 0.5) * (2.0 * math.pi / count)
        dirs = np.stack([np.cos(ang), np.sin(ang)], axis=1)
        weights = np.full(count, 2.0 * math.pi / count)
        return dirs, weights
    if n == 3:
        k = np.arange(count) + 0.5
        z = 1.0 - 2.0 * k / count
        azim = 2.0 * math.pi * k * (math.sqrt(5.0) - 1.0) / 2.0
        s = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        dirs = np.stack([s * np.cos(azim), s * np.sin(azim), z], axis=1)
        weights = np.full(count, 4.0 * math.pi / count)
        return dirs, weights
    raise OutOfDomain(f"spherical trial grids support n in {{2, 3}}, got {n}")


def random_star_region(n: int, count: int, seed: int, *,
                       amplitude: float = 0.3) -> StarRegion:
    """Seeded star-shaped perturbation of the unit ball.

    The extent is ``t = 1 + amplitude * g / max|g|`` with ``g`` a random
    low-order trigonometric polynomial (``n = 2``) or quadratic polynomial
    in the coordinates (``n = 3``); its tangential gradient on the sphere
    is evaluated analytically.
    """
    if not 0.0 <= amplitude < 1.0:
        raise OutOfDomain(f"amplitude must lie in [0, 1), got {amplitude}")
    if n == 3 and count < 500:
        raise GridTooCoarse(
            f"n = 3 checks need >= 500 nodes for a trustworthy average, "
            f"got {count}")
    rng = np.random.default_rng(seed)
    dirs, weights = sphere_grid(n, count)
    if n == 2:
        modes = 4
        a = rng.uniform(-1.0, 1.0, modes)
        b = rng.uniform(-1.0, 1.0, modes)
        ang = np.arctan2(dirs[:, 1], dirs[:, 0])
        k = np.arange(1, modes + 1)
        phase = np.outer(ang, k)
        g = np.cos(phase) @ a + np.sin(phase) @ b
        dg = -np.sin(phase) @ (a * k) + np.cos(phase) @ (b * k)
        norm = max(float(np.max(np.abs(g))), 1e-12)
        t = 1.0 + amplitude * g / norm
        grad_t = np.abs(dg) * (amplitude / norm)
        return StarRegion(n=2, dirs=dirs, weights=weights, t=t, grad_t=grad_t)
    if n == 3:
        lin = rng.uniform(-1.0, 1.0, 3)
        quad = rng.uniform(-1.0, 1.0, (3, 3))
        quad = 0.5 * (quad + quad.T)
        g = dirs @ lin + np.einsum("ki,ij,kj->k", dirs, quad, dirs)
        grad_full = lin[None, :] + 2.0 * dirs @ quad
        radial = np.sum(grad_full * dirs, axis=1)
        tang = grad_full - radial[:, None] * dirs
        norm = max(float(np.max(np.abs(g))), 1e-12)
        t = 1.0 + amplitude * g / norm
        grad_t = np.linalg.norm(tang, axis=1) * (amplitude / norm)
        return StarRegion(n=3, dirs=dirs, weights=weights, t=t, grad_t=grad_t)
    raise OutOfDomain(f"random star regions support n in {{2, 3}}, got {n}")


@dataclass(frozen=True)
class AveragingReport:
    """The three quantities of the averaging chain and the verdict."""

    q_full: float
    q_tangential: float
    q_ball: float
    ok: bool


def averaging_inequality_check(region: StarRegion, profile: RadialProfile, *,
                               tol: float = 1e-9) -> AveragingReport:
    """Evaluate ``Q_full >= Q_tangential >= Q_ball`` on one trial region.

    All three integrals use the reduced profile ``a - a(0)`` (the constant
    part contributes the same classical term to every region of the chain
    and cancels).  ``Q_full`` integrates the reduced weight over the actual
    boundary, ``Q_tangential`` drops the tilt factor
    ``sqrt(1 + |grad r|**2 / r**2)``, and ``Q_ball`` is the value on the
    centered ball of equal volume; the second step is Jensen's inequality
    for the convex certificate function and requires
    :func:`betta_convexity_check` to hold for this profile.
    """
    n = region.n
    if n == 3 and region.t.size < 500:
        raise GridTooCoarse("n = 3 averaging checks need >= 500 nodes")
    a0 = profile.a0
    with np.errstate(invalid="ignore"):
        r = region.t ** (1.0 / n)
    reduced = profile(r) - a0
    grad_r = np.where(region.t > 0.0,
                      region.grad_t * r / (n * np.maximum(region.t, 1e-300)),
                      0.0)
    q_full = float(np.dot(region.weights,
                          reduced * r ** (n - 2) * np.hypot(r, grad_r)))
    q_tang = float(np.dot(region.weights, reduced * r ** (n - 1)))
    sphere = unit_sphere_area(n)
    t_avg = float(np.dot(region.weights, region.t)) / sphere
    r_avg = t_avg ** (1.0 / n)
    f_avg = (float(profile(np.array([r_avg]))[0]) - a0) * t_avg ** (1.0 - 1.0 / n)
    q_ball = sphere * f_avg
    scale = max(abs(q_full), abs(q_tang), abs(q_ball), 1.0)
    ok = (q_full >= q_tang - tol * scale) and (q_tang >= q_ball - tol * scale)
    return AveragingReport(q_full=q_full, q_tangential=q_tang,
                           q_ball=q_ball, ok=bool(ok))
