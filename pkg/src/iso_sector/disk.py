"""Isoperimetric candidates in a cone with a heavier unit disk.

The plane (or a cone of opening ``theta0``) carries density ``a > 1``
inside the unit disk ``D`` and ``1`` outside; length on the circle ``bd D``
itself is counted with weight 1 (the cheaper side).  Regions of prescribed
weighted area compete in weighted perimeter; the sector edges are free
boundary.

Closed-form candidates (all parameterized by a single radius or angle) are
ranked together with the two "bite" families, whose boundary inside ``D``
is a circular arc meeting ``bd D`` at the refraction angle
``arccos(1/a)``:

* ``arc-inside``      centered arc of radius ``R <= 1``
* ``arc-enclosing``   centered arc of radius ``R >= 1`` (all of ``D`` kept)
* ``annulus``         region between ``bd D`` and a centered arc inside
* ``edge-semicircle`` half-disk on a sector edge, outside ``D``
* ``bite-crescent``   lens against the edge, kept side inside ``D``
* ``bite-complement`` the disk sector minus such a lens

At ``theta0 = pi`` the enclosing arc is the enclosing half-disk, so no
separate tag is used.  The half-disk tangent to ``D`` from outside is kept
available (:func:`tangent_semicircle_perimeter`) for comparison runs but is
deliberately not part of the ranked candidate set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import (
    NonPositiveInput,
    NoTransition,
    OutOfDomain,
    ParamOutOfRange,
)

__all__ = [
    "DiskDensity",
    "snell_angle",
    "BitePiece",
    "bite_piece",
    "crescent_measures",
    "complement_measures",
    "crescent_area_range",
    "complement_area_range",
    "solve_crescent_for_area",
    "solve_complement_for_area",
    "DiskCandidate",
    "classify_disk",
    "candidate_perimeter",
    "large_area_threshold",
    "bisect_large_area_threshold",
    "small_area_crossover",
    "tangent_semicircle_perimeter",
    "one_endpoint_semicircle_ratio",
    "bite_annulus_sign_changes",
    "winner_transitions",
    "transition_curves_row",
    "DISK_TAGS",
]

ARC_INSIDE = "arc-inside"
ARC_ENCLOSING = "arc-enclosing"
ANNULUS = "annulus"
EDGE_SEMICIRCLE = "edge-semicircle"
BITE_CRESCENT = "bite-crescent"
BITE_COMPLEMENT = "bite-complement"

DISK_TAGS = (ARC_INSIDE, ARC_ENCLOSING, ANNULUS, EDGE_SEMICIRCLE,
             BITE_CRESCENT, BITE_COMPLEMENT)


@dataclass(frozen=True)
class DiskDensity:
    """Density ``a`` inside the unit disk, 1 outside, weight 1 on ``bd D``."""

    a: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and self.a > 1.0):
            raise OutOfDomain(f"disk density needs a > 1, got {self.a}")


def snell_angle(dd: DiskDensity) -> float:
    """Refraction angle ``arccos(1/a)`` between an equilibrium arc and
    ``bd D`` at a crossing point."""
    return math.acos(1.0 / dd.a)


def _check_opening(theta0: float) -> None:
    if not (0.0 < theta0 <= 2.0 * math.pi):
        raise ParamOutOfRange(f"opening must lie in (0, 2*pi], got {theta0}")


def _check_area(area: float) -> None:
    if area <= 0.0:
        raise NonPositiveInput(f"target area must be positive, got {area}")


@dataclass(frozen=True)
class BitePiece:
    """Geometry of one lens piece cut from the disk sector by an arc.

    The lens sits against the sector edge: its boundary is the edge
    segment, the unit-circle arc up to polar angle ``phi``, and a circular
    arc of radius ``rho`` centered at ``(c, 0)`` that meets the unit circle
    at ``(cos(phi), sin(phi))`` with the refraction condition and crosses
    the edge at ``(q, 0)``.  ``u`` is the opening of that arc, ``ell`` its
    length, and ``area`` the Euclidean area of the lens.  A degenerate
    straight chord is flagged by ``c = rho = inf``.
    """

    phi: float
    branch: int
    c: float
    rho: float
    q: float
    u: float
    ell: float
    area: float

    @property
    def is_chord(self) -> bool:
        return not math.isfinite(self.c)

    @property
    def max_extent(self) -> float:
        """Largest polar angle reached by the cutting arc."""
        if self.is_chord:
            return self.phi
        return math.asin(min(1.0, self.rho / self.c))


def bite_piece(dd: DiskDensity, phi: float, branch: int) -> BitePiece:
    """Lens geometry at contact angle ``phi`` for one refraction branch.

    ``branch = +1`` bends the cutting arc toward the origin (used by the
    crescent family); ``branch = -1`` bends it away (complement family).
    Valid for ``0 < phi < gamma`` with ``gamma = arccos(1/a)``; the
    complement branch degenerates to a straight chord as ``phi -> gamma``.
    All algebra is arranged to avoid cancellation: the radius comes from
    ``hypot`` and the edge crossing from the product form
    ``q = (2 c cos(phi) - 1) / (c + rho)``.
    """
    if branch not in (-1, 1):
        raise ParamOutOfRange(f"branch must be +1 or -1, got {branch}")
    gamma = snell_angle(dd)
    if not (0.0 < phi <= gamma):
        raise ParamOutOfRange(
            f"contact angle must lie in (0, {gamma:.6f}], got {phi}")
    root = math.sqrt(dd.a * dd.a - 1.0)
    m = math.cos(phi)
    s = math.sin(phi)
    den = m * root + branch * s
    if den <= 1e-13 * root:
        area = 0.5 * (phi - s * m)
        return BitePiece(phi=phi, branch=branch, c=math.inf, rho=math.inf,
                         q=m, u=0.0, ell=s, area=area)
    c = root / den
    rho = math.hypot(c - m, s)
    q = (2.0 * c * m - 1.0) / (c + rho)
    chord = math.hypot(m - q, s)
    u = 2.0 * math.asin(min(1.0, chord / (2.0 * rho)))
    ell = rho * u
    if u < 1e-4:
        bulge = rho * rho * (u ** 3 / 6.0) * (1.0 - u * u / 20.0) / 2.0
    else:
        bulge = rho * rho * (u - math.sin(u)) / 2.0
    area = 0.5 * (phi - q * s) + bulge
    return BitePiece(phi=phi, branch=branch, c=c, rho=rho, q=q, u=u,
                     ell=ell, area=area)


def _crescent_phi_cap(dd: DiskDensity, theta0: float) -> float:
    """Largest admissible contact angle for the crescent at this opening.

    Besides ``phi <= min(gamma, theta0)`` the outward-bending arc must stay
    inside the sector, which caps its polar extent at ``theta0``.
    """
    cap = min(snell_angle(dd), theta0)
    if bite_piece(dd, cap, 1).max_extent <= theta0:
        return cap
    lo, hi = 1e-12, cap
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if bite_piece(dd, mid, 1).max_extent <= theta0:
            lo = mid
        else:
            hi = mid
    return lo


def crescent_measures(dd: DiskDensity, theta0: float, phi: float
                      ) -> tuple[float, float, BitePiece]:
    """Weighted ``(area, perimeter)`` of the crescent kept inside ``D``.

    The crescent is bounded by the unit-circle arc (weight 1, length
    ``phi``), the cutting arc (inside ``D``, weight ``a``), and a free
    segment on the sector edge.
    """
    _check_opening(theta0)
    piece = bite_piece(dd, phi, 1)
    if phi > min(snell_angle(dd), theta0) or piece.max_extent > theta0 + 1e-12:
        raise ParamOutOfRange(
            f"crescent at phi={phi} does not fit the opening {theta0}")
    return dd.a * piece.area, dd.a * piece.ell + phi, piece


def complement_measures(dd: DiskDensity, theta0: float, phi: float
                        ) -> tuple[float, float, BitePiece]:
    """Weighted ``(area, perimeter)`` of the disk sector minus a lens.

    The kept region is everything of the disk sector except the lens at
    the edge; its boundary is the cutting arc (weight ``a``) plus the rest
    of the unit-circle arc (weight 1, length ``theta0 - phi``).
    """
    _check_opening(theta0)
    if phi > min(snell_angle(dd), theta0):
        raise ParamOutOfRange(
            f"complement lens at phi={phi} does not fit the opening {theta0}")
    piece = bite_piece(dd, phi, -1)
    area = dd.a * (0.5 * theta0 - piece.area)
    if area <= 0.0:
        raise ParamOutOfRange(
            f"lens at phi={phi} swallows the whole disk sector")
    return area, dd.a * piece.ell + (theta0 - phi), piece


def crescent_area_range(dd: DiskDensity, theta0: float) -> tuple[float, float]:
    """Open-closed interval ``(0, A_max]`` of crescent weighted areas."""
    cap = _crescent_phi_cap(dd, theta0)
    return 0.0, dd.a * bite_piece(dd, cap, 1).area


def complement_area_range(dd: DiskDensity, theta0: float) -> tuple[float, float]:
    """Interval ``[A_min, a*theta0/2)`` of complement weighted areas."""
    cap = min(snell_angle(dd), theta0)
    piece = bite_piece(dd, cap, -1)
    return dd.a * (0.5 * theta0 - piece.area), 0.5 * dd.a * theta0


def _solve_piece_phi(dd: DiskDensity, branch: int, target: float,
                     cap: float) -> float:
    """Contact angle whose lens area equals ``target`` (Euclidean)."""
    lo, hi = 1e-12, cap
    a_hi = bite_piece(dd, cap, branch).area
    if not 0.0 < target <= a_hi:
        raise ParamOutOfRange(
            f"lens area {target} outside attainable (0, {a_hi:.6g}]")
    if target == a_hi:
        return cap
    return float(brentq(lambda f: bite_piece(dd, float(f), branch).area - target,
                        lo, hi, xtol=1e-14, rtol=8.9e-16))


def solve_crescent_for_area(dd: DiskDensity, theta0: float, area: float
                            ) -> tuple[float, BitePiece]:
    """``(perimeter, geometry)`` of the crescent with given weighted area."""
    _check_area(area)
    cap = _crescent_phi_cap(dd, theta0)
    phi = _solve_piece_phi(dd, 1, area / dd.a, cap)
    _, perim, piece = crescent_measures(dd, theta0, phi)
    return perim, piece


def solve_complement_for_area(dd: DiskDensity, theta0: float, area: float
                              ) -> tuple[float, BitePiece]:
    """``(perimeter, geometry)`` of the complement with given weighted area."""
    _check_area(area)
    _check_opening(theta0)
    cap = min(snell_angle(dd), theta0)
    lens = 0.5 * theta0 - area / dd.a
    phi = _solve_piece_phi(dd, -1, lens, cap)
    _, perim, piece = complement_measures(dd, theta0, phi)
    return perim, piece


@dataclass(frozen=True)
class DiskCandidate:
    """One ranked competitor at fixed ``(a, theta0, area)``."""

    tag: str
    perimeter: float
    param: float


def _closed_form_candidates(dd: DiskDensity, theta0: float, area: float
                            ) -> list[DiskCandidate]:
    a = dd.a
    out = []
    r2 = 2.0 * area / (a * theta0)
    if r2 <= 1.0:
        out.append(DiskCandidate(ARC_INSIDE, a * theta0 * math.sqrt(r2),
                                 math.sqrt(r2)))
        rho2 = 1.0 - r2
        rho = math.sqrt(rho2)
        if rho > 0.0:
            out.append(DiskCandidate(ANNULUS, a * theta0 * rho + theta0, rho))
    excess = 2.0 * area - a * theta0
    if excess >= 0.0:
        r_out = math.sqrt(1.0 + excess / theta0)
        out.append(DiskCandidate(ARC_ENCLOSING, theta0 * r_out, r_out))
    s = math.sqrt(2.0 * area / math.pi)
    out.append(DiskCandidate(EDGE_SEMICIRCLE, math.pi * s, s))
    return out


def classify_disk(dd: DiskDensity, theta0: float, area: float, *,
                  tie_tol: float = 1e-12) -> list[DiskCandidate]:
    """All feasible candidates at this area, sorted by weighted perimeter.

    Ties within ``tie_tol`` (relative) keep their insertion order, closed
    forms first, so exact ties such as the arc/half-disk tie at
    ``theta0 = pi/a`` list the centered arc first.
    """
    _check_opening(theta0)
    _check_area(area)
    out = _closed_form_candidates(dd, theta0, area)
    lo_c, hi_c = crescent_area_range(dd, theta0)
    if lo_c < area <= hi_c:
        perim, piece = solve_crescent_for_area(dd, theta0, area)
        out.append(DiskCandidate(BITE_CRESCENT, perim, piece.phi))
    lo_k, hi_k = complement_area_range(dd, theta0)
    if lo_k <= area < hi_k:
        perim, piece = solve_complement_for_area(dd, theta0, area)
        out.append(DiskCandidate(BITE_COMPLEMENT, perim, piece.phi))
    out.sort(key=lambda cand: cand.perimeter)
    return out


def candidate_perimeter(dd: DiskDensity, theta0: float, tag: str,
                        area: float) -> float:
    """Weighted perimeter of one named candidate at the given area.

    Raises :class:`ParamOutOfRange` where the candidate is infeasible.
    """
    _check_opening(theta0)
    _check_area(area)
    a = dd.a
    if tag == ARC_INSIDE:
        r2 = 2.0 * area / (a * theta0)
        if r2 > 1.0:
            raise ParamOutOfRange("inside arc would leave the unit disk")
        return a * theta0 * math.sqrt(r2)
    if tag == ARC_ENCLOSING:
        excess = 2.0 * area - a * theta0
        if excess < 0.0:
            raise ParamOutOfRange("enclosing arc needs area >= a*theta0/2")
        return theta0 * math.sqrt(1.0 + excess / theta0)
    if tag == ANNULUS:
        r2 = 2.0 * area / (a * theta0)
        if not 0.0 < r2 < 1.0:
            raise ParamOutOfRange("annulus needs area in (0, a*theta0/2)")
        return a * theta0 * math.sqrt(1.0 - r2) + theta0
    if tag == EDGE_SEMICIRCLE:
        return math.pi * math.sqrt(2.0 * area / math.pi)
    if tag == BITE_CRESCENT:
        return solve_crescent_for_area(dd, theta0, area)[0]
    if tag == BITE_COMPLEMENT:
        return solve_complement_for_area(dd, theta0, area)[0]
    raise OutOfDomain(f"unknown candidate tag {tag!r}")


def large_area_threshold(dd: DiskDensity, theta0: float) -> float:
    """Area above which the edge half-disk beats the enclosing arc.

    Equating perimeters gives ``A = theta0**2 (a-1) / (2 (theta0 - pi))``
    for ``theta0 > pi``; for ``theta0 <= pi`` the enclosing arc wins at
    every large area and the threshold is infinite.
    """
    _check_opening(theta0)
    if theta0 <= math.pi:
        return math.inf
    return theta0 * theta0 * (dd.a - 1.0) / (2.0 * (theta0 - math.pi))


def bisect_large_area_threshold(dd: DiskDensity, theta0: float, *,
                                a_hi_factor: float = 50.0) -> float:
    """The same threshold located numerically, as an independent check.

    Root of ``P_enclosing(A) - P_edge(A)`` on ``(a*theta0/2, large)``;
    raises :class:`NoTransition` when the difference never changes sign
    (the ``theta0 <= pi`` regime).
    """
    _check_opening(theta0)
    lo = 0.5 * dd.a * theta0 * (1.0 + 1e-9)
    hi = a_hi_factor * max(1.0, lo)

    def gap(area: float) -> float:
        return (candidate_perimeter(dd, theta0, ARC_ENCLOSING, area)
                - candidate_perimeter(dd, theta0, EDGE_SEMICIRCLE, area))

    if gap(lo) >= 0.0 or gap(hi) <= 0.0:
        raise NoTransition(
            f"enclosing arc vs edge half-disk never crosses on "
            f"[{lo:.6g}, {hi:.6g}] at theta0={theta0}")
    return float(brentq(gap, lo, hi, xtol=1e-12, rtol=8.9e-16))


def small_area_crossover(dd: DiskDensity) -> float:
    """Opening where tiny inside arcs and tiny edge half-disks tie.

    Both families have area-independent ``P**2 / A`` at small area
    (``2 a theta0`` and ``2 pi``), so they tie exactly at
    ``theta0 = pi / a``.
    """
    return math.pi / dd.a


def tangent_semicircle_perimeter(dd: DiskDensity, theta0: float,
                                 area: float) -> float:
    """Perimeter of the half-disk of radius ``R >= 1`` covering the heavy
    disk, for openings beyond ``pi``.

    The region is the half-disk plus the rest of the disk sector on the
    remaining arms: ``P = pi R + (theta0 - pi)`` and
    ``A = a theta0 / 2 + (pi/2)(R**2 - 1)``.  Not part of the ranked set;
    provided for comparison sweeps.
    """
    _check_opening(theta0)
    _check_area(area)
    if theta0 <= math.pi:
        raise ParamOutOfRange(
            f"tangent half-disk needs theta0 > pi, got {theta0}")
    excess = 2.0 * area - dd.a * theta0
    if excess < 0.0:
        raise ParamOutOfRange("tangent half-disk needs area >= a*theta0/2")
    r = math.sqrt(1.0 + excess / math.pi)
    return math.pi * r + (theta0 - math.pi)


def one_endpoint_semicircle_ratio(dd: DiskDensity, beta: float) -> float:
    """``P**2 / A`` of a half-disk whose diameter endpoint touches ``bd D``
    with a fraction ``beta`` of its arc inside the heavy disk.

    Linearizing in the half-disk size gives ``2 (pi + beta (a - 1))``,
    always worse than the outside value ``2 pi``.
    """
    if not 0.0 <= beta <= math.pi:
        raise ParamOutOfRange(f"arc fraction must lie in [0, pi], got {beta}")
    return 2.0 * (math.pi + beta * (dd.a - 1.0))


def bite_annulus_sign_changes(dd: DiskDensity, theta0: float, *,
                              n_grid: int = 200) -> int:
    """Sign changes of ``P_bite_best - P_annulus`` across shared areas.

    The comparison runs on a geometric area ladder inside the annulus
    range, restricted to points where at least one bite family is
    feasible; at most one sign change is expected.
    """
    _check_opening(theta0)
    hi = 0.5 * dd.a * theta0
    areas = np.geomspace(hi * 1e-4, hi * (1.0 - 1e-9), n_grid)
    lo_c, hi_c = crescent_area_range(dd, theta0)
    lo_k, hi_k = complement_area_range(dd, theta0)
    signs = []
    for area in areas:
        best = math.inf
        if lo_c < area <= hi_c:
            best = min(best, solve_crescent_for_area(dd, theta0, float(area))[0])
        if lo_k <= area < hi_k:
            best = min(best, solve_complement_for_area(dd, theta0, float(area))[0])
        if not math.isfinite(best):
            continue
        gap = best - candidate_perimeter(dd, theta0, ANNULUS, float(area))
        if gap != 0.0:
            signs.append(1 if gap > 0 else -1)
    return int(np.count_nonzero(np.diff(np.array(signs))))


def winner_transitions(dd: DiskDensity, theta0: float, *,
                       area_lo: float = 1e-3, area_hi: float | None = None,
                       n_grid: int = 400) -> list[tuple[float, str, str]]:
    """Areas where the ranked winner changes, refined by root finding.

    Scans a geometric area ladder, then solves
    ``P_before(A) = P_after(A)`` on each bracketing interval.  Exact grid
    ties are reported at the grid point itself.
    """
    _check_opening(theta0)
    if area_hi is None:
        base = 0.5 * dd.a * theta0
        big = large_area_threshold(dd, theta0)
        area_hi = 1.5 * (big if math.isfinite(big) else base) + 3.0 * base
    areas = np.geomspace(area_lo, area_hi, n_grid)
    winners = [classify_disk(dd, theta0, float(area))[0].tag for area in areas]
    out: list[tuple[float, str, str]] = []
    for k in range(len(areas) - 1):
        before, after = winners[k], winners[k + 1]
        if before == after:
            continue

        def gap(area: float) -> float:
            # An infeasible candidate cannot win, so the sign of the
            # perimeter gap extends across feasibility boundaries (the
            # enclosing arc and the annulus exist on complementary area
            # ranges meeting at the full sector area).
            try:
                pb = candidate_perimeter(dd, theta0, before, area)
            except ParamOutOfRange:
                return math.inf
            try:
                pa = candidate_perimeter(dd, theta0, after, area)
            except ParamOutOfRange:
                return -math.inf
            return pb - pa

        lo, hi = float(areas[k]), float(areas[k + 1])
        glo, ghi = gap(lo), gap(hi)
        if glo == 0.0:
            cross = lo
        elif ghi == 0.0:
            cross = hi
        elif glo < 0.0 < ghi:
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                gm = gap(mid)
                if gm == 0.0:
                    lo = hi = mid
                    break
                if gm < 0.0:
                    lo = mid
                else:
                    hi = mid
            cross = 0.5 * (lo + hi)
        else:
            cross = lo
        out.append((cross, before, after))
    return out


def transition_curves_row(dd: DiskDensity, *, eps: float = 1e-3,
                          theta_hi: float = 2.0 * math.pi
                          ) -> tuple[float, float, float]:
    """One row ``(a, theta_small, theta_bite)`` of the transition curves.

    ``theta_small = pi/a`` is the exact tie of tiny arcs and tiny edge
    half-disks.  ``theta_bite`` is the opening where, just below the full
    disk-sector area (deficit ``eps``), the best bite overtakes the
    annulus; located by bisection on that predicate and nearly independent
    of ``eps`` because both perimeter deficits scale as ``sqrt(eps)``.
    """

    def bite_beats_annulus(theta0: float) -> bool:
        area = 0.5 * dd.a * theta0 - eps
        if area <= 0.0:
            return False
        p_ann = candidate_perimeter(dd, theta0, ANNULUS, area)
        best = math.inf
        lo_k, hi_k = complement_area_range(dd, theta0)
        if lo_k <= area < hi_k:
            best = min(best, solve_complement_for_area(dd, theta0, area)[0])
        lo_c, hi_c = crescent_area_range(dd, theta0)
        if lo_c < area <= hi_c:
            best = min(best, solve_crescent_for_area(dd, theta0, area)[0])
        return best < p_ann

    lo, hi = 1e-2, theta_hi
    if bite_beats_annulus(lo) or not bite_beats_annulus(hi):
        raise NoTransition(
            f"bite/annulus handover not bracketed on [{lo}, {hi}] at a={dd.a}")
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if bite_beats_annulus(mid):
            hi = mid
        else:
            lo = mid
    return dd.a, small_area_crossover(dd), 0.5 * (lo + hi)
