"""Isoperimetric classification in sectors with density ``r**p``.

For each half-opening ``theta0`` the candidate minimizers are the centered
arc, the edge half-disk, and (when the boundary problem is solvable) the
equilibrium undulary whose half wave spans the sector exactly.  The winner
is the candidate with the smallest scale invariant ratio.  The module also
locates the transition openings by bisection, evaluates the second
variation stability indicator of the centered arc, and runs randomized
checks of the integral inequality that underlies the small-opening regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .cgc import NoSolution, solve_equilibrium_undulary, undulary_measures
from .errors import BracketFailure, NonPositiveFunction, NonPositiveInput, OutOfDomain
from .measures import PowerDensity, arc_ratio, iso_ratio, semicircle_ratio

__all__ = [
    "Candidate",
    "Classification",
    "classify_sector",
    "proven_transition_bounds",
    "conjectured_transitions",
    "locate_transitions",
    "TransitionEstimate",
    "arc_stability_index",
    "arc_is_stable",
    "inequality_trial",
    "random_inequality_suite",
    "InequalityReport",
    "phase_rows",
    "PHASE_HEADER",
]

ARC = "arc"
SEMICIRCLE = "semicircle"
UNDULARY = "undulary"


@dataclass(frozen=True)
class Candidate:
    """One competitor: its tag, invariant ratio, and defining parameter.

    ``param`` is the outer radius ``r1`` for undularies and has no meaning
    for the scale invariant arc and half-disk entries (set to 1).
    """

    tag: str
    ratio: float
    param: float = 1.0


@dataclass(frozen=True)
class Classification:
    """Ranked candidates for one ``(p, theta0)`` cell."""

    p: float
    theta0: float
    candidates: tuple[Candidate, ...]
    note: str = ""

    @property
    def winner(self) -> Candidate:
        return self.candidates[0]

    @property
    def margin(self) -> float:
        """Ratio gap between the runner-up and the winner (0 if unique)."""
        if len(self.candidates) < 2:
            return math.inf
        return self.candidates[1].ratio - self.candidates[0].ratio

    def ratio_of(self, tag: str) -> float:
        for c in self.candidates:
            if c.tag == tag:
                return c.ratio
        return math.nan


def classify_sector(dens: PowerDensity, theta0: float) -> Classification:
    """Rank the closed-form competitors and the equilibrium undulary.

    The half-disk competitor requires ``p > 0``; for ``p <= 0`` only the
    arc and the undulary compete.  The undulary entry is present exactly
    when the half-wave boundary problem has a solution at this opening.
    """
    if theta0 <= 0.0:
        raise NonPositiveInput(f"opening must be positive, got {theta0}")
    p = dens.p
    if p <= -1.0:
        raise OutOfDomain(f"classification needs p > -1, got {p}")
    entries = [Candidate(ARC, arc_ratio(dens, theta0))]
    if p > 0.0:
        entries.append(Candidate(SEMICIRCLE, semicircle_ratio(dens)))
    note = ""
    sol = solve_equilibrium_undulary(theta0, dens)
    if isinstance(sol, NoSolution):
        note = (f"no undulary half wave: attainable periods "
                f"[{sol.t_min:.6f}, {sol.t_max:.6f}]")
    else:
        span, perim, area = undulary_measures(sol)
        entries.append(Candidate(UNDULARY, iso_ratio(perim, area, dens), sol.r1))
    entries.sort(key=lambda c: c.ratio)
    return Classification(p=p, theta0=theta0, candidates=tuple(entries), note=note)


def proven_transition_bounds(dens: PowerDensity) -> tuple[float, float, float, float]:
    """Rigorous enclosures ``(t1_lo, t1_hi, t2_lo, t2_hi)`` for the two
    transition openings, available at ``p = 1`` and ``p = 3``.

    The arc stops winning somewhere in ``[t1_lo, t1_hi]`` and the half-disk
    starts winning somewhere in ``[t2_lo, t2_hi]``.
    """
    if dens.p == 1.0:
        return (2.0, math.pi / math.sqrt(2.0), 3.0 * math.pi / 4.0, math.pi)
    if dens.p == 3.0:
        return (math.pi / 4.0, math.pi / 2.0, 5.0 * math.pi / 8.0, math.pi)
    raise OutOfDomain(f"proven enclosures known only for p in {{1, 3}}, got {dens.p}")


def conjectured_transitions(dens: PowerDensity) -> tuple[float, float]:
    """Conjectured exact transition openings
    ``(pi/sqrt(p+1), pi(p+2)/(2p+2))``."""
    p = dens.p
    if p <= -1.0:
        raise OutOfDomain(f"need p > -1, got {p}")
    return (math.pi / math.sqrt(p + 1.0),
            math.pi * (p + 2.0) / (2.0 * p + 2.0))


@dataclass(frozen=True)
class TransitionEstimate:
    """Bisection estimates of the two transition openings."""

    p: float
    arc_loses_at: float
    semicircle_wins_at: float
    tol: float


def _winner_tag(dens: PowerDensity, theta0: float,
                cache: dict[float, str] | None = None) -> str:
    if cache is not None and theta0 in cache:
        return cache[theta0]
    tag = classify_sector(dens, theta0).winner.tag
    if cache is not None:
        cache[theta0] = tag
    return tag


def locate_transitions(dens: PowerDensity, *, tol: float = 1e-4,
                       bracket_pad: float = 0.15) -> TransitionEstimate:
    """Bisect the openings where the arc stops and the half-disk starts
    winning.

    Brackets are seeded from the conjectured values padded by
    ``bracket_pad`` and verified before refinement.  Requires ``p > 0`` so
    that all three competitors exist.
    """
    if dens.p <= 0.0:
        raise OutOfDomain(f"transition search needs p > 0, got {dens.p}")
    conj1, conj2 = conjectured_transitions(dens)
    cache: dict[float, str] = {}

    def bisect(lo: float, hi: float, predicate) -> float:
        if not predicate(lo) or predicate(hi):
            raise BracketFailure(
                f"transition bracket [{lo:.4f}, {hi:.4f}] does not straddle")
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if predicate(mid):
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    t1 = bisect(conj1 - bracket_pad, conj1 + bracket_pad,
                lambda t: _winner_tag(dens, t, cache) == ARC)
    t2 = bisect(conj2 - bracket_pad, min(conj2 + bracket_pad, math.pi + 0.05),
                lambda t: _winner_tag(dens, t, cache) != SEMICIRCLE)
    return TransitionEstimate(p=dens.p, arc_loses_at=t1,
                              semicircle_wins_at=t2, tol=tol)


def arc_stability_index(dens: PowerDensity, theta0: float) -> float:
    """Second variation indicator ``Q = (1+p) (theta0/pi)**2`` of the
    centered arc.

    The lowest admissible perturbation mode has wavenumber ``pi/theta0``;
    the arc is a stable equilibrium iff ``Q < 1``.  For ``p < -1`` every
    opening is stable and ``Q`` is reported as 0.
    """
    if theta0 <= 0.0:
        raise NonPositiveInput(f"opening must be positive, got {theta0}")
    if dens.p < -1.0:
        return 0.0
    return (1.0 + dens.p) * (theta0 / math.pi) ** 2


def arc_is_stable(dens: PowerDensity, theta0: float, *,
                  boundary_tol: float = 1e-12) -> bool | None:
    """Stability verdict from :func:`arc_stability_index`.

    Returns ``None`` within ``boundary_tol`` of the neutral value 1, where
    the quadratic form has a kernel and the second variation is silent.
    """
    q = arc_stability_index(dens, theta0)
    if abs(q - 1.0) <= boundary_tol:
        return None
    return q < 1.0


def inequality_trial(dens: PowerDensity, theta0: float,
                     coeffs: np.ndarray, *, floor: float = 0.05,
                     nodes: int = 2049, tol: float = 1e-10
                     ) -> tuple[bool, float]:
    """Test one trial function against the small-opening integral inequality.

    The trial radius on ``[0, 1]`` is ``r = floor + |T|`` where ``T`` is the
    trigonometric polynomial with coefficient rows ``coeffs[0]`` (cosines)
    and ``coeffs[1]`` (sines).  The inequality compares

        (integral of r**((p+2)/(p+1)))**((p+1)/(p+2))
        <=  integral of sqrt(r**2 + r'**2 / ((p+1) theta0)**2)

    and a violation is a left side exceeding the right side by more than
    ``tol``.  Returns ``(violated, margin)`` with ``margin = lhs - rhs``.
    """
    p = dens.p
    if p <= -1.0:
        raise OutOfDomain(f"inequality trial needs p > -1, got {p}")
    if theta0 <= 0.0:
        raise NonPositiveInput(f"opening must be positive, got {theta0}")
    if floor <= 0.0:
        raise NonPositiveFunction(f"trial floor must be positive, got {floor}")
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.ndim != 2 or coeffs.shape[0] != 2:
        raise OutOfDomain("coeffs must have shape (2, n_modes)")
    n = nodes if nodes % 2 == 1 else nodes + 1
    alpha = np.linspace(0.0, 1.0, n)
    k = np.arange(coeffs.shape[1])
    phase = 2.0 * math.pi * np.outer(k, alpha)
    t = coeffs[0] @ np.cos(phase) + coeffs[1] @ np.sin(phase)
    dt = (-coeffs[0] * 2.0 * math.pi * k) @ np.sin(phase) \
        + (coeffs[1] * 2.0 * math.pi * k) @ np.cos(phase)
    r = floor + np.abs(t)
    rp = np.sign(t) * dt
    lhs = simpson(r ** ((p + 2.0) / (p + 1.0)), x=alpha) ** ((p + 1.0) / (p + 2.0))
    rhs = simpson(np.hypot(r, rp / ((p + 1.0) * theta0)), x=alpha)
    margin = lhs - rhs
    return bool(margin > tol), float(margin)


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of a randomized inequality suite."""

    p: float
    theta0: float
    n_trials: int
    violations: int
    worst_margin: float
    seed: int


def random_inequality_suite(dens: PowerDensity, theta0: float, *,
                            n_trials: int = 10_000, seed: int = 0,
                            n_modes: int = 8, nodes: int = 2049
                            ) -> InequalityReport:
    """Run seeded random trials of :func:`inequality_trial`.

    Coefficients are uniform on ``[-1, 1]``; the count of violations and
    the worst (largest) margin are reported.  Evaluation is vectorized in
    batches, so ten thousand trials take a few seconds.
    """
    p = dens.p
    if p <= -1.0:
        raise OutOfDomain(f"inequality suite needs p > -1, got {p}")
    rng = np.random.default_rng(seed)
    n = nodes if nodes % 2 == 1 else nodes + 1
    alpha = np.linspace(0.0, 1.0, n)
    k = np.arange(n_modes)
    cos_tab = np.cos(2.0 * math.pi * np.outer(k, alpha))
    sin_tab = np.sin(2.0 * math.pi * np.outer(k, alpha))
    scale = (p + 1.0) * theta0
    violations = 0
    worst = -math.inf
    batch = 500
    done = 0
    while done < n_trials:
        m = min(batch, n_trials - done)
        a = rng.uniform(-1.0, 1.0, size=(m, n_modes))
        b = rng.uniform(-1.0, 1.0, size=(m, n_modes))
        t = a @ cos_tab + b @ sin_tab
        dt = (-a * (2.0 * math.pi * k)) @ sin_tab + (b * (2.0 * math.pi * k)) @ cos_tab
        r = 0.05 + np.abs(t)
        rp = np.sign(t) * dt
        lhs = simpson(r ** ((p + 2.0) / (p + 1.0)), x=alpha, axis=1) \
            ** ((p + 1.0) / (p + 2.0))
        rhs = simpson(np.hypot(r, rp / scale), x=alpha, axis=1)
        margins = lhs - rhs
        violations += int(np.count_nonzero(margins > 1e-10))
        worst = max(worst, float(margins.max()))
        done += m
    return InequalityReport(p=p, theta0=theta0, n_trials=n_trials,
                            violations=violations, worst_margin=worst, seed=seed)


PHASE_HEADER = ("p", "theta0", "winner", "arc_ratio", "semi_ratio",
                "und_ratio", "margin")


def phase_rows(dens: PowerDensity, theta_values) -> list[tuple]:
    """Classification table rows for one ``p`` across many openings.

    Columns follow :data:`PHASE_HEADER`; the undulary ratio is NaN where
    the half-wave problem has no solution.
    """
    rows = []
    for theta0 in theta_values:
        cls = classify_sector(dens, float(theta0))
        rows.append((dens.p, float(theta0), cls.winner.tag,
                     cls.ratio_of(ARC), cls.ratio_of(SEMICIRCLE),
                     cls.ratio_of(UNDULARY), cls.margin))
    return rows
