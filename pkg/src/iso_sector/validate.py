"""Acceptance suite: every headline numerical claim, pass/fail.

Each criterion below reproduces one quantitative statement the toolkit is
built around, at a stated tolerance, using only public API.  The runner
prints one line per criterion and collects a JSON-ready report with no
volatile fields, so two runs with the same seeds emit identical bytes.

The tangent half-disk clause of criterion 9 is expected to fail: direct
comparison shows the tangent configuration beats the enclosing arc on a
band of areas above the covering threshold (see the repository notes),
so the literal "never competitive" claim is reported honestly as red.
"""

from __future__ import annotations

import functools
import io
import math
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import cgc, disk, oracle, radial, report, sector
from .measures import (
    PolarGraph,
    PowerDensity,
    arc_measures,
    arc_semicircle_crossover,
    polar_measures,
    sector_grid,
    semicircle_measures,
)

__all__ = ["CriterionResult", "ValidationReport", "run_all", "CRITERIA",
           "report_payload"]

BASE_SEED = 20240601


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: str

    @property
    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.number:02d}: {self.name} - {self.details}"


@dataclass(frozen=True)
class ValidationReport:
    results: tuple[CriterionResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failed_numbers(self) -> list[int]:
        return [r.number for r in self.results if not r.passed]


def report_payload(rep: ValidationReport) -> dict:
    return {
        "kind": "acceptance-report",
        "criteria": [
            {"number": r.number, "name": r.name, "passed": r.passed,
             "details": r.details}
            for r in rep.results
        ],
        "passed_count": sum(r.passed for r in rep.results),
        "failed": rep.failed_numbers,
    }


@functools.lru_cache(maxsize=4096)
def _classify(p: float, theta0: float) -> tuple[str, float, float, float, float]:
    cls = sector.classify_sector(PowerDensity(p), theta0)
    return (cls.winner.tag, cls.ratio_of(sector.ARC),
            cls.ratio_of(sector.SEMICIRCLE), cls.ratio_of(sector.UNDULARY),
            cls.margin)


def _relerr(got: float, want: float) -> float:
    return abs(got - want) / max(abs(want), 1e-300)


def criterion_01() -> CriterionResult:
    """Quadrature reproduces arc and half-disk closed forms to 1e-9."""
    tol = 1e-9
    worst = 0.0
    for p in (0.5, 1.0, 2.0, 5.0):
        dens = PowerDensity(p)
        theta = sector_grid(2.0, 2048)
        graph = PolarGraph(theta, np.full(theta.size, 1.3), 2.0)
        got = polar_measures(graph, dens)
        want = arc_measures(1.3, dens, 2.0)
        worst = max(worst, _relerr(got.perimeter, want.perimeter),
                    _relerr(got.area, want.area))
        theta = sector_grid(math.pi / 2.0, 2048, singular_end=True)
        graph = PolarGraph(theta, np.cos(theta), math.pi / 2.0)
        got = polar_measures(graph, dens)
        want = semicircle_measures(1.0, dens)
        worst = max(worst, _relerr(got.perimeter, want.perimeter),
                    _relerr(got.area, want.area))
    return CriterionResult(
        1, "closed-form measures at 2048 nodes", worst <= tol,
        f"worst relative error {worst:.3e} (tol {tol:.0e}, p in 0.5/1/2/5)")


def criterion_02() -> CriterionResult:
    """Curvature recovery on three exact equilibria to 1e-5."""
    tol = 1e-5
    worst = 0.0
    for p in (0.5, 1.0, 2.0, 5.0):
        dens = PowerDensity(p)
        theta = np.linspace(0.0, 1.2, 4096)
        lam = cgc.curvature_samples(theta, np.ones_like(theta), dens)
        worst = max(worst, float(np.max(np.abs(lam - (p + 1.0)))))
        theta = np.linspace(0.0, 1.45, 4096)
        lam = cgc.curvature_samples(theta, np.cos(theta), dens)
        worst = max(worst, float(np.max(np.abs(lam - (p + 2.0)))))
        span = 0.6 * math.pi / (2.0 * (p + 1.0))
        theta = np.linspace(0.0, span, 4096)
        rad = np.array([cgc.geodesic_radius(float(t), dens) for t in theta])
        lam = cgc.curvature_samples(theta, rad, dens)
        worst = max(worst, float(np.max(np.abs(lam))))
    return CriterionResult(
        2, "curvature calibration on exact equilibria", worst <= tol,
        f"worst absolute error {worst:.3e} (tol {tol:.0e})")


def criterion_03() -> CriterionResult:
    """Half-period limits at both ends of the radius range to 1e-4."""
    tol = 1e-4
    worst = 0.0
    for p in (0.5, 1.0, 2.0):
        dens = PowerDensity(p)
        worst = max(worst, abs(cgc.half_period(1.0 + 1e-6, dens)
                               - cgc.half_period_low_limit(dens)))
        worst = max(worst, abs(cgc.half_period(1e6, dens)
                               - cgc.half_period_high_limit(dens)))
    return CriterionResult(
        3, "half-period limits", worst <= tol,
        f"worst deviation {worst:.3e} (tol {tol:.0e})")


def criterion_04() -> CriterionResult:
    """Half period at p=2: monotone and confined on a 200-point log grid."""
    dens = PowerDensity(2.0)
    r1 = 1.0 + np.geomspace(1e-3, 49.0, 200)
    rows = cgc.period_table(dens, r1)
    periods = np.array([t for _, t in rows])
    low = cgc.half_period_low_limit(dens)
    high = cgc.half_period_high_limit(dens)
    monotone = bool(np.all(np.diff(periods) > -1e-12))
    confined = bool(np.all(periods > low - 1e-3)
                    and np.all(periods < high + 1e-3))
    ok = monotone and confined
    return CriterionResult(
        4, "half-period sweep monotone and confined", ok,
        f"p=2, 200 points on [1.001, 50], range "
        f"[{periods.min():.8f}, {periods.max():.8f}] inside "
        f"({low:.8f}, {high:.8f}) +/- 1e-3, monotone={monotone}")


def criterion_05() -> CriterionResult:
    """p=1 transitions near the conjectured openings, inside the enclosures.

    The located estimates must fall within 0.02 of the conjectured
    closed forms and within the bisection tolerance of the proven
    enclosing intervals (a bisection estimate a hair outside an interval
    endpoint is still consistent with a transition inside it).
    """
    dens = PowerDensity(1.0)
    tol = 1e-4
    est = sector.locate_transitions(dens, tol=tol)
    lo1, hi1, lo2, hi2 = sector.proven_transition_bounds(dens)
    conj1, conj2 = sector.conjectured_transitions(dens)
    near1 = abs(est.arc_loses_at - conj1) <= 0.02
    near2 = abs(est.semicircle_wins_at - conj2) <= 0.02
    ok1 = near1 and lo1 - tol <= est.arc_loses_at <= hi1 + tol
    ok2 = near2 and lo2 - tol <= est.semicircle_wins_at <= hi2 + tol
    return CriterionResult(
        5, "p=1 transitions inside proven enclosures", ok1 and ok2,
        f"arc loses at {est.arc_loses_at:.5f} in [{lo1:.5f}, {hi1:.5f}], "
        f"half-disk wins at {est.semicircle_wins_at:.5f} in "
        f"[{lo2:.5f}, {hi2:.5f}] (consistency tol 1e-4); conjectured "
        f"values differ by {abs(est.arc_loses_at - conj1):.2e} and "
        f"{abs(est.semicircle_wins_at - conj2):.2e}")


def criterion_06() -> CriterionResult:
    """Arc and half-disk win on their proven ranges; losses are final."""
    checks = []
    for p in (0.5, 1.0, 2.0):
        arc_grid = np.linspace(0.05, math.pi / (p + 1.0), 50)
        arc_ok = all(_classify(p, float(t))[0] == sector.ARC for t in arc_grid)
        semi_grid = np.linspace(math.pi, math.pi + 2.0, 50)
        semi_ok = all(_classify(p, float(t))[0] == sector.SEMICIRCLE
                      for t in semi_grid)
        sweep = np.linspace(0.2, 3.5, 160)
        tags = [_classify(p, float(t))[0] for t in sweep]
        arc_flags = [t == sector.ARC for t in tags]
        semi_flags = [t == sector.SEMICIRCLE for t in tags]
        arc_prefix = all(not a or all(arc_flags[:k + 1])
                         for k, a in enumerate(arc_flags))
        semi_suffix = all(not s or all(semi_flags[k:])
                          for k, s in enumerate(semi_flags))
        checks.append((p, arc_ok, semi_ok, arc_prefix and semi_suffix))
    ok = all(a and b and c for _, a, b, c in checks)
    detail = "; ".join(
        f"p={p:g}: arc-range={a}, half-disk-range={b}, no-comeback={c}"
        for p, a, b, c in checks)
    return CriterionResult(6, "winner ranges and once-lost-always-lost",
                           ok, detail)


def criterion_07() -> CriterionResult:
    """Ten thousand random trials of the small-opening inequality each."""
    parts = []
    ok = True
    for k, p in enumerate((0.5, 1.0, 2.0)):
        dens = PowerDensity(p)
        theta0 = math.pi / (p + 1.0)
        rep = sector.random_inequality_suite(dens, theta0,
                                             n_trials=10_000,
                                             seed=BASE_SEED + k)
        ok = ok and rep.violations == 0
        parts.append(f"p={p:g}: {rep.violations} violations, "
                     f"worst margin {rep.worst_margin:.3e}")
    return CriterionResult(7, "integral inequality randomized suite", ok,
                           "; ".join(parts))


def criterion_08() -> CriterionResult:
    """Arc/half-disk crossover at p=1 equals 9/4 to 1e-10."""
    got = arc_semicircle_crossover(PowerDensity(1.0))
    err = abs(got - 2.25)
    return CriterionResult(
        8, "p=1 crossover opening equals 9/4", err <= 1e-10,
        f"got {got!r}, |error| = {err:.3e} (tol 1e-10)")


def criterion_09() -> CriterionResult:
    """Disk-density thresholds; the tangent clause is expected red."""
    dd = disk.DiskDensity(2.0)
    theta0 = 1.5 * math.pi
    want = 9.0 * math.pi / 4.0
    closed = disk.large_area_threshold(dd, theta0)
    bisected = disk.bisect_large_area_threshold(dd, theta0)
    sub_a = abs(closed - want) <= 1e-9 and abs(bisected - want) <= 1e-9

    tie_theta = disk.small_area_crossover(dd)
    tiny = 1e-4
    below = disk.classify_disk(dd, tie_theta * (1.0 - 1e-6), tiny)[0].tag
    above = disk.classify_disk(dd, tie_theta * (1.0 + 1e-6), tiny)[0].tag
    p_arc = disk.candidate_perimeter(dd, tie_theta, disk.ARC_INSIDE, tiny)
    p_edge = disk.candidate_perimeter(dd, tie_theta, disk.EDGE_SEMICIRCLE, tiny)
    sub_b = (below == disk.ARC_INSIDE and above == disk.EDGE_SEMICIRCLE
             and _relerr(p_arc, p_edge) <= 1e-12)

    tangent_cells = []
    for t0 in (3.3, theta0, 5.5):
        big = disk.large_area_threshold(dd, t0)
        for area in np.linspace(0.5 * dd.a * t0 * 1.01, 1.5 * big, 40):
            best = disk.classify_disk(dd, t0, float(area))[0]
            p_tan = disk.tangent_semicircle_perimeter(dd, t0, float(area))
            if p_tan <= best.perimeter:
                tangent_cells.append((t0, float(area), p_tan, best))
    sub_c = not tangent_cells

    sign_ok = True
    for a in (1.5, 2.0, 4.0):
        for t0 in (math.pi / 2.0, math.pi, 1.5 * math.pi):
            changes = disk.bite_annulus_sign_changes(disk.DiskDensity(a), t0)
            sign_ok = sign_ok and changes <= 1
    sub_d = sign_ok

    parts = [f"large-area threshold 9*pi/4: {sub_a} "
             f"(closed {closed:.12f}, bisected {bisected:.12f})",
             f"tiny-area tie at pi/a exact: {sub_b}",
             f"tangent half-disk never competitive: {sub_c}",
             f"bite/annulus single handover: {sub_d}"]
    if tangent_cells:
        t0, area, p_tan, best = tangent_cells[0]
        parts.append(
            f"first counterexample: theta0={t0:.6f}, area={area:.6f}, "
            f"tangent {p_tan:.6f} <= {best.tag} {best.perimeter:.6f} "
            "(expected red; see notes)")
    return CriterionResult(9, "heavy-disk thresholds and comparisons",
                           sub_a and sub_b and sub_c and sub_d,
                           "; ".join(parts))


def criterion_10() -> CriterionResult:
    """Vanishing perimeter, averaging chain, and convexity verdicts."""
    demo_ok = True
    demo_parts = []
    for n, p in ((2, -1.0), (3, -2.0)):
        rows = radial.vanishing_perimeter_demo(n, p, 1.0)
        surf = np.array([row.surface for row in rows])
        decreasing = bool(np.all(np.diff(surf) < 0.0))
        collapsed = surf[-1] < surf[0] / 10.0
        demo_ok = demo_ok and decreasing and collapsed
        demo_parts.append(f"n={n}, p={p:g}: surface {surf[0]:.4f} -> "
                          f"{surf[-1]:.6f}, decreasing={decreasing}")

    profiles = [
        (radial.power_profile(1.0), "r"),
        (radial.power_profile(2.0), "r**2"),
        (radial.power_profile(3.0), "r**3"),
        (radial.RadialProfile(fn=lambda r: 1.0 + r, r_max=10.0,
                              label="1+r"), "1+r"),
    ]
    chain_ok = True
    trials = 0
    for n in (2, 3):
        for k, (prof, _) in enumerate(profiles):
            if not radial.betta_convexity_check(prof, n).convex:
                chain_ok = False
            for j in range(1000):
                region = radial.random_star_region(
                    n, 1024, seed=BASE_SEED + 1000 * n + 100 * k + j)
                if not radial.averaging_inequality_check(region, prof).ok:
                    chain_ok = False
                trials += 1

    verdicts = [
        (radial.power_profile(1.0), 2, True),
        (radial.power_profile(2.0), 2, True),
        (radial.power_profile(3.0), 3, True),
        (radial.RadialProfile(fn=lambda r: 1.0 + r, r_max=10.0,
                              label="1+r"), 3, True),
        (radial.power_profile(0.5), 2, False),
    ]
    verdict_ok = all(radial.betta_convexity_check(prof, n).convex == want
                     for prof, n, want in verdicts)

    ok = demo_ok and chain_ok and verdict_ok
    return CriterionResult(
        10, "radial densities: collapse, averaging chain, convexity", ok,
        "; ".join(demo_parts)
        + f"; averaging chain held in {trials} trials: {chain_ok}"
        + f"; convexity verdicts match: {verdict_ok}")


def criterion_11() -> CriterionResult:
    """Descent oracle agrees with the candidate classifier on 30 cells."""
    grad = max(oracle.gradient_check(oracle.OracleProblem(1.0, 2.0)),
               oracle.gradient_check(oracle.OracleProblem(2.0, 1.5)))
    grad_ok = grad <= 1e-5

    mismatches = []
    worst_dispersion = 0.0
    cells = 0
    for p in (1.0, 2.0):
        dens = PowerDensity(p)
        est = sector.locate_transitions(dens, tol=1e-4)
        guard = 0.06
        lo = 0.55 * est.arc_loses_at
        hi = min(est.semicircle_wins_at * 1.25, math.pi + 0.4)
        candidates = [t for t in np.linspace(lo, hi, 60)
                      if abs(t - est.arc_loses_at) > guard
                      and abs(t - est.semicircle_wins_at) > guard]
        chosen = [candidates[i]
                  for i in np.linspace(0, len(candidates) - 1, 15).astype(int)]
        for theta0 in chosen:
            cells += 1
            verdict = oracle.oracle_classify(
                oracle.OracleProblem(p, float(theta0)))
            want = _classify(p, float(theta0))[0]
            if verdict.tag != want:
                mismatches.append((p, float(theta0), verdict.tag, want))
            disp = oracle.curvature_dispersion(verdict.best, dens)
            worst_dispersion = max(worst_dispersion, disp)
    ok = grad_ok and not mismatches and worst_dispersion < 1e-3
    detail = (f"{cells} cells, {len(mismatches)} tag mismatches, "
              f"worst curvature dispersion {worst_dispersion:.3e} (tol 1e-3), "
              f"gradient check {grad:.3e} (tol 1e-5)")
    if mismatches:
        p, t0, got, want = mismatches[0]
        detail += f"; first mismatch p={p:g}, theta0={t0:.4f}: {got} vs {want}"
    return CriterionResult(11, "descent oracle agreement", ok, detail)


def _determinism_bundle() -> bytes:
    dens = PowerDensity(1.0)
    buf = io.BytesIO()
    rows = sector.phase_rows(dens, np.linspace(1.8, 3.2, 12))
    buf.write(report.csv_bytes(sector.PHASE_HEADER, rows))
    table = cgc.period_table(PowerDensity(2.0),
                             1.0 + np.geomspace(1e-5, 30.0, 40))
    buf.write(report.csv_bytes(("r1", "half_period"), table))
    dd = disk.DiskDensity(2.0)
    t0 = 1.5 * math.pi
    disk_rows = []
    for area in np.geomspace(0.05, 12.0, 25):
        ranked = disk.classify_disk(dd, t0, float(area))
        disk_rows.append((float(area), ranked[0].tag, ranked[0].perimeter))
    buf.write(report.csv_bytes(("area", "winner", "perimeter"), disk_rows))
    ineq = sector.random_inequality_suite(dens, 2.0, n_trials=200,
                                          seed=BASE_SEED)
    buf.write(report.json_bytes({
        "kind": "inequality-suite",
        "p": ineq.p, "theta0": ineq.theta0, "n_trials": ineq.n_trials,
        "violations": ineq.violations, "worst_margin": ineq.worst_margin,
    }))
    demo = radial.vanishing_perimeter_demo(2, -1.0, 1.0, radii=(2.0, 4.0, 8.0))
    buf.write(report.csv_bytes(
        ("radius", "center", "volume", "surface"),
        [(r.radius, r.center, r.volume, r.surface) for r in demo]))
    return buf.getvalue()


def _svg_bytes() -> bytes:
    theta = np.linspace(0.0, 2.0, 64)
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "probe.svg"
        report.plot_sector_curves(
            path, 2.0, [(theta, np.ones_like(theta), "arc")], "determinism probe")
        return path.read_bytes()


def criterion_12() -> CriterionResult:
    """Identical bytes from two same-seed report generations."""
    first = _determinism_bundle()
    second = _determinism_bundle()
    tables_ok = first == second
    svg_ok = _svg_bytes() == _svg_bytes()
    ok = tables_ok and svg_ok
    return CriterionResult(
        12, "byte-identical reports on repeated runs", ok,
        f"tables+json identical: {tables_ok} ({len(first)} bytes), "
        f"svg identical: {svg_ok}")


CRITERIA = {
    1: criterion_01,
    2: criterion_02,
    3: criterion_03,
    4: criterion_04,
    5: criterion_05,
    6: criterion_06,
    7: criterion_07,
    8: criterion_08,
    9: criterion_09,
    10: criterion_10,
    11: criterion_11,
    12: criterion_12,
}


def run_all(numbers=None, *, echo: bool = True) -> ValidationReport:
    """Run the selected criteria (all by default) in ascending order."""
    if numbers is None:
        numbers = sorted(CRITERIA)
    results = []
    for num in sorted(set(int(n) for n in numbers)):
        if num not in CRITERIA:
            raise KeyError(f"no criterion {num}; valid: {sorted(CRITERIA)}")
        res = CRITERIA[num]()
        results.append(res)
        if echo:
            print(res.line, flush=True)
    return ValidationReport(results=tuple(results))
