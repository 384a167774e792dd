"""Constant generalized curvature curves: waves, periods, and the solver."""

import math

import numpy as np
import pytest

from iso_sector import (
    CurveClass,
    NoSolution,
    OutOfDomain,
    PowerDensity,
    UndularySpec,
    classify_curvature,
    generalized_curvature_of,
    geodesic_radius,
    half_period,
    half_period_high_limit,
    half_period_low_limit,
    integrate_undulary,
    lambda_of_r1,
    period_table,
    polar_measures,
    solve_equilibrium_undulary,
    undulary_measures,
)

P1 = PowerDensity(1.0)


def test_curvature_classes():
    assert classify_curvature(0.0, P1) is CurveClass.GEODESIC
    assert classify_curvature(2.0, P1) is CurveClass.CIRCLE_ABOUT_ORIGIN
    assert classify_curvature(3.0, P1) is CurveClass.CIRCLE_THROUGH_ORIGIN
    assert classify_curvature(1.3, P1) is CurveClass.UNDULARY
    assert classify_curvature(2.7, P1) is CurveClass.UNDULARY
    assert classify_curvature(3.5, P1) is CurveClass.NODOID
    assert classify_curvature(-0.2, P1) is CurveClass.NODOID
    with pytest.raises(OutOfDomain):
        classify_curvature(math.nan, P1)


def test_geodesic_radius_profile():
    assert geodesic_radius(0.0, P1) == pytest.approx(1.0, abs=1e-15)
    assert geodesic_radius(math.pi / 6.0, P1) == pytest.approx(math.sqrt(2.0), rel=1e-13)
    with pytest.raises(OutOfDomain):
        geodesic_radius(math.pi / 4.0, P1)


def test_lambda_closed_form():
    assert lambda_of_r1(2.0, P1) == pytest.approx(9.0 / 7.0, rel=1e-13)
    # degenerate limit r1 -> 1 approaches the centered-circle curvature p+1
    assert lambda_of_r1(1.0 + 1e-9, P1) == pytest.approx(2.0, abs=1e-6)
    # wide limit r1 -> infinity approaches 0 from above
    assert 0.0 < lambda_of_r1(1e9, P1) < 1e-6
    with pytest.raises(OutOfDomain):
        lambda_of_r1(1.0, P1)


def test_half_period_limits():
    for p in (0.5, 1.0, 2.0):
        dens = PowerDensity(p)
        low = half_period_low_limit(dens)
        high = half_period_high_limit(dens)
        assert low == pytest.approx(math.pi / math.sqrt(p + 1.0), rel=1e-15)
        assert high == pytest.approx(math.pi * (p + 2.0) / (2.0 * p + 2.0), rel=1e-15)
        assert abs(half_period(1.0 + 1e-6, dens) - low) < 1e-4
        t_wide = half_period(1e6, dens)
        assert t_wide < high
        assert high - t_wide < 1e-3


def test_half_period_monotone_on_clean_ladder():
    r1 = 1.0 + np.geomspace(1e-3, 30.0, 30)
    rows = period_table(P1, r1)
    periods = [t for _, t in rows]
    assert all(b > a for a, b in zip(periods, periods[1:]))
    assert all(half_period_low_limit(P1) < t < half_period_high_limit(P1)
               for t in periods)


def test_solver_reports_attainable_range():
    res = solve_equilibrium_undulary(1.0, P1)
    assert isinstance(res, NoSolution)
    assert res.t_min == pytest.approx(math.pi / math.sqrt(2.0), abs=1e-3)
    assert res.t_max < half_period_high_limit(P1) + 1e-9
    res_high = solve_equilibrium_undulary(math.pi, P1)
    assert isinstance(res_high, NoSolution)


def test_solver_certifies_interior_root():
    dens = PowerDensity(2.0)
    spec = solve_equilibrium_undulary(1.95, dens)
    assert isinstance(spec, UndularySpec)
    assert abs(half_period(spec.r1, dens) - 1.95) < 1e-8
    assert 0.0 < spec.lam < dens.p + 2.0


def test_wave_integration_properties():
    spec = UndularySpec.from_r1(2.0, P1)
    graph = integrate_undulary(spec)
    assert graph.radius[0] == pytest.approx(1.0, abs=1e-12)
    assert graph.radius[-1] == pytest.approx(2.0, abs=1e-9)
    assert np.all(np.diff(graph.radius) > 0.0)
    assert graph.theta0 == pytest.approx(half_period(2.0, P1), abs=1e-9)
    # first integral: r**(p+2) / sqrt(r**2 + r'**2)  -  lam r**(p+1)/(p+2)
    # is constant along the wave; check through the curvature samples
    lam = generalized_curvature_of(graph, P1)
    interior = slice(graph.theta.size // 8, -graph.theta.size // 8)
    assert np.max(np.abs(lam[interior] - spec.lam)) < 1e-5


def test_wave_measures_match_quadrature():
    spec = UndularySpec.from_r1(2.0, P1)
    theta_span, perimeter, area = undulary_measures(spec)
    assert theta_span == pytest.approx(half_period(2.0, P1), rel=1e-11)
    graph = integrate_undulary(spec, nodes=4097)
    m = polar_measures(graph, P1)
    ratio_direct = perimeter * area ** (-(P1.p + 1.0) / (P1.p + 2.0))
    assert m.ratio == pytest.approx(ratio_direct, rel=1e-6)


def test_wave_scaling_invariance():
    # scaling a wave by 1/r1 and reversing the angle gives the same shape
    # oscillating between 1/r1 and 1, so the ratio must be unchanged
    spec = UndularySpec.from_r1(2.0, P1)
    graph = integrate_undulary(spec, nodes=2049)
    from iso_sector import PolarGraph
    flipped = PolarGraph(graph.theta0 - graph.theta[::-1],
                         graph.radius[::-1] / spec.r1)
    m0 = polar_measures(graph, P1)
    m1 = polar_measures(flipped, P1)
    assert m1.ratio == pytest.approx(m0.ratio, rel=1e-9)


def test_near_circular_wave_degenerates_to_circle():
    spec = UndularySpec.from_r1(1.001, P1)
    graph = integrate_undulary(spec)
    assert np.max(np.abs(graph.radius - 1.0)) <= 1e-3 + 1e-15
    assert graph.theta0 == pytest.approx(math.pi / math.sqrt(2.0), abs=1e-6)
    with pytest.raises(OutOfDomain):
        integrate_undulary(UndularySpec.from_r1(1.0 + 1e-4, P1))
