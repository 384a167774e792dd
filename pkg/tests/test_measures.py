"""Weighted measures: closed forms, quadrature, and the scale invariant."""

import math

import numpy as np
import pytest

from iso_sector import (
    DegenerateGrid,
    NonPositiveInput,
    OutOfDomain,
    PolarGraph,
    PowerDensity,
    ZeroExponent,
    arc_measures,
    arc_ratio,
    arc_semicircle_crossover,
    change_coordinates,
    derivative_samples,
    iso_ratio,
    polar_measures,
    sector_grid,
    semicircle_measures,
    semicircle_ratio,
    wallis_integral,
)


def test_arc_anchor_linear_density():
    m = arc_measures(1.0, PowerDensity(1.0), 2.0)
    assert m.perimeter == pytest.approx(2.0, rel=1e-14)
    assert m.area == pytest.approx(2.0 / 3.0, rel=1e-14)
    assert m.ratio == pytest.approx(2.0 ** (1.0 / 3.0) * 3.0 ** (2.0 / 3.0), rel=1e-13)


def test_arc_anchor_quadratic_density():
    m = arc_measures(3.0, PowerDensity(2.0), 1.0)
    assert m.perimeter == pytest.approx(27.0, rel=1e-14)
    assert m.area == pytest.approx(81.0 / 4.0, rel=1e-14)
    assert m.ratio == pytest.approx(4.0 ** 0.75, rel=1e-13)


def test_arc_ratio_closed_form():
    for p in (0.5, 1.0, 2.0, 3.0):
        for theta0 in (0.7, 2.0, 3.1):
            expected = theta0 ** (1.0 / (p + 2.0)) * (p + 2.0) ** ((p + 1.0) / (p + 2.0))
            assert arc_ratio(PowerDensity(p), theta0) == pytest.approx(expected, rel=1e-13)
            m = arc_measures(1.7, PowerDensity(p), theta0)
            assert m.ratio == pytest.approx(expected, rel=1e-12)


def test_half_disk_anchor_linear_density():
    m = semicircle_measures(1.0, PowerDensity(1.0))
    assert m.perimeter == pytest.approx(1.0, rel=1e-14)
    assert m.area == pytest.approx(2.0 / 9.0, rel=1e-14)
    assert m.ratio == pytest.approx(4.5 ** (2.0 / 3.0), rel=1e-13)


def test_half_disk_ratio_is_diameter_free():
    dens = PowerDensity(1.4)
    base = semicircle_ratio(dens)
    for d in (0.2, 1.0, 7.5):
        assert semicircle_measures(d, dens).ratio == pytest.approx(base, rel=1e-12)


def test_half_disk_matches_cosine_moments():
    for p in (0.5, 1.0, 2.0, 3.5):
        m = semicircle_measures(1.0, PowerDensity(p))
        w_p = wallis_integral(p)
        w_p2 = wallis_integral(p + 2.0)
        assert m.perimeter == pytest.approx(w_p / 2.0, rel=1e-13)
        assert m.area == pytest.approx(w_p2 / (2.0 * (p + 2.0)), rel=1e-13)


def test_cosine_moment_anchors_and_recurrence():
    assert wallis_integral(0.0) == pytest.approx(math.pi, rel=1e-15)
    assert wallis_integral(1.0) == pytest.approx(2.0, rel=1e-14)
    assert wallis_integral(2.0) == pytest.approx(math.pi / 2.0, rel=1e-14)
    assert wallis_integral(3.0) == pytest.approx(4.0 / 3.0, rel=1e-14)
    for m in (0.3, 1.7, 6.2):
        assert wallis_integral(m + 2.0) == pytest.approx(
            wallis_integral(m) * (m + 1.0) / (m + 2.0), rel=1e-13)
    with pytest.raises(OutOfDomain):
        wallis_integral(-1.0)


def test_crossover_opening_linear_density():
    assert arc_semicircle_crossover(PowerDensity(1.0)) == pytest.approx(2.25, abs=1e-12)
    dens = PowerDensity(2.3)
    t = arc_semicircle_crossover(dens)
    assert arc_ratio(dens, t) == pytest.approx(semicircle_ratio(dens), rel=1e-12)


def test_quadrature_circle_through_origin():
    # r = 2 cos(theta) on [0, pi/2] with p = 1: perimeter 4, area 16/9.
    dens = PowerDensity(1.0)
    theta = sector_grid(math.pi / 2.0, nodes=2049, singular_end=True)
    graph = PolarGraph(theta, 2.0 * np.cos(theta))
    m = polar_measures(graph, dens)
    assert m.perimeter == pytest.approx(4.0, abs=1e-8)
    assert m.area == pytest.approx(16.0 / 9.0, abs=1e-8)


def test_quadrature_full_circle_touching_origin_twice():
    # r = 2 sin(theta) on [0, pi] with p = 1: perimeter 8, area 32/9.
    dens = PowerDensity(1.0)
    theta = sector_grid(math.pi, nodes=2049, singular_start=True, singular_end=True)
    graph = PolarGraph(theta, 2.0 * np.sin(theta))
    m = polar_measures(graph, dens)
    assert m.perimeter == pytest.approx(8.0, abs=1e-7)
    assert m.area == pytest.approx(32.0 / 9.0, abs=1e-7)


def test_quadrature_constant_radius_matches_arc():
    dens = PowerDensity(2.0)
    theta = sector_grid(1.3, nodes=513)
    graph = PolarGraph(theta, np.full_like(theta, 1.8))
    m = polar_measures(graph, dens)
    ref = arc_measures(1.8, dens, 1.3)
    assert m.perimeter == pytest.approx(ref.perimeter, rel=1e-12)
    assert m.area == pytest.approx(ref.area, rel=1e-12)


def test_ratio_scale_invariance():
    dens = PowerDensity(1.5)
    base = iso_ratio(3.0, 2.0, dens)
    for k in (0.1, 2.0, 40.0):
        scaled = iso_ratio(3.0 * k ** 2.5, 2.0 * k ** 3.5, dens)
        assert scaled == pytest.approx(base, rel=1e-12)
    with pytest.raises(NonPositiveInput):
        iso_ratio(0.0, 1.0, dens)
    with pytest.raises(NonPositiveInput):
        iso_ratio(1.0, -2.0, dens)


def test_derivative_samples_accuracy():
    theta = np.linspace(0.0, math.pi, 201)
    d1 = derivative_samples(theta, np.cos(theta))
    assert np.max(np.abs(d1 + np.sin(theta))) < 1e-6
    d2 = derivative_samples(theta, np.cos(theta), order=2)
    assert np.max(np.abs(d2 + np.cos(theta))) < 1e-4


def test_sector_grid_shape_and_grading():
    theta = sector_grid(2.0, nodes=257, singular_start=True)
    assert theta[0] == 0.0 and theta[-1] == 2.0
    assert theta.size % 2 == 1
    assert np.all(np.diff(theta) > 0.0)
    # grading packs nodes toward the singular end
    assert theta[1] < 2.0 / (theta.size - 1) / 100.0


def test_polar_graph_validation():
    good_theta = np.linspace(0.0, 1.0, 5)
    with pytest.raises(DegenerateGrid):
        PolarGraph(good_theta[:2], np.ones(2))
    with pytest.raises(DegenerateGrid):
        PolarGraph(good_theta[::-1], np.ones(5))
    with pytest.raises(DegenerateGrid):
        PolarGraph(good_theta + 0.5, np.ones(5))
    with pytest.raises(DegenerateGrid):
        PolarGraph(good_theta, np.array([1.0, 1.0, -0.1, 1.0, 1.0]))
    with pytest.raises(DegenerateGrid):
        PolarGraph(good_theta, np.array([1.0, 1.0, 0.0, 1.0, 1.0]))
    # zero radius at an endpoint is allowed
    PolarGraph(good_theta, np.array([0.0, 1.0, 1.0, 1.0, 1.0]))


def test_change_coordinates_flattens_perimeter_weight():
    p, q, theta0 = 1.0, 1.0, 2.0
    n = p + 1.0
    new_p, new_q, new_t = change_coordinates(p, q, theta0, n)
    assert new_p == pytest.approx(0.0, abs=1e-15)
    assert new_q == pytest.approx((q + 2.0) / n - 2.0, rel=1e-14)
    assert new_t == pytest.approx(n * theta0, rel=1e-14)
    with pytest.raises(ZeroExponent):
        change_coordinates(1.0, 1.0, 2.0, 0.0)


def test_domain_guards():
    with pytest.raises(OutOfDomain):
        PowerDensity(math.inf)
    with pytest.raises(OutOfDomain):
        semicircle_measures(1.0, PowerDensity(-0.5))
    with pytest.raises(NonPositiveInput):
        arc_measures(-1.0, PowerDensity(1.0), 2.0)
