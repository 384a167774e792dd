"""Radial densities in higher dimensions: spheres, collapse, convexity."""

import math

import numpy as np
import pytest

from iso_sector import (
    OutOfDomain,
    RadialProfile,
    averaging_inequality_check,
    betta_convexity_check,
    closed_ball_measures,
    inverted_exponent,
    power_profile,
    profile_from_samples,
    random_star_region,
    sphere_measures,
    unit_sphere_area,
    vanishing_perimeter_demo,
)
from iso_sector.errors import GridTooCoarse, NonFiniteProfile, OriginInside


def test_unit_sphere_areas():
    assert unit_sphere_area(2) == pytest.approx(2.0 * math.pi, rel=1e-14)
    assert unit_sphere_area(3) == pytest.approx(4.0 * math.pi, rel=1e-14)
    assert unit_sphere_area(4) == pytest.approx(2.0 * math.pi ** 2, rel=1e-14)
    assert unit_sphere_area(1) == pytest.approx(2.0, rel=1e-14)
    with pytest.raises(OutOfDomain):
        unit_sphere_area(0)


def test_centered_ball_closed_forms():
    # p = 0 recovers Euclidean volume and surface
    vol, surf = closed_ball_measures(3, 0.0, 2.0)
    assert vol == pytest.approx(4.0 / 3.0 * math.pi * 8.0, rel=1e-13)
    assert surf == pytest.approx(4.0 * math.pi * 4.0, rel=1e-13)
    # planar p = 2: volume 2 pi R**4 / 4, surface 2 pi R**3
    vol, surf = closed_ball_measures(2, 2.0, 1.5)
    assert vol == pytest.approx(math.pi * 1.5 ** 4 / 2.0, rel=1e-13)
    assert surf == pytest.approx(2.0 * math.pi * 1.5 ** 3, rel=1e-13)


def test_off_center_ball_matches_euclidean_at_zero_exponent():
    vol, surf = sphere_measures(3, 0.0, 3.0, 1.2)
    assert vol == pytest.approx(4.0 / 3.0 * math.pi * 1.2 ** 3, rel=1e-8)
    assert surf == pytest.approx(4.0 * math.pi * 1.2 ** 2, rel=1e-8)
    with pytest.raises(OriginInside):
        sphere_measures(3, -1.0, 0.5, 1.0)


def test_centered_ball_agrees_with_quadrature():
    vol_q, surf_q = sphere_measures(2, 1.0, 0.0, 2.0)
    vol_c, surf_c = closed_ball_measures(2, 1.0, 2.0)
    assert vol_q == pytest.approx(vol_c, rel=1e-8)
    assert surf_q == pytest.approx(surf_c, rel=1e-8)


@pytest.mark.parametrize("n,p", [(2, -1.0), (3, -2.0)])
def test_vanishing_surface_at_fixed_volume(n, p):
    rows = vanishing_perimeter_demo(n, p, 1.0)
    surfaces = [row.surface for row in rows]
    assert all(b < a for a, b in zip(surfaces, surfaces[1:]))
    assert surfaces[-1] < surfaces[0] / 10.0
    for row in rows:
        assert row.volume == pytest.approx(1.0, rel=1e-6)
        assert row.center > row.radius
    with pytest.raises(OutOfDomain):
        vanishing_perimeter_demo(2, 0.5, 1.0)


def test_inverted_exponent_is_superlinear():
    assert inverted_exponent(2, -5.0) == pytest.approx(4.0 / 3.0, rel=1e-14)
    for n, p in ((2, -2.5), (3, -10.0), (4, -4.5)):
        assert inverted_exponent(n, p) > 1.0
    with pytest.raises(OutOfDomain):
        inverted_exponent(2, -2.0)


def test_convexity_certificate_brackets_profiles():
    assert betta_convexity_check(power_profile(2.0), 2).convex
    assert betta_convexity_check(power_profile(1.0), 2).convex
    # a(r) = 1 + r reduces to the linear profile, still convex
    affine = RadialProfile(fn=lambda r: 1.0 + r, r_max=10.0, label="1+r")
    assert betta_convexity_check(affine, 2).convex
    # concave growth breaks the certificate
    rep = betta_convexity_check(power_profile(0.5), 2)
    assert not rep.convex
    assert rep.worst_second_difference < 0.0
    with pytest.raises(OutOfDomain):
        betta_convexity_check(power_profile(1.0), 1)
    with pytest.raises(GridTooCoarse):
        betta_convexity_check(power_profile(1.0), 2, grid_size=8)


def test_sampled_profile_matches_callable():
    r = np.geomspace(0.01, 10.0, 400)
    sampled = profile_from_samples(r, r ** 2, label="squares")
    probe = np.array([0.0, 0.05, 1.7, 4.2, 9.9])
    assert np.allclose(sampled(probe), probe ** 2, rtol=1e-6, atol=1e-12)
    rep = betta_convexity_check(sampled, 2)
    assert rep.convex
    with pytest.raises(OutOfDomain):
        profile_from_samples(np.linspace(0.0, 1.0, 10), np.ones(10))
    with pytest.raises(OutOfDomain):
        profile_from_samples(r, -r)


def test_star_regions_are_seeded():
    ra = random_star_region(2, 64, seed=5)
    rb = random_star_region(2, 64, seed=5)
    assert np.array_equal(ra.t, rb.t)
    rc = random_star_region(2, 64, seed=6)
    assert not np.array_equal(ra.t, rc.t)


def test_averaging_chain_holds_for_convex_certificate():
    profile = power_profile(1.0)
    for seed in (0, 1, 2):
        region = random_star_region(2, 128, seed=seed)
        rep = averaging_inequality_check(region, profile)
        assert rep.ok
        assert rep.q_full >= rep.q_tangential >= rep.q_ball - 1e-9


def test_averaging_chain_fails_without_convexity():
    # the square root profile is concave in the certificate variable and
    # the Jensen step of the chain genuinely reverses on generic regions
    profile = power_profile(0.5)
    failures = 0
    for seed in range(5):
        region = random_star_region(2, 128, seed=seed)
        rep = averaging_inequality_check(region, profile)
        failures += 0 if rep.ok else 1
    assert failures == 5
