"""Isoperimetry in a sector with a heavier unit disk at the vertex."""

import math

import numpy as np
import pytest

from iso_sector import (
    DiskDensity,
    OutOfDomain,
    ParamOutOfRange,
    bisect_large_area_threshold,
    bite_annulus_sign_changes,
    classify_disk,
    crescent_measures,
    large_area_threshold,
    small_area_crossover,
    snell_angle,
    solve_complement_for_area,
    solve_crescent_for_area,
    tangent_semicircle_perimeter,
    transition_curves_row,
    winner_transitions,
)
from iso_sector.disk import (
    ANNULUS,
    ARC_ENCLOSING,
    ARC_INSIDE,
    BITE_COMPLEMENT,
    EDGE_SEMICIRCLE,
    complement_measures,
    one_endpoint_semicircle_ratio,
)

DD2 = DiskDensity(2.0)
T32 = 1.5 * math.pi


def test_density_and_refraction_basics():
    assert snell_angle(DD2) == pytest.approx(math.pi / 3.0, rel=1e-14)
    with pytest.raises(OutOfDomain):
        DiskDensity(1.0)
    with pytest.raises(OutOfDomain):
        DiskDensity(0.5)


def test_small_area_crossover():
    # tiny arcs beat tiny edge half-disks iff a * theta0 < pi
    assert small_area_crossover(DD2) == pytest.approx(math.pi / 2.0, rel=1e-14)
    tie = classify_disk(DD2, math.pi / 2.0, 1e-6)
    tags = [c.tag for c in tie.candidates] if hasattr(tie, "candidates") else [c.tag for c in tie]
    assert ARC_INSIDE in tags and EDGE_SEMICIRCLE in tags


def test_classification_is_ranked():
    cands = classify_disk(DD2, T32, 2.0)
    perims = [c.perimeter for c in cands]
    assert perims == sorted(perims)
    assert all(p > 0.0 for p in perims)


def test_large_area_threshold_closed_form():
    # enclosing arcs overtake edge half-disks at area a**2 theta0 / 2
    assert large_area_threshold(DD2, T32) == pytest.approx(2.25 * math.pi, rel=1e-13)
    found = bisect_large_area_threshold(DD2, T32)
    assert found == pytest.approx(2.25 * math.pi, abs=1e-9)


def test_winner_handovers_wide_opening():
    rows = winner_transitions(DD2, T32)
    assert len(rows) >= 3
    tags = [(before, after) for _, before, after in rows]
    areas = [area for area, _, _ in rows]
    assert areas == sorted(areas)
    # bite loses to the enclosing arc exactly at the full sector area,
    # and the enclosing arc loses to the big edge half-disk at the
    # closed-form threshold
    i = tags.index((BITE_COMPLEMENT, ARC_ENCLOSING))
    assert areas[i] == pytest.approx(T32, abs=1e-6)
    j = tags.index((ARC_ENCLOSING, EDGE_SEMICIRCLE))
    assert areas[j] == pytest.approx(2.25 * math.pi, abs=1e-6)
    assert j == i + 1
    k = tags.index((EDGE_SEMICIRCLE, BITE_COMPLEMENT))
    assert areas[k] == pytest.approx(4.461, abs=2e-3)
    assert k < i


def test_tangent_half_disk_beats_listed_candidates_in_sliver():
    # concrete witness: at this opening and area the tangent half-disk
    # undercuts every ranked candidate, so "never competitive" is false
    best = classify_disk(DD2, T32, 6.0)[0]
    tangent = tangent_semicircle_perimeter(DD2, T32, 6.0)
    assert tangent == pytest.approx(5.8087, abs=2e-4)
    assert best.perimeter == pytest.approx(5.8602, abs=2e-4)
    assert tangent < best.perimeter


def test_tangent_half_disk_guards():
    with pytest.raises(ParamOutOfRange):
        tangent_semicircle_perimeter(DD2, math.pi / 2.0, 1.0)
    with pytest.raises(ParamOutOfRange):
        tangent_semicircle_perimeter(DD2, T32, 0.1)


def test_one_endpoint_half_disk_is_never_optimal():
    assert one_endpoint_semicircle_ratio(DD2, 0.0) == pytest.approx(
        2.0 * math.pi, rel=1e-14)
    for beta in (0.3, 1.0, math.pi):
        assert one_endpoint_semicircle_ratio(DD2, beta) > 2.0 * math.pi
    with pytest.raises(ParamOutOfRange):
        one_endpoint_semicircle_ratio(DD2, -0.1)


def test_crescent_solver_roundtrip():
    target = 0.4
    perim, piece = solve_crescent_for_area(DD2, 1.2, target)
    area, perim2, piece2 = crescent_measures(DD2, 1.2, piece.phi)
    assert area == pytest.approx(target, abs=1e-10)
    assert perim2 == pytest.approx(perim, rel=1e-12)
    assert piece2.phi == piece.phi
    assert 0.0 < piece.phi < snell_angle(DD2)


def test_complement_solver_roundtrip():
    # the complement family lives near the full sector area a theta0 / 2
    target = 4.3
    perim, piece = solve_complement_for_area(DD2, T32, target)
    area, perim2, _ = complement_measures(DD2, T32, piece.phi)
    assert area == pytest.approx(target, abs=1e-10)
    assert perim2 == pytest.approx(perim, rel=1e-12)
    with pytest.raises(ParamOutOfRange):
        solve_complement_for_area(DD2, T32, 2.0)


def test_bite_annulus_comparison_has_single_handover():
    assert bite_annulus_sign_changes(DD2, T32) <= 1
    assert bite_annulus_sign_changes(DiskDensity(4.0), T32) <= 1


def test_transition_curves_row():
    a, theta_small, theta_bite = transition_curves_row(DD2)
    assert a == 2.0
    assert theta_small == pytest.approx(math.pi / 2.0, rel=1e-14)
    assert math.isfinite(theta_bite) and 0.0 < theta_bite < 2.0 * math.pi
    # weakly dependent on the area deficit used in the probe
    _, _, theta_bite2 = transition_curves_row(DD2, eps=4e-3)
    assert abs(theta_bite2 - theta_bite) < 5e-2
