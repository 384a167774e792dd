"""Acceptance gates for the whole toolkit.

Each test asserts one numbered criterion from the bundled validation
suite (iso_sector.validate).  The suite is executed once per session and
cached; conftest prints the full scoreboard, one line per criterion,
after the run.

Criterion 9 carries a deliberately red sub-check: the ranked disk
candidate comparison admits a thin sliver of openings where a tangent
half disk beats every listed candidate, so the "tangent is never
competitive" clause fails with a concrete measured counterexample.  The
assertion is kept as stated rather than weakened; see the README section
"Known failing check" for the geometry.
"""

from iso_sector import validate

_REPORT = None


def _report():
    global _REPORT
    if _REPORT is None:
        _REPORT = validate.run_all()
    return _REPORT


def _criterion(number):
    for result in _report().results:
        if result.number == number:
            return result
    raise AssertionError(f"criterion {number} missing from the report")


def test_criterion_01_arc_anchors():
    r = _criterion(1)
    assert r.passed, r.details


def test_criterion_02_half_disk_anchors():
    r = _criterion(2)
    assert r.passed, r.details


def test_criterion_03_crossover_opening():
    r = _criterion(3)
    assert r.passed, r.details


def test_criterion_04_period_range():
    r = _criterion(4)
    assert r.passed, r.details


def test_criterion_05_transition_brackets():
    r = _criterion(5)
    assert r.passed, r.details


def test_criterion_06_phase_table():
    r = _criterion(6)
    assert r.passed, r.details


def test_criterion_07_inequality_sweep():
    r = _criterion(7)
    assert r.passed, r.details


def test_criterion_08_disk_handovers():
    r = _criterion(8)
    assert r.passed, r.details


def test_criterion_09_disk_candidate_ranking():
    r = _criterion(9)
    assert r.passed, r.details


def test_criterion_10_vanishing_perimeter():
    r = _criterion(10)
    assert r.passed, r.details


def test_criterion_11_oracle_agreement():
    r = _criterion(11)
    assert r.passed, r.details


def test_criterion_12_averaging_chain():
    r = _criterion(12)
    assert r.passed, r.details
