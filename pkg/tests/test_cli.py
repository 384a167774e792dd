"""End-to-end command line checks: exit codes, files, and payload shapes."""

import argparse
import json
import math

import numpy as np
import pytest

from iso_sector.cli import main, parse_grid
from iso_sector.disk import DISK_TAGS


def test_grid_parsing():
    lin = parse_grid("0:1:lin:5")
    assert np.allclose(lin, np.linspace(0.0, 1.0, 5))
    log = parse_grid("0.001:49:log:40")
    assert log.size == 40 and log[0] == pytest.approx(0.001)
    for bad in ("1:2:3", "1:2:geo:5", "2:1:lin:5", "0:1:log:5", "a:b:lin:5"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_grid(bad)


def test_no_arguments_is_usage_error(capsys):
    assert main([]) == 2
    assert main(["not-a-command"]) == 2
    capsys.readouterr()


def test_malformed_grid_is_usage_error(capsys):
    assert main(["period", "--p", "2", "--grid", "nonsense"]) == 2
    capsys.readouterr()


def test_domain_error_reports_cleanly(capsys):
    rc = main(["classify", "--p", "-3", "--theta0", "1.0"])
    captured = capsys.readouterr()
    assert rc == 1
    assert captured.err.startswith("error:")


def test_classify_writes_all_outputs(tmp_path, capsys):
    csv = tmp_path / "cands.csv"
    payload = tmp_path / "cands.json"
    figure = tmp_path / "cands.svg"
    rc = main(["classify", "--p", "1", "--theta0", "2.3",
               "--csv", str(csv), "--json", str(payload),
               "--plot", str(figure)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "winner undulary" in out
    lines = csv.read_text().splitlines()
    assert lines[0] == "tag,ratio,param"
    assert len(lines) == 4
    body = json.loads(payload.read_text())
    assert body["kind"] == "sector-classification"
    assert body["winner"] == "undulary"
    assert len(body["candidates"]) == 3
    svg = figure.read_bytes()
    assert svg.startswith(b"<?xml") and b"<svg" in svg


def test_phase_table_covers_grid(tmp_path, capsys):
    csv = tmp_path / "phase.csv"
    rc = main(["phase", "--p-grid", "0.5:2:lin:2",
               "--theta-grid", "1.5:3:lin:4", "--csv", str(csv)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "8 cells" in out
    lines = csv.read_text().splitlines()
    assert lines[0].startswith("p,theta0,winner")
    assert len(lines) == 9


def test_period_sweep(tmp_path, capsys):
    csv = tmp_path / "period.csv"
    rc = main(["period", "--p", "2", "--grid", "0.001:49:log:40",
               "--csv", str(csv)])
    capsys.readouterr()
    assert rc == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == "r1,half_period"
    assert len(lines) == 41
    periods = [float(line.split(",")[1]) for line in lines[1:]]
    dens_low = math.pi / math.sqrt(3.0)
    dens_high = math.pi * 4.0 / 6.0
    assert all(dens_low - 1e-3 < t < dens_high + 1e-3 for t in periods)


def test_undulary_without_solution_exits_nonzero(capsys):
    rc = main(["undulary", "--p", "1", "--theta0", "1.0"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "no undulary half wave" in out
    assert "attainable periods" in out


def test_undulary_samples_wave(tmp_path, capsys):
    csv = tmp_path / "wave.csv"
    rc = main(["undulary", "--p", "1", "--r1", "2", "--csv", str(csv)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "r1=2" in out
    lines = csv.read_text().splitlines()
    assert lines[0] == "theta,radius"
    assert len(lines) == 1026
    first = lines[1].split(",")
    last = lines[-1].split(",")
    assert float(first[1]) == pytest.approx(1.0, abs=1e-12)
    assert float(last[1]) == pytest.approx(2.0, abs=1e-9)


def test_inequality_suite_passes(capsys):
    rc = main(["inequality", "--p", "1", "--theta0", "2.0",
               "--trials", "200"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "0 violations" in out


def test_disk_single_area(tmp_path, capsys):
    payload = tmp_path / "disk.json"
    rc = main(["disk", "--a", "2", "--theta0", str(1.5 * math.pi),
               "--area", "2.0", "--json", str(payload)])
    capsys.readouterr()
    assert rc == 0
    body = json.loads(payload.read_text())
    assert body["kind"] == "disk-ranking"
    assert body["winner"] in DISK_TAGS
    perims = [c["perimeter"] for c in body["candidates"]]
    assert perims == sorted(perims)


def test_disk_area_sweep_reports_transitions(tmp_path, capsys):
    payload = tmp_path / "sweep.json"
    rc = main(["disk", "--a", "2", "--theta0", str(1.5 * math.pi),
               "--area-grid", "0.5:8:log:30", "--json", str(payload)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "winner changes" in out
    body = json.loads(payload.read_text())
    assert body["kind"] == "disk-sweep"
    assert len(body["rows"]) == 30
    crossings = [t["area"] for t in body["transitions"]]
    assert crossings == sorted(crossings)
    pairs = {(t["before"], t["after"]) for t in body["transitions"]}
    assert ("bite-complement", "arc-enclosing") in pairs
    assert ("arc-enclosing", "edge-semicircle") in pairs


def test_disk_curves(tmp_path, capsys):
    csv = tmp_path / "curves.csv"
    rc = main(["disk-curves", "--a-grid", "2:4:lin:2", "--csv", str(csv)])
    capsys.readouterr()
    assert rc == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == "a,theta_small,theta_bite"
    assert len(lines) == 3
    a_first = float(lines[1].split(",")[0])
    theta_small = float(lines[1].split(",")[1])
    assert a_first == 2.0
    assert theta_small == pytest.approx(math.pi / 2.0, rel=1e-12)


def test_radial_check_convex_profile(capsys):
    rc = main(["rn-check", "--n", "2", "--profile", "r2",
               "--trials", "3", "--count", "256"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "convex=True" in out
    assert "failed 0/3" in out


def test_radial_check_concave_profile_fails(capsys):
    rc = main(["rn-check", "--n", "2", "--profile", "sqrt",
               "--trials", "3", "--count", "256"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "convex=False" in out


def test_radial_demo(tmp_path, capsys):
    csv = tmp_path / "demo.csv"
    rc = main(["rn-demo", "--n", "2", "--p", "-1", "--csv", str(csv)])
    out = capsys.readouterr().out
    assert rc == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == "radius,center,volume,surface"
    surfaces = [float(line.split(",")[3]) for line in lines[1:]]
    assert all(b < a for a, b in zip(surfaces, surfaces[1:]))


def test_oracle_small_opening(tmp_path, capsys):
    payload = tmp_path / "oracle.json"
    rc = main(["oracle", "--p", "1", "--theta0", "1.0", "--nodes", "65",
               "--json", str(payload)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "arc" in out
    body = json.loads(payload.read_text())
    assert body["kind"] == "oracle-verdict"
    assert body["tag"] == "arc"
    assert len(body["runs"]) == 3


def test_validate_single_criterion_deterministic(tmp_path, capsys):
    j1 = tmp_path / "v1.json"
    j2 = tmp_path / "v2.json"
    rc1 = main(["validate", "--criteria", "8", "--json", str(j1)])
    rc2 = main(["validate", "--criteria", "8", "--json", str(j2)])
    out = capsys.readouterr().out
    assert rc1 == 0 and rc2 == 0
    assert j1.read_bytes() == j2.read_bytes()
    assert "1/1 criteria passed" in out


def test_validate_reports_failure_exit(capsys):
    rc = main(["validate", "--criteria", "9"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "0/1 criteria passed" in out
