import json
import subprocess
import sys
from pathlib import Path

import pytest

CLI = [sys.executable, "-m", "cheborbit.cli"]


def run_cli(args, cwd):
    return subprocess.run(
        CLI + args, cwd=cwd, capture_output=True, text=True, timeout=600
    )


def test_derive_matches_reference_and_writes_report(tmp_path):
    out = run_cli(["derive", "--n", "2", "--d", "2"], tmp_path)
    assert out.returncode == 0
    assert "4*p + p^2 - 4*q" in out.stdout
    assert "-2*x + x^2 - y^2" in out.stdout
    report = json.loads((tmp_path / "cheborbit-report.json").read_text())
    assert report["passed"] is True
    assert report["command"] == "derive"
    assert report["schema"].startswith("cheborbit-report/")


def test_derive_json_output(tmp_path):
    out = run_cli(
        ["derive", "--n", "3", "--d", "2", "--format", "json", "--output", "g.json"],
        tmp_path,
    )
    assert out.returncode == 0
    doc = json.loads((tmp_path / "g.json").read_text())
    assert doc["induced"][0] == "p^2 + 4*q - 4*r"
    assert len(doc["endomorphism"]) == 3


def test_verify_small_suite_green(tmp_path):
    out = run_cli(
        ["verify", "--suite", "branch", "--report", "r.json"], tmp_path
    )
    assert out.returncode == 0, out.stdout + out.stderr
    report = json.loads((tmp_path / "r.json").read_text())
    assert report["passed"] is True
    assert all(c["passed"] for c in report["checks"])


def test_verify_identity_filter_miss_is_failure(tmp_path):
    out = run_cli(
        ["verify", "--suite", "branch", "--identity", "no-such-check"], tmp_path
    )
    assert out.returncode == 1
    assert "FAILED" in out.stderr


def test_degree_command(tmp_path):
    out = run_cli(["degree", "--n", "2", "--d", "2", "--trials", "8"], tmp_path)
    assert out.returncode == 0
    report = json.loads((tmp_path / "cheborbit-report.json").read_text())
    names = [c["name"] for c in report["checks"]]
    assert any("generic degree count" in n for n in names)
    assert any("special point counts" in n for n in names)


def test_orbit_command_with_csv(tmp_path):
    out = run_cli(
        ["orbit", "--n", "2", "--d", "2", "--start", "1,-1", "--output", "orbit.csv"],
        tmp_path,
    )
    assert out.returncode == 0
    assert "bounded_horizon" in out.stdout
    lines = (tmp_path / "orbit.csv").read_text().splitlines()
    assert lines[0] == "step,re0,im0,re1,im1"
    assert lines[1] == "1,9,0,27,0"


def test_plot_artifacts_and_determinism(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    a.mkdir()
    b.mkdir()
    for cwd in (a, b):
        out = run_cli(
            ["plot", "--figure", "kset", "--entry", "plane", "--grid", "12",
             "--output", "cloud", "--seed", "0"],
            cwd,
        )
        assert out.returncode == 0
    for name in ("cloud.csv", "cloud.svg", "cheborbit-report.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes(), name


def test_jordan_plot(tmp_path):
    out = run_cli(["plot", "--figure", "jordan", "--samples", "32"], tmp_path)
    assert out.returncode == 0
    csv = (tmp_path / "cheborbit-jordan.csv").read_text().splitlines()
    assert csv[0] == "arc_id,angle,p,q"
    assert csv[1] == "1,0,9,27"
    svg = (tmp_path / "cheborbit-jordan.svg").read_text()
    assert svg.startswith("<svg ") and "polyline" in svg


def test_jacobian_plot(tmp_path):
    out = run_cli(["plot", "--figure", "jacobian", "--grid", "11"], tmp_path)
    assert out.returncode == 0
    csv = (tmp_path / "cheborbit-jacobian.csv").read_text().splitlines()
    assert csv[0] == "u,v,det,sign"


def test_molien_command(tmp_path):
    out = run_cli(["molien", "--group", "D3_on_R2", "--order", "9"], tmp_path)
    assert out.returncode == 0
    assert out.stdout.splitlines()[0] == "1, 0, 1, 1, 1, 1, 2, 1, 2, 2"


def test_conjugate_command(tmp_path):
    out = run_cli(
        ["conjugate", "--matrix", "1,1,0,1", "--k", "1", "--d", "2"], tmp_path
    )
    assert out.returncode == 0
    report = json.loads((tmp_path / "cheborbit-report.json").read_text())
    assert report["passed"] is True


def test_reports_are_deterministic(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    a.mkdir()
    b.mkdir()
    for cwd in (a, b):
        out = run_cli(
            ["degree", "--n", "2", "--d", "3", "--trials", "6", "--seed", "7"],
            cwd,
        )
        assert out.returncode == 0
    assert (a / "cheborbit-report.json").read_bytes() == (
        b / "cheborbit-report.json"
    ).read_bytes()
