"""End-to-end smoke tests: python bindings, CLI reports, schema conformance."""

import json
import math
import os
import pathlib
import subprocess

import pytest

import diskbond as db

jsonschema = pytest.importorskip("jsonschema")

CLI = os.environ.get("DISKBOND_CLI", "")
SCHEMA_DIR = os.environ.get("DISKBOND_SCHEMAS", "")

needs_cli = pytest.mark.skipif(not CLI, reason="DISKBOND_CLI is not set")
needs_schemas = pytest.mark.skipif(
    not SCHEMA_DIR, reason="DISKBOND_SCHEMAS is not set"
)


def load_schema(name):
    schema = json.loads((pathlib.Path(SCHEMA_DIR) / name).read_text())
    jsonschema.Draft7Validator.check_schema(schema)
    return schema


def run_cli(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_frame_invariants():
    frame = db.derive_frame(2.0, 1.0)
    assert frame.r == 2.0
    assert frame.eps == 1.0
    assert frame.beta == 3.0
    assert frame.rho == 0.5
    assert math.isclose(frame.rho + frame.one_minus_rho, 1.0, rel_tol=1e-15)
    assert math.isclose(frame.rho_pow(3), 0.125, rel_tol=1e-14)


def test_neutral_configuration_is_exact():
    frame = db.derive_frame(2.0, 1.0)
    sol = db.solve_coefficients(frame, 2.0)
    assert sol.residual_norm == 0.0
    assert math.isclose(sol.coeff_a(1), 1.5, rel_tol=1e-14)
    assert sol.coeff_c(1) == 0.0
    pot = db.make_potential(frame, sol)
    assert db.sup_grad(pot) == 1.0
    grad = db.eval_grad(pot, complex(0.0, 0.0))
    assert abs(grad.ux - 1.0) <= 1e-14
    assert abs(grad.uy) <= 1e-14
    z = complex(0.5, 0.25)
    assert abs(db.eval_u(pot, z) - z.real) <= 1e-14


def test_lc_verification_roundtrip():
    frame = db.derive_frame(2.0, 1.0)
    sol = db.solve_coefficients(frame, 1.0)
    pot = db.make_potential(frame, sol)
    rep = db.verify_solution(pot, 1.0)
    assert max(rep.robin_residual_d1, rep.robin_residual_d2) <= 1e-8
    assert max(abs(rep.flux_d1), abs(rep.flux_d2)) <= 1e-10
    assert rep.oracle_gap <= 1e-10
    assert math.isclose(rep.robin_const_d1, sol.lambda_i, rel_tol=1e-12)


def test_hc_duality_matches_gradients():
    frame = db.derive_frame(1.0, 0.01)
    sol = db.solve_coefficients(frame, 0.5)
    pot = db.make_potential(frame, sol)
    conj = db.conjugate_potential(pot)
    assert db.hc_boundary_residual(conj, 0.5) <= 1e-8
    z = complex(0.0, 2.5)
    gu = db.eval_grad(pot, z)
    gv = db.eval_grad(conj, z)
    assert math.isclose(gu.grad_norm, gv.grad_norm, rel_tol=1e-12)


def test_certified_bounds_hold():
    frame = db.derive_frame(2.0, 1.0)
    gamma = 1.0
    sol = db.solve_coefficients(frame, gamma)
    bounds = db.compute_bounds(frame, gamma)
    assert db.check_sandwich(sol, bounds).passed
    assert db.check_envelopes(sol, bounds).passed
    assert db.check_difference_bounds(sol, bounds).passed
    pot = db.make_potential(frame, sol)
    assert db.sup_grad(pot) <= db.gradient_sup_bound(frame, gamma)


def test_closed_gap_is_rejected():
    with pytest.raises(ValueError):
        db.derive_frame(1.0, 1e-14)


@needs_cli
@needs_schemas
def test_cli_solve_report_validates():
    proc = run_cli("solve", "--r", "2", "--eps", "1", "--gamma", "1")
    assert proc.returncode == 0, proc.stderr
    report = json.loads(proc.stdout)
    jsonschema.validate(report, load_schema("solve_report.schema.json"))
    assert report["beta"] == 3.0
    assert report["rho"] == 0.5
    assert report["params"]["mode"] == "lc"
    assert report["residuals"]["robin_residual_d1"] <= 1e-8


@needs_cli
@needs_schemas
def test_cli_solve_hc_report_validates():
    proc = run_cli(
        "solve", "--r", "2", "--eps", "1", "--mode", "hc", "--alpha", "2"
    )
    assert proc.returncode == 0, proc.stderr
    report = json.loads(proc.stdout)
    jsonschema.validate(report, load_schema("solve_report.schema.json"))
    assert report["params"]["mode"] == "hc"
    assert report["residuals"]["hc_residual"] <= 1e-8
    assert "robin_residual_d1" not in report["residuals"]


@needs_cli
@needs_schemas
def test_cli_check_report_validates():
    proc = run_cli("check", "--r", "2", "--eps", "1", "--gamma", "2")
    assert proc.returncode == 0, proc.stderr
    report = json.loads(proc.stdout)
    jsonschema.validate(report, load_schema("check_report.schema.json"))
    assert report["passed"] is True
    assert all(cfg["passed"] for cfg in report["configs"])


@needs_cli
@needs_schemas
def test_cli_corrupted_solution_fails_check():
    proc = run_cli(
        "check", "--r", "2", "--eps", "1", "--gamma", "1", "--corrupt", "c1"
    )
    assert proc.returncode == 1
    report = json.loads(proc.stdout)
    jsonschema.validate(report, load_schema("check_report.schema.json"))
    assert report["passed"] is False


@needs_cli
def test_cli_solve_is_deterministic():
    args = ("solve", "--r", "1.5", "--eps", "0.125", "--gamma", "0.7")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout


@needs_cli
@needs_schemas
def test_cli_sweep_summary_validates(tmp_path):
    csv_path = tmp_path / "sweep.csv"
    summary_path = tmp_path / "summary.json"
    proc = run_cli(
        "sweep", "--r", "1", "--gamma", "1", "--eps", "1e-2,1e-3,1e-4",
        "--baseline", "--output", str(csv_path),
        "--summary", str(summary_path),
    )
    assert proc.returncode == 0, proc.stderr
    summary = json.loads(summary_path.read_text())
    jsonschema.validate(summary, load_schema("sweep_summary.schema.json"))
    assert -0.55 <= summary["baseline_slope"] <= -0.45
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "eps,gamma,sup_grad,grad_bound"
    assert len(lines) == 7
