"""Command line surface: suites, reports, determinism plumbing, file formats."""

import json
import subprocess
import sys

import pytest

from focklab import cli
from focklab.fock_core import FockVector, TruncationSpec
from focklab.hardy_chi import HardyChiFunction
from focklab.hardy_w import HardyWFunction
from focklab.partitions import BasisKey

SPEC = TruncationSpec(4, 2)


def test_config_file_parsing(tmp_path):
    path = tmp_path / "cfg"
    path.write_text(
        "max_degree = 5\n"
        "dim = 3  # spatial coordinates\n"
        "seed = 7\n"
        "levels = 1,2\n"
        "tol.gw = 1e-7\n"
    )
    cfg = cli.load_config(str(path))
    assert cfg.max_degree == 5 and cfg.dim == 3 and cfg.seed == 7
    assert cfg.levels == (1, 2)
    assert cfg.tol("gw", 0.0) == 1e-7
    assert cfg.tol("other", 0.25) == 0.25


def test_config_rejects_unknown_key(tmp_path):
    path = tmp_path / "cfg"
    path.write_text("mystery = 3\n")
    with pytest.raises(ValueError):
        cli.load_config(str(path))


def test_config_hash_ignores_out_and_workers():
    from dataclasses import replace

    base = cli.RunConfig()
    assert base.digest() == replace(base, out="elsewhere", workers=7).digest()
    assert base.digest() != replace(base, seed=1).digest()


def test_case_status():
    good = cli.Case("x", "s", 1e-12, 1e-10)
    bad = cli.Case("x", "s", 1e-8, 1e-10)
    study = cli.Case("x", "s", 99.0, 0.0, contracted=False)
    assert good.status == "pass" and bad.status == "fail" and study.status == "report"


def test_weights_suite_and_report(tmp_path):
    cfg = cli.RunConfig(out=str(tmp_path))
    report = cli.run_suite("weights", cfg)
    assert report["passed"]
    assert report["config_hash"] == cfg.digest()
    path = cli.write_report(report, tmp_path)
    loaded = json.loads(path.read_text())
    assert loaded["suite"] == "weights"
    assert all(case["status"] == "pass" for case in loaded["cases"])


def test_function_payload_round_trip():
    f = HardyWFunction(
        FockVector(SPEC, {BasisKey.make((1,), (2,)): 1.5 - 0.5j}), "w"
    )
    payload = cli.function_to_payload(f)
    back = cli.function_from_payload(payload)
    assert back.pairing == "w"
    assert back.fock.coeffs == f.fock.coeffs
    chi = HardyChiFunction(SPEC, {BasisKey.vacuum(): 2.0})
    back_chi = cli.chi_from_payload(cli.chi_to_payload(chi))
    assert back_chi.coeffs == chi.coeffs


def test_dump_weights_cli(tmp_path):
    out = tmp_path / "weights.csv"
    rc = cli.main(["dump-weights", "--max-weight", "3", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("diagram,constant")
    assert any(line.startswith('"(2,1)",1/4,0.25') for line in lines)


def test_eval_cli(tmp_path):
    f = HardyWFunction(FockVector(SPEC, {BasisKey.make((1,), (1,)): 1.0}))
    fn = tmp_path / "fn.json"
    fn.write_text(json.dumps(cli.function_to_payload(f)))
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps({"points": [[[2.0, 0.0], [0.0, 0.0]]]}))
    out = tmp_path / "values.json"
    rc = cli.main(["eval", "--function", str(fn), "--points", str(pts), "--out", str(out)])
    assert rc == 0
    values = json.loads(out.read_text())["values"]
    assert values == [[2.0, 0.0]]


def test_gw_cli(tmp_path):
    f = HardyWFunction(FockVector(SPEC, {BasisKey.make((2,), (1,)): 1.0}))
    fn = tmp_path / "fn.json"
    fn.write_text(json.dumps(cli.function_to_payload(f)))
    out = tmp_path / "gw.json"
    rc = cli.main([
        "gw", "--function", str(fn), "--direction", "1.0,0.0",
        "--r-schedule", "0.5", "--out", str(out),
    ])
    assert rc == 0
    rows = json.loads(out.read_text())["rows"]
    assert rows[0]["mult_quadrature_vs_oracle"] < 1e-10


def test_run_single_suite_cli(tmp_path):
    rc = cli.main(["run", "weights", "--out", str(tmp_path)])
    assert rc == 0
    assert (tmp_path / "weights.json").exists()
    assert (tmp_path / "summary.csv").exists()


def test_run_reports_are_deterministic(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    for out in (a, b):
        rc = cli.main(["run", "fock", "--seed", "11", "--out", str(out)])
        assert rc == 0
    assert (a / "fock.json").read_bytes() == (b / "fock.json").read_bytes()


def test_haar_test_cli(tmp_path):
    out = tmp_path / "haar.json"
    rc = cli.main([
        "haar-test", "--m", "2", "--samples", "20000", "--seed", "5", "--out", str(out),
    ])
    assert rc == 0
    report = json.loads(out.read_text())
    assert {m["name"] for m in report["moments"]} >= {"abs_u11_sq", "abs_u11_quad"}


def test_ftransform_cli(tmp_path):
    chi = HardyChiFunction(SPEC, {BasisKey.vacuum(): 1.0})
    fn = tmp_path / "chi.json"
    fn.write_text(json.dumps(cli.chi_to_payload(chi)))
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps({"points": [[[0.5, 0.0], [0.0, 0.0]]]}))
    out = tmp_path / "ft.json"
    study = tmp_path / "norms.csv"
    rc = cli.main([
        "ftransform", "--function", str(fn), "--points", str(pts),
        "--levels", "1,2", "--samples", "5000", "--norm-study", str(study),
        "--out", str(out),
    ])
    assert rc == 0
    payload = json.loads(out.read_text())
    assert payload["records"][0]["point_value_exact"] == [pytest.approx(1.0), 0.0]
    assert study.read_text().startswith("level,")


def test_module_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "focklab.cli", "dump-weights", "--max-weight", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "diagram" in proc.stdout
