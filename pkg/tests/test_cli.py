import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from modmass import cli
from modmass.io import read_eigenforms
from modmass.numerics import ENV_PRECISION

MAASS = Path(__file__).parent / "data" / "maass_synthetic.txt"


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    # cli_main exports the chosen precision for the library code it calls
    monkeypatch.delenv(ENV_PRECISION, raising=False)


def run(argv, capsys):
    code = cli.cli_main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_selftest_exits_zero(capsys):
    code, out, err = run(["selftest"], capsys)
    assert code == 0
    assert out.startswith("check,tolerance,value,passed,asserted")
    assert "[FAIL]" not in err and "[PASS] selftest" in err


def test_usage_errors_exit_two(capsys):
    code, _, err = run(["selftest", "--bogus"], capsys)
    assert code == 2 and "usage" in err
    assert run([], capsys)[0] == 2
    assert run(["nonsense"], capsys)[0] == 2
    assert run(["rankin-selberg", "--weights", "12,x"], capsys)[0] == 2
    assert run(["rankin-selberg", "--s", "1.2"], capsys)[0] == 2
    assert run(["shifted-sum", "--x", "50"], capsys)[0] == 2
    assert run(["maass-check"], capsys)[0] == 2
    assert run(["eigenform", "--weights", "24"], capsys)[0] == 2
    assert run(["selftest", "--config", "/nonexistent/cfg"], capsys)[0] == 2


def test_help_exits_zero(capsys):
    assert run(["--help"], capsys)[0] == 0
    assert run(["que-scan", "--help"], capsys)[0] == 0


def test_bad_maass_file_exits_two(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("maass v1 t=1 parity=even N=2\n1 1\n1 2\n")
    code, _, err = run(["maass-check", "--input", str(p)], capsys)
    assert code == 2 and "line 3" in err


def test_maass_check_runs(capsys):
    code, out, err = run(["maass-check", "--input", str(MAASS), "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["experiment"] == "maass-check"
    assert code == (0 if doc["passed"] else 1)
    assert "C_maass" in doc["fitted"]


def test_rankin_selberg_csv(capsys):
    code, out, _ = run(["rankin-selberg", "--weights", "12,16", "--tol", "1e-4"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    header = rows[0]
    assert "rel_error" in header
    i = header.index("rel_error")
    # pairs (12,12), (12,16), (16,16)
    body = rows[1:4]
    assert [(r[0], r[2]) for r in body] == [("12", "12"), ("12", "16"), ("16", "16")]
    assert all(float(r[i]) <= 1e-4 for r in body)


def test_failed_assertion_exits_one(tmp_path, capsys):
    # a tolerance no quadrature can meet
    code, _, err = run(["rankin-selberg", "--weights", "12", "--tol", "1e-30"], capsys)
    assert code == 1 and "[FAIL]" in err


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("weights = 12, 16\nformat = json\nprecision_bits = 96\n")
    args = cli.build_parser().parse_args(["rankin-selberg", "--config", str(cfg)])
    c = cli._config(args)
    assert c.weights == [12, 16] and c.format == "json" and c.precision_bits == 96
    args = cli.build_parser().parse_args(["rankin-selberg", "--config", str(cfg), "--weights", "12", "--format", "csv"])
    c = cli._config(args)
    assert c.weights == [12] and c.format == "csv"
    js = tmp_path / "run.json"
    js.write_text(json.dumps({"weights": [16], "tol": 1e-3}))
    c = cli._config(cli.build_parser().parse_args(["que-scan", "--config", str(js)]))
    assert c.weights == [16] and c.tol == 1e-3


def test_environment_precision(monkeypatch):
    monkeypatch.setenv(ENV_PRECISION, "128")
    c = cli._config(cli.build_parser().parse_args(["selftest"]))
    assert c.precision_bits == 128
    c = cli._config(cli.build_parser().parse_args(["selftest", "--precision-bits", "160"]))
    assert c.precision_bits == 160
    monkeypatch.setenv(ENV_PRECISION, "128")
    c = cli._config(cli.build_parser().parse_args(["rankin-selberg"]))
    assert c.weights == [12, 16]


def test_out_file_and_cache(tmp_path, capsys):
    out = tmp_path / "eig.json"
    cache = tmp_path / "cache.txt"
    code, stdout, _ = run(["eigenform", "--weights", "12,16", "--N", "300", "--format", "json", "--out", str(out), "--cache", str(cache)], capsys)
    assert code == 0 and stdout == ""
    doc = json.loads(out.read_text())
    assert [r["k"] for r in doc["rows"]] == [12, 16]
    forms = read_eigenforms(cache)
    assert [f.k for f in forms] == [12, 16] and forms[0].N == 300


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "modmass", "selftest", "--format", "json"], capture_output=True, text=True, timeout=300)
    assert r.returncode == 0
    assert json.loads(r.stdout)["passed"] is True
