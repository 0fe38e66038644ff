import csv
import io
import json
import math
import subprocess
import sys

import pytest
from click.testing import CliRunner

from conftest import negated
from gammaratio import cli, kernels, specfun

SMALL = ["--x-count", "20", "--y-count", "10"]


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args):
    return runner.invoke(cli.main, [str(a) for a in args])


def test_eval_g(runner):
    res = run(runner, "eval", "g", 2, 1)
    assert res.exit_code == 0
    value = float(res.output.split("=")[1])
    assert math.isclose(value, math.log(3) / 3 - math.log(2) / 2, rel_tol=1e-13)


def test_eval_h_on_equality_line(runner):
    res = run(runner, "eval", "h", 1, 3.5, "--format", "json")
    assert res.exit_code == 0
    assert abs(json.loads(res.output)["value"]) <= 1e-10


@pytest.mark.parametrize("z", ["0", "-1"])
def test_eval_domain_error(runner, z):
    res = runner.invoke(cli.main, ["eval", "digamma", z])
    assert res.exit_code == 2
    assert "error" in res.output.lower()


def test_eval_wrong_arity(runner):
    assert run(runner, "eval", "g", 2).exit_code == 2
    assert run(runner, "eval", "log_gamma", 1, 2).exit_code == 2


def test_eval_unknown_function(runner):
    assert run(runner, "eval", "zeta", 2).exit_code == 2


def test_eval_csv_round_trips(runner):
    res = run(runner, "eval", "trigamma", 1, "--format", "csv")
    row = next(csv.DictReader(io.StringIO(res.output)))
    assert float(row["value"]) == specfun.trigamma(1.0)
    assert row["z"] == "1" and row["x"] == ""


def test_eval_extended_flag(runner):
    res = run(runner, "eval", "v_inv_sqrt2", 1000, "--extended", "--format", "json")
    assert res.exit_code == 0
    assert json.loads(res.output)["value"] < 0


def test_bounds_pass(runner):
    res = run(runner, "bounds", 2, 1, "--format", "json")
    assert res.exit_code == 0
    row = json.loads(res.output)
    assert row["guo_qi_lower"] == 0.8
    assert round(row["lhs"], 6) == 0.849191 and round(row["rhs"], 6) == 0.866025
    assert row["pass"] is True and row["expected_order"] == "lhs_below"


def test_bounds_equal_and_reversed(runner):
    res = run(runner, "bounds", 1, 2, "--format", "json")
    assert res.exit_code == 0 and json.loads(res.output)["expected_order"] == "equal"
    res = run(runner, "bounds", 0.5, 1, "--format", "json")
    row = json.loads(res.output)
    assert res.exit_code == 0 and row["lhs"] > row["rhs"]


def test_bounds_text_and_csv(runner):
    assert "pass" in run(runner, "bounds", 2, 1).output
    lines = run(runner, "bounds", 2, 1, "--format", "csv").output.splitlines()
    assert lines[0].startswith("x,y,lhs,rhs,guo_qi_lower")


def test_bounds_failure_exit_code(runner, monkeypatch):
    real = cli.ratio.envelope

    def broken(p, arith=specfun.NATIVE):
        import dataclasses

        return dataclasses.replace(real(p, arith), passed=False)

    monkeypatch.setattr(cli.ratio, "envelope", broken)
    assert run(runner, "bounds", 2, 1).exit_code == 1


def test_bounds_domain_error(runner):
    assert runner.invoke(cli.main, ["bounds", "0", "1"]).exit_code == 2


def test_verify_single_check_csv(runner, tmp_path):
    out = tmp_path / "r.csv"
    res = run(runner, "verify", "h_sign", *SMALL, "-o", out)
    assert res.exit_code == 0
    assert res.output.startswith("PASS h_sign")
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0]) == cli.CSV_COLUMNS
    assert rows[0]["pass"] == "true" and rows[0]["elapsed_ms"] == ""


def test_verify_json_with_timings(runner, tmp_path):
    out = tmp_path / "r.json"
    res = run(runner, "verify", "alzer_bounds", "-o", out, "--timings")
    assert res.exit_code == 0
    doc = json.loads(out.read_text())
    assert doc["pass"] is True
    assert doc["reports"][0]["elapsed_ms"] is not None
    assert doc["reports"][0]["argmin"] == [10000.0]


def test_verify_bad_grid_is_usage_error(runner):
    assert run(runner, "verify", "theorem1", "--x-min", 5, "--x-max", 1).exit_code == 2
    assert run(runner, "verify", "theorem1", "--fd-step", 1).exit_code == 2


def test_verify_all_fails_on_mutation(runner, monkeypatch, tmp_path):
    monkeypatch.setattr(kernels, "g", negated(kernels.g))
    out = tmp_path / "r.json"
    res = run(runner, "verify", "all", *SMALL, "-o", out)
    assert res.exit_code == 1
    failed = {r["check_name"] for r in json.loads(out.read_text())["reports"] if not r["pass"]}
    assert {"theorem1", "limit_g", "dgdy_identity"} <= failed


@pytest.mark.parametrize("name", ["dv_dx_closed", "h", "v_at_inv_sqrt2", "u"])
def test_verify_all_fails_on_other_mutations(runner, monkeypatch, name):
    monkeypatch.setattr(kernels, name, negated(getattr(kernels, name)))
    assert run(runner, "verify", "all", *SMALL).exit_code == 1


def test_verify_all_small_grid_thread_determinism(runner, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(runner, "verify", "all", *SMALL, "--threads", 1, "-o", a).exit_code == 0
    assert run(runner, "verify", "all", *SMALL, "--threads", 4, "-o", b).exit_code == 0
    assert a.read_bytes() == b.read_bytes()
    assert [r["check_name"] for r in csv.DictReader(a.open())] == list(cli.verify.CHECK_NAMES)


def test_sweep(runner, tmp_path):
    out = tmp_path / "g.csv"
    res = run(runner, "sweep", "g", "--x-count", 3, "--y-count", 2, "-o", out)
    assert res.exit_code == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["x", "y", "value"] and len(rows) == 7
    ys = [float(r[1]) for r in rows[1:]]
    assert ys == sorted(ys)  # y-major
    x, y, value = map(float, rows[1])
    assert value == kernels.g(kernels.DomainPoint(x, y))


def test_sweep_stdout_deterministic(runner):
    first = run(runner, "sweep", "v", *SMALL).output
    assert first == run(runner, "sweep", "v", *SMALL, "--threads", 3).output


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "gammaratio", "eval", "log_gamma", "5"], capture_output=True, text=True
    )
    assert res.returncode == 0
    assert math.isclose(float(res.stdout.split("=")[1]), math.log(24), rel_tol=1e-14)
