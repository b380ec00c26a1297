import csv
import io
import json
import math
import subprocess
import sys

import pytest

from stieltjes0.cli import FUNCTIONS, main, parse_args, parse_grid, parse_number


def run_cli(argv, capsys):
    status = main(argv)
    out = capsys.readouterr()
    return status, out.out, out.err


# --- parsing

@pytest.mark.parametrize("text,value", [
    ("pi", math.pi), ("pi/2", math.pi / 2), ("2pi", 2 * math.pi), ("3*pi/2", 1.5 * math.pi),
    ("-pi/4", -math.pi / 4), ("1.25", 1.25), ("1e-3", 1e-3),
])
def test_parse_number(text, value):
    assert parse_number(text) == value


def test_parse_number_malformed():
    with pytest.raises(Exception):
        parse_number("two")


def test_parse_grid():
    assert parse_grid("0.5:2:4", 0) == [0.5, 1.0, 1.5, 2.0]
    assert parse_grid("pi/4,pi", 0) == [math.pi / 4, math.pi]
    r1 = parse_grid("random:1:2:5", 7)
    assert r1 == parse_grid("random:1:2:5", 7) and len(r1) == 5
    assert all(1 <= x <= 2 for x in r1)
    with pytest.raises(Exception):
        parse_grid("2:1:3", 0)


def test_parse_args_examples():
    cfg = parse_args(["eval", "--fn", "psi", "--rep", "u-integral", "--a", "1.5"])
    assert (cfg.command, cfg.fn, cfg.rep, cfg.a) == ("eval", "psi", "u-integral", 1.5)
    cfg = parse_args(["identities", "--suite", "prop4", "--beta", "pi/2", "--tol", "1e-6"])
    assert (cfg.suite, cfg.beta, cfg.tol) == ("prop4", math.pi / 2, 1e-6)


@pytest.mark.parametrize("argv", [
    ["eval", "--fn", "psi", "--rep", "nope"],
    ["eval", "--fn", "nope"],
    ["eval", "--fn", "psi", "--a", "abc"],
    ["eval", "--fn", "psi", "--bogus"],
    ["compare", "--fn", "psi", "--grid", "3:1:2"],
    ["identities"],
    ["eval"],
    ["eval", "--fn", "psi", "--tol", "-1"],
    ["identities", "--suite", "prop4", "--case", "Nope"],
])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as e:
        parse_args(argv)
    assert e.value.code == 2


# --- exit codes

def test_domain_error_exit_2(capsys):
    status, out, err = run_cli(["eval", "--fn", "psi", "--a", "-1"], capsys)
    assert status == 2 and "error" in err and out == ""


def test_identity_pass_exit_0(capsys):
    status, out, _ = run_cli(["identities", "--suite", "gauss"], capsys)
    assert status == 0 and "fail 0" in out


def test_identity_failure_exit_1(capsys):
    status, out, _ = run_cli(["identities", "--suite", "prop4", "--case", "RealA(2.5)", "--beta", "pi/2",
                              "--tol", "1e-300"], capsys)
    assert status == 1


def test_eval_row(capsys):
    status, out, _ = run_cli(["eval", "--fn", "psi", "--rep", "u-integral", "--a", "1.5",
                              "--format", "json"], capsys)
    doc = json.loads(out)
    row = doc["rows"][0]
    assert status == 0 and row["rep"] == "u-integral" and row["pass"]
    assert row["value"] == pytest.approx(0.03648997397857652, abs=1e-12)


# --- output formats

def test_compare_csv_rows(capsys):
    status, out, _ = run_cli(["compare", "--fn", "psi", "--grid", "0.5:5:4", "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    reps = [r for r in FUNCTIONS["psi"].reps if r != "ref"]
    assert status == 0
    assert len(rows) == 4 * len(reps)
    assert all(r["pass"] == "true" for r in rows)
    assert {"value", "residual", "terms_used", "nodes_used"} <= set(rows[0])
    # 17 significant digits round-trip
    v = rows[0]["value"]
    assert float(v) == float("%.17g" % float(v))


def test_compare_csv_single_rep(capsys):
    _, out, _ = run_cli(["compare", "--fn", "lngamma", "--rep", "binet2", "--grid", "0.3,1,7",
                         "--format", "csv"], capsys)
    assert len(list(csv.DictReader(io.StringIO(out)))) == 3


def test_json_schema(capsys):
    _, out, _ = run_cli(["identities", "--suite", "special", "--format", "json"], capsys)
    doc = json.loads(out)
    assert set(doc) == {"config", "rows", "summary"}
    assert set(doc["summary"]) == {"pass_count", "fail_count", "max_residual"}
    assert doc["summary"]["pass_count"] == len(doc["rows"]) and doc["summary"]["fail_count"] == 0
    for r in doc["rows"]:
        assert {"suite", "case", "param", "lhs", "rhs", "residual", "tol", "pass"} <= set(r)
        assert isinstance(r["pass"], bool)
    assert doc["config"]["suite"] == "special"


def test_table_psi_rational(capsys):
    status, out, _ = run_cli(["table", "--fn", "psi-rational", "--q", "12", "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert status == 0 and len(rows) == 11
    assert all(float(r["residual"]) <= 1e-12 for r in rows)


def test_lemma2_suite(capsys):
    status, out, _ = run_cli(["identities", "--suite", "lemma2", "--format", "json"], capsys)
    rows = json.loads(out)["rows"]
    quad = [r for r in rows if r["case"] == "I_k quad vs closed"]
    assert status == 0 and [r["param"] for r in quad] == [1, 2, 3, 4, 5, 6]
    assert all(r["pass"] for r in rows)


def test_bench_rows(capsys):
    status, out, _ = run_cli(["bench", "--fn", "psi", "--rep", "fourier-ci-si", "--a", "1.5",
                              "--max-terms", "64", "--format", "json"], capsys)
    rows = json.loads(out)["rows"]
    assert [r["max_terms"] for r in rows] == [8, 16, 32, 64]
    assert all("wall_time" in r for r in rows)


def test_out_file(tmp_path, capsys):
    path = tmp_path / "o.csv"
    status, out, _ = run_cli(["eval", "--fn", "lngamma", "--rep", "ref", "--a", "5",
                              "--format", "csv", "--out", str(path)], capsys)
    assert status == 0 and out == ""
    row = next(csv.DictReader(open(path)))
    assert float(row["value"]) == pytest.approx(math.log(24), abs=1e-13)


def test_ci_sum_case_arguments(capsys):
    status, out, _ = run_cli(["eval", "--fn", "ci-sum", "--case", "RealA", "--a", "2.5", "--beta", "pi/2",
                              "--format", "json"], capsys)
    assert status == 0 and json.loads(out)["rows"][0]["pass"]


# --- determinism

def test_deterministic_output(capsys):
    argv = ["compare", "--fn", "psi", "--grid", "random:0.5:5:3", "--seed", "3", "--format", "csv",
            "--threads", "4"]
    _, a, _ = run_cli(argv, capsys)
    _, b, _ = run_cli(argv, capsys)
    _, c, _ = run_cli(argv[:-2], capsys)
    assert a == b == c


def test_module_entry_point():
    argv = [sys.executable, "-m", "stieltjes0", "identities", "--suite", "special", "--format", "csv"]
    a = subprocess.run(argv, capture_output=True)
    b = subprocess.run(argv, capture_output=True)
    assert a.returncode == 0 and a.stdout == b.stdout and a.stdout
