from __future__ import annotations

import io
import json
import re
import subprocess
import sys
from fractions import Fraction

import pytest

from episturmian.cli import decimal_str, run


def call(*argv: str, stdin: str | None = None) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        old, sys.stdin = sys.stdin, io.StringIO(stdin)
    try:
        code = run(list(argv), out=out, err=err)
    finally:
        if stdin is not None:
            sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def result(*argv: str, stdin: str | None = None) -> dict:
    code, out, err = call(*argv, stdin=stdin)
    assert code == 0, err
    env = json.loads(out)
    assert set(env) == {"command", "params", "result", "versions"}
    return env["result"]


def test_exponent_fibonacci():
    r = result("exponent", "--d", "2", "--directive", ":0,1", "--nmax", "2000")
    assert r["E"]["kind"] == "Exact"
    assert abs(float(r["E"]["lo"]) - 3.618034) < 1e-6
    assert r["Estar"]["kind"] == "LimitEstimate"
    assert isinstance(r["E"]["lo"], str)


def test_dbonacci_d7():
    r = result("dbonacci", "--d", "7")
    assert abs(float(r["t"]["lo"]) - 1.992) < 5e-4
    assert abs(float(r["E"]["lo"]) - 3.008) < 5e-4
    assert len(r["roots"]) == 7 and len(r["table"]) == 6


def test_maxsearch():
    r = result("maxsearch", "--d", "2", "--n", "3")
    assert r["maxValue"] == "8"
    assert r["argmax"] == ["0,1,0"]
    r = result("maxsearch", "--d", "2", "--n", "3", "--all-argmax")
    assert r["argmax"] == ["0,1,0", "1,0,1"]


def test_maxsearch_budget_is_domain_error():
    code, _, err = call("maxsearch", "--d", "3", "--n", "10", "--budget", "10")
    assert code == 1 and "budget" in err


def test_gen_and_bispecial():
    r = result("gen", "--directive", ":0,1", "--n", "13")
    assert r["word"] == "0,1,0,0,1,0,1,0,0,1,0,0,1"
    r = result("bispecial", "--directive", ":0,1", "--n", "4", "--all")
    assert [rec["lenB"] for rec in r["records"]] == ["0", "1", "3", "6", "11"]


def test_oracle_pipeline():
    gen = json.dumps({"command": "gen", "result": result("gen", "--d", "3", "--directive", ":0,1,2", "--n", "600")})
    r = result("oracle", "bispecials", "--max-len", "8", stdin=gen)
    assert "0,1,0,2,0,1,0" in [b["factor"] for b in r["bispecials"]]
    r = result("oracle", "exponent", stdin="0,1,2,0,1\n")
    assert r["exponent"] == "5/3" and r["period"] == 3
    r = result("oracle", "returns", "--factor", "0,1", stdin="0,1,0,1,0,1")
    assert r["returnWords"] == ["0,1"]


def test_oracle_reads_file(tmp_path):
    path = tmp_path / "w.txt"
    path.write_text("0,0,0\n")
    assert result("oracle", "exponent", "--input", str(path))["exponent"] == "3/1"


@pytest.mark.parametrize(
    "argv",
    [["bogus"], [], ["exponent", "--nmax", "x"], ["verify"], ["oracle", "returns"], ["dbonacci", "--format", "xml"]],
)
def test_usage_errors(argv):
    code, _, err = call(*argv, stdin="0,1,0,1")
    assert code == 2
    assert "usage" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["bispecial", "--d", "3", "--directive", ":0,1"],
        ["exponent", "--directive", ":0,5"],
        ["dbonacci", "--d", "1"],
        ["oracle", "--input", "/nonexistent/file", "exponent"],
    ],
)
def test_domain_errors(argv):
    code, out, err = call(*argv)
    assert code == 1
    assert out == "" and err


def numbers(text: str) -> list[str]:
    return re.findall(r"-?\d+(?:[./]\d+)?(?:e-?\d+)?", text)


@pytest.mark.parametrize(
    "argv",
    [
        ["exponent", "--d", "3", "--directive", "1:0,1,2,2", "--nmax", "300", "--tol", "1e-6"],
        ["dbonacci", "--d", "4"],
        ["maxsearch", "--d", "3", "--n", "6"],
        ["bispecial", "--directive", ":0,0,1", "--n", "5", "--all"],
    ],
)
def test_text_and_json_agree(argv):
    code, js, _ = call(*argv)
    code2, text, _ = call(*argv, "--format", "text")
    assert code == code2 == 0
    res = json.loads(js)["result"]
    assert sorted(numbers(json.dumps(res))) == sorted(numbers(text))


def test_output_is_deterministic():
    assert call("maxsearch", "--d", "3", "--n", "7")[1] == call("maxsearch", "--d", "3", "--n", "7", "--workers", "2")[1].replace('"workers": 2', '"workers": 1')


def test_verify_small():
    code, out, _ = call("verify", "--check", "dbonacci.table", "--check", "core.parikh", "--seed", "5")
    assert code == 0
    r = json.loads(out)["result"]
    assert r["passed"] and [c["check"] for c in r["checks"]] == ["core.parikh", "dbonacci.table"]


@pytest.mark.parametrize(
    "x, digits, up, expected",
    [
        (Fraction(1, 3), 5, False, "0.33333"),
        (Fraction(1, 3), 5, True, "0.33334"),
        (Fraction(-1, 3), 3, False, "-0.334"),
        (Fraction(-1, 3), 3, True, "-0.333"),
        (Fraction(5, 2), 0, False, "2"),
        (Fraction(1, 4), 2, True, "0.25"),
    ],
)
def test_outward_rounding(x, digits, up, expected):
    assert decimal_str(x, digits, up=up) == expected


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "episturmian", "maxsearch", "--d", "2", "--n", "3", "--format", "text"],
        capture_output=True, text=True, check=True,
    ).stdout
    assert "maxValue" in out and "8" in out


def test_verify_all_small_exits_zero():
    code, out, err = call("verify", "--all", "--small", "--seed", "11")
    assert code == 0, err
    r = json.loads(out)["result"]
    assert r["passed"] and len(r["checks"]) >= 20
