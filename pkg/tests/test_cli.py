import json
import os
import subprocess
import sys

import pytest

from quintic_frobenius.cli import main, parse_range, run
from quintic_frobenius.padic import parse_digits


def run_json(*argv):
    code, text = run(list(argv) + ["--format", "json"])
    return code, json.loads(text)


def all_scalars(obj):
    if isinstance(obj, dict):
        if "digits" in obj and "valuation" in obj:
            yield obj
        else:
            for v in obj.values():
                yield from all_scalars(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from all_scalars(v)


def test_frobenius_seven():
    code, rep = run_json("frobenius", "--prime", "7", "--digits", "15")
    assert code == 0 and rep["ok"]
    m = rep["sections"][0]["results"]["matrix"]
    diag = [(m[i][i]["valuation"], m[i][i]["unit"]) for i in range(4)]
    assert diag == [(3, 1), (2, 1), (1, 1), (0, 1)]
    off = [(i, j) for i in range(4) for j in range(4) if i != j and m[i][j]["unit"]]
    assert off == [(0, 3)]


def test_frobenius_dwork_convention():
    _, std = run_json("frobenius", "--prime", "7")
    _, dw = run_json("frobenius", "--prime", "7", "--convention", "dwork")
    ms = std["sections"][0]["results"]["matrix"]
    md = dw["sections"][0]["results"]["matrix"]
    for i in range(4):
        for j in range(4):
            if ms[i][j]["unit"]:
                assert md[i][j]["valuation"] == ms[i][j]["valuation"] + 2
                assert md[i][j]["unit"] == ms[i][j]["unit"]


@pytest.mark.parametrize("argv", [
    ["frobenius", "--prime", "5"],
    ["frobenius", "--prime", "2"],
    ["frobenius", "--prime", "9"],
    ["frobenius", "--digits", "0"],
    ["tables", "dmatrix", "--alpha", "3..1"],
    ["bogus"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err


def test_verify_brackets_suite():
    code, rep = run_json("verify", "--prime", "7", "--suite", "brackets")
    names = {c["name"]: c["status"] for c in rep["sections"][0]["checks"]}
    assert code == 0
    assert names["Δ₂ = 0 (15 digits)"] == "pass"


def test_verify_cohomology_suite_lists_picard_fuchs():
    code, rep = run_json("verify", "--prime", "7", "--suite", "cohomology")
    exact = rep["sections"][0]
    assert exact["prime"] is None
    assert any(c["name"] == "picard-fuchs = (−10,−35,−50,−24)" and c["status"] == "pass" for c in exact["checks"])
    assert code == 0


def test_verify_p5_skips_mirror_checks():
    code, rep = run_json("verify", "--prime", "5", "--suite", "cohomology")
    statuses = [c["status"] for c in rep["sections"][1]["checks"]]
    assert statuses == ["skip"] and code == 0


def test_verify_all_at_three_and_determinism():
    argv = ["verify", "--prime", "3", "--digits", "15", "--suite", "all", "--format", "json"]
    code1, a = run(argv)
    code2, b = run(argv)
    assert code1 == code2 == 0
    assert a == b
    rep = json.loads(a)
    names = [c["name"] for s in rep["sections"] for c in s["checks"]]
    assert "delta3 vs Lp(3)/3: ≥10 digits" in names
    assert "six-fold first row oracle" in names
    assert "wall_time" not in rep


def test_timing_is_opt_in():
    _, rep = run_json("frobenius", "--prime", "7", "--timing")
    assert rep["wall_time"] >= 0


def test_failed_check_exit_code(monkeypatch):
    from quintic_frobenius import cli

    monkeypatch.setattr(cli, "PICARD_FUCHS", (1, 2, 3, 4))
    code, _ = run(["verify", "--prime", "7", "--suite", "cohomology"])
    assert code == 1


def test_scalar_schema_roundtrip():
    _, rep = run_json("verify", "--primes", "7,11", "--suite", "lfunction")
    seen = 0
    for sec in rep["sections"]:
        p = sec["prime"]
        for x in all_scalars(sec["results"]):
            if x["unit"]:
                v, unit, k = parse_digits(x["digits"], p)
                assert (v, unit, k) == (x["valuation"], x["unit"], x["unit_digits"])
                seen += 1
    assert seen >= 6


def test_tables_dwork():
    _, rep = run_json("tables", "dwork", "--prime", "3", "-n", "3")
    assert rep["sections"][0]["results"]["B"] == ["1", "1", "1/2", "1/2"]


def test_tables_dmatrix():
    _, rep = run_json("tables", "dmatrix", "--alpha", "0..3", "--beta", "0..5")
    assert rep["sections"][0]["results"]["D"]["0"] == [1, 1, 2, 6, 24, 120]


def test_tables_cvalues():
    _, rep = run_json("tables", "cvalues", "--alpha", "2", "--max-index", "2")
    rows = {tuple(r["indices"]): r["c"] for r in rep["sections"][0]["results"]["c"]}
    assert rows[(0, 0, 0, 0, 0)] == "0"
    assert rows[(1, 0, 0, 0, 0)] == "1/5"
    assert rows[(2, 0, 0, 0, 0)] == "1/5"
    assert rows[(1, 1, 0, 0, 0)] == "0"


def test_parse_range():
    assert parse_range("0..3") == range(0, 4)
    assert parse_range("4") == range(4, 5)


def test_text_output_mentions_status(capsys):
    assert main(["verify", "--prime", "7", "--suite", "dwork"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and out.rstrip().endswith("OK")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quintic_frobenius", "tables", "dwork", "--prime", "3", "-n", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "B_2 = 1/2" in proc.stdout


def test_cache_env(tmp_path):
    env = {"QUINTIC_FROBENIUS_CACHE": str(tmp_path)}
    proc = subprocess.run(
        [sys.executable, "-m", "quintic_frobenius", "tables", "dwork", "--prime", "7", "-n", "5"],
        capture_output=True, text=True, env={**os.environ, **env},
    )
    assert proc.returncode == 0
    assert (tmp_path / "dwork_p7.txt").exists()
