"""Command-line interface: exit codes, CSV/JSON emission, sidecars."""

import csv
import json
import re
import warnings

import pytest

from padic_squares import cli, enumerate_curve, parse_polynomial, valuation
from padic_squares.cli import (EXIT_BUDGET, EXIT_OK, EXIT_VALIDATION,
                               EXIT_VERIFY, RunConfig, main, run)
from padic_squares.poly import PrimeModulus

POLY = "x^3+y^2+x*y+1"


def _read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


# -- exit codes -------------------------------------------------------------

def test_verify_ok(capsys):
    assert main(["verify", "--poly", POLY, "--prime", "5"]) == EXIT_OK
    err = capsys.readouterr().err
    assert "-> PASS" in err


def test_composite_prime_rejected(capsys):
    assert main(["curve", "--poly", POLY, "--prime", "4"]) == EXIT_VALIDATION
    assert "--prime" in capsys.readouterr().err


def test_malformed_poly_rejected(capsys):
    assert main(["curve", "--poly", "x^", "--prime", "5"]) == EXIT_VALIDATION
    assert "--poly" in capsys.readouterr().err


def test_scatter_range_validation(capsys):
    assert main(["scatter", "--poly", POLY, "--prime", "5",
                 "--range", "-1"]) == EXIT_VALIDATION
    assert "--range" in capsys.readouterr().err
    assert main(["scatter", "--poly", POLY, "--prime", "211"]) \
        == EXIT_VALIDATION  # default range p^2 = 44521 over the guard
    assert "--range" in capsys.readouterr().err


def test_tuple_budget_exit(capsys):
    assert main(["ranks", "--poly", POLY, "--prime", "211", "--k", "3",
                 "--algorithm", "naive"]) == EXIT_BUDGET
    assert "budget" in capsys.readouterr().err


def test_verify_failure_exit(monkeypatch, capsys):
    from padic_squares import blocks as blocks_mod
    monkeypatch.setattr(blocks_mod, "block_count_closed_form",
                        lambda jet, pm: (0, 0))
    assert main(["verify", "--poly", POLY, "--prime", "5"]) == EXIT_VERIFY
    assert "-> FAIL" in capsys.readouterr().err


def test_unknown_command_via_run(capsys):
    cfg = RunConfig(command="nope", poly_text=POLY, prime=5)
    assert run(cfg) == EXIT_VALIDATION
    assert "unknown command" in capsys.readouterr().err


# -- curve ------------------------------------------------------------------

def test_curve_csv_matches_enumeration(tmp_path):
    out = tmp_path / "curve.csv"
    assert main(["curve", "--poly", POLY, "--prime", "7",
                 "--out", str(out)]) == EXIT_OK
    header, rows = _read_csv(str(out))
    assert header == ["x", "y", "fx", "fy", "alpha"]
    f = parse_polynomial(POLY)
    cd = enumerate_curve(f, PrimeModulus(7))
    got = [tuple(int(v) for v in r) for r in rows]
    want = [(int(x), int(y), int(a), int(b), int(al))
            for x, y, a, b, al in zip(cd.xs, cd.ys, cd.fx, cd.fy, cd.alpha)]
    assert got == want


def test_curve_stdout(capsys):
    assert main(["curve", "--poly", "x+y+1", "--prime", "5"]) == EXIT_OK
    captured = capsys.readouterr()
    lines = captured.out.strip().splitlines()
    assert lines[0] == "x,y,fx,fy,alpha"
    assert len(lines) == 1 + 5
    assert captured.err.startswith("curve: p=5 m=5")


# -- blocks -----------------------------------------------------------------

def test_blocks_csv_and_sidecar(tmp_path):
    out = tmp_path / "blocks.csv"
    assert main(["blocks", "--poly", POLY, "--prime", "11",
                 "--out", str(out)]) == EXIT_OK
    header, rows = _read_csv(str(out))
    assert header == ["x_value", "block_count", "poisson_expected"]
    assert [int(r[0]) for r in rows] == list(range(len(rows)))
    assert sum(int(r[1]) for r in rows) == 121
    side = json.loads((tmp_path / "blocks.csv.summary.json").read_text())
    assert side["p"] == 11
    assert side["config"]["poly_text"] == POLY
    assert 0.0 <= side["tv_distance"] <= 1.0
    assert len(side["moments"]) == 4 and side["bell"] == [1, 2, 5, 15]


def test_blocks_json_format(capsys):
    assert main(["blocks", "--poly", POLY, "--prime", "5",
                 "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["config"]["prime"] == 5
    assert payload["config"]["command"] == "blocks"
    assert sum(r["block_count"] for r in payload["rows"]) == 25
    assert "tv_distance" in payload["summary"]


# -- ranks ------------------------------------------------------------------

def test_ranks_csv_formatting(tmp_path):
    out = tmp_path / "ranks.csv"
    assert main(["ranks", "--poly", POLY, "--prime", "11", "--k", "2",
                 "--out", str(out)]) == EXIT_OK
    header, rows = _read_csv(str(out))
    assert header == ["p", "k", "m", "m_k1", "m_k2", "m_k2_over_p2"]
    assert len(rows) == 1
    p, k, m, mk1, mk2, ratio = rows[0]
    assert (p, k) == ("11", "2")
    # the ratio column is serialized at 12 significant digits
    assert f"{float(ratio):.12g}" == ratio
    assert float(ratio) == pytest.approx(int(mk2) / 121)


def test_ranks_k_validation(capsys):
    assert main(["ranks", "--poly", POLY, "--prime", "5",
                 "--k", "4"]) == EXIT_VALIDATION
    assert "--k" in capsys.readouterr().err


# -- discrepancy ------------------------------------------------------------

def test_discrepancy_csv_decimals(tmp_path):
    out = tmp_path / "disc.csv"
    assert main(["discrepancy", "--poly", POLY, "--prime", "101",
                 "--out", str(out)]) == EXIT_OK
    header, rows = _read_csv(str(out))
    assert header == ["p", "side", "delta_lower", "d_lower", "inv_sqrt_p"]
    assert len(rows) == 1
    for cell in rows[0][2:]:
        assert re.fullmatch(r"\d+\.\d{11}", cell), cell
    side = json.loads((tmp_path / "disc.csv.summary.json").read_text())
    assert side["whole_space_delta"] == 0.0
    assert "family" in side


# -- expsum -----------------------------------------------------------------

def test_expsum_csv(tmp_path):
    out = tmp_path / "es.csv"
    assert main(["expsum", "--poly", POLY, "--prime", "13",
                 "--samples", "20", "--seed", "1",
                 "--out", str(out)]) == EXIT_OK
    header, rows = _read_csv(str(out))
    assert header == ["p", "samples", "max_modulus", "normalized",
                      "argmax_k", "argmax_l"]
    assert rows[0][0] == "13" and rows[0][1] == "20"
    assert float(rows[0][2]) >= 0.0


def test_expsum_deterministic_across_runs(tmp_path):
    outs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        assert main(["expsum", "--poly", POLY, "--prime", "31",
                     "--samples", "40", "--seed", "9",
                     "--out", str(out)]) == EXIT_OK
        outs.append(out.read_text())
    assert outs[0] == outs[1]


# -- scatter ----------------------------------------------------------------

def _val1_points(text, p, rng):
    f = parse_polynomial(text)
    pm = PrimeModulus(p)
    return {(x, y) for x in range(rng) for y in range(rng)
            if valuation(f, x, y, pm).value == 1}


def test_scatter_rows_are_valuation_one_points(tmp_path):
    out = tmp_path / "sc.csv"
    assert main(["scatter", "--poly", POLY, "--prime", "5",
                 "--range", "5", "--out", str(out)]) == EXIT_OK
    header, rows = _read_csv(str(out))
    assert header == ["x", "y"]
    assert {(int(r[0]), int(r[1])) for r in rows} == _val1_points(POLY, 5, 5)


def test_scatter_default_range_is_p_squared(tmp_path):
    out = tmp_path / "sc.csv"
    assert main(["scatter", "--poly", POLY, "--prime", "5",
                 "--out", str(out)]) == EXIT_OK
    _, rows = _read_csv(str(out))
    assert {(int(r[0]), int(r[1])) for r in rows} == _val1_points(POLY, 5, 25)


def test_scatter_empty_range(tmp_path):
    out = tmp_path / "sc.csv"
    assert main(["scatter", "--poly", POLY, "--prime", "5",
                 "--range", "0", "--out", str(out)]) == EXIT_OK
    header, rows = _read_csv(str(out))
    assert header == ["x", "y"] and rows == []


# -- verify output shape ----------------------------------------------------

def test_verify_csv_lists_checks(tmp_path):
    out = tmp_path / "verify.csv"
    assert main(["verify", "--poly", POLY, "--prime", "11",
                 "--out", str(out)]) == EXIT_OK
    header, rows = _read_csv(str(out))
    assert header == ["check", "passed", "detail"]
    names = [r[0] for r in rows]
    assert "block_split_closed_vs_oracle" in names
    assert all(r[1] == "True" for r in rows)


def test_verify_oracle_bound_skips_consistently(capsys):
    # a tiny oracle bound must skip every oracle-backed check, not crash
    assert main(["verify", "--poly", POLY, "--prime", "11",
                 "--oracle-bound", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "skipped" in out
