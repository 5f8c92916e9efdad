"""End-to-end tests for the command-line interface.

Every test drives ``main(argv)`` in-process and inspects the exit code,
stdout payload, and stderr diagnostics.  Values printed by the CLI are
cross-checked against direct library calls.
"""

from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

import ffsums.cli as cli_module
from ffsums.bilinear import bk_plain, bk_type1_set, make_weights
from ffsums.cli import main
from ffsums.counting import Interval, energy_inv, hyperbola_count, inverse_pair_count
from ffsums.expsum import gauss, kloosterman, ramanujan
from ffsums.field import parse_field_spec
from ffsums.polyring import Modulus, Poly, parse_poly
from ffsums.records import make_report

F3 = parse_field_spec("3")
F5 = parse_field_spec("5")


def run_cli(capsysbinary, argv):
    code = main(argv)
    captured = capsysbinary.readouterr()
    return code, captured.out, captured.err.decode()


def json_records(blob: bytes) -> list:
    return json.loads(blob.decode())


def csv_rows(blob: bytes) -> list:
    return list(csv.reader(io.StringIO(blob.decode())))


# ---------------------------------------------------------------------------
# sum
# ---------------------------------------------------------------------------

def test_sum_kloosterman_documented_value(capsysbinary):
    code, out, err = run_cli(
        capsysbinary,
        ["sum", "kloosterman", "--field", "5", "--modulus", "0,1",
         "--s", "1", "--t", "1", "--format", "json"],
    )
    assert code == 0
    assert err == ""
    (rec,) = json_records(out)
    assert rec["params"]["check"] == "sum-kloosterman"
    assert rec["params"]["field"] == "5"
    assert rec["params"]["modulus"] == "0,1"
    assert rec["params"]["s"] == "1"
    assert rec["params"]["t"] == "1"
    # sum over x in F_5^* of e(trace((x + 1/x)/T)) = (3 - sqrt(5)) / 2
    assert rec["value"]["re"] == pytest.approx(0.3819660112501051, abs=1e-9)
    assert rec["value"]["im"] == pytest.approx(0.0, abs=1e-9)


def test_sum_values_match_library(capsysbinary):
    F = Modulus(parse_poly(F3, "1,0,1"))
    s, t = parse_poly(F3, "2"), parse_poly(F3, "0,1")
    cases = [
        (["sum", "kloosterman"], kloosterman(F, s, t).to_complex()),
        (["sum", "gauss"], gauss(F, s, t).to_complex()),
    ]
    for head, expected in cases:
        code, out, err = run_cli(
            capsysbinary,
            head + ["--modulus", "1,0,1", "--s", "2", "--t", "0,1",
                    "--format", "json"],
        )
        assert code == 0 and err == ""
        (rec,) = json_records(out)
        got = complex(rec["value"]["re"], rec["value"]["im"])
        assert got == pytest.approx(expected, abs=1e-12)


def test_sum_ramanujan_matches_library(capsysbinary):
    F = Modulus(parse_poly(F3, "0,1,1"))
    expected = ramanujan(F, parse_poly(F3, "0,1")).to_complex()
    code, out, err = run_cli(
        capsysbinary,
        ["sum", "ramanujan", "--modulus", "0,1,1", "--s", "0,1",
         "--format", "json"],
    )
    assert code == 0 and err == ""
    (rec,) = json_records(out)
    assert rec["params"]["check"] == "sum-ramanujan"
    assert complex(rec["value"]["re"], rec["value"]["im"]) == pytest.approx(
        expected, abs=1e-12
    )


def test_sum_pretty_format(capsysbinary):
    code, out, err = run_cli(
        capsysbinary,
        ["sum", "kloosterman", "--modulus", "1,0,1", "--s", "1", "--t", "1"],
    )
    assert code == 0 and err == ""
    text = out.decode()
    assert text.endswith("\n")
    line = text.strip()
    assert line.startswith("sum-kloosterman field=3 modulus=1,0,1")
    assert "value=" in line and "|value|=" in line


def test_sum_tsum_runs(capsysbinary):
    code, out, err = run_cli(
        capsysbinary,
        ["sum", "tsum", "--modulus", "1,0,1", "--u", "1", "--v", "0,1",
         "--a", "1", "--format", "json"],
    )
    assert code == 0 and err == ""
    (rec,) = json_records(out)
    assert rec["params"]["check"] == "sum-tsum"
    assert {"u", "v", "a"} <= set(rec["params"])


# ---------------------------------------------------------------------------
# count
# ---------------------------------------------------------------------------

def test_count_hyperbola_matches_library(capsysbinary):
    F = Modulus(parse_poly(F3, "1,0,1"))
    expected = hyperbola_count(
        F, Poly.one(F3), Interval.initial(F3, 1), Interval.initial(F3, 2)
    )
    code, out, err = run_cli(
        capsysbinary,
        ["count", "H", "--modulus", "1,0,1", "--a", "1", "--m", "1",
         "--n", "2", "--format", "json"],
    )
    assert code == 0 and err == ""
    (rec,) = json_records(out)
    assert rec["params"]["check"] == "count-H"
    assert rec["params"]["m"] == 1 and rec["params"]["n"] == 2
    assert rec["params"]["m_offset"] == "0"
    assert rec["value"]["re"] == float(expected)
    assert rec["value"]["im"] == 0.0


def test_count_inverse_with_offset_matches_library(capsysbinary):
    F = Modulus(parse_poly(F3, "1,0,1"))
    expected = inverse_pair_count(F, Poly.one(F3), Interval(Poly.t(F3), 1))
    code, out, err = run_cli(
        capsysbinary,
        ["count", "I", "--modulus", "1,0,1", "--a", "1", "--m", "1",
         "--m-offset", "0,1", "--format", "json"],
    )
    assert code == 0 and err == ""
    (rec,) = json_records(out)
    assert rec["params"]["m_offset"] == "0,1"
    assert rec["value"]["re"] == float(expected)


def test_count_energy_csv_shape(capsysbinary):
    F = Modulus(parse_poly(F3, "1,0,1"))
    expected = energy_inv(F, Interval.initial(F3, 1))
    code, out, err = run_cli(
        capsysbinary,
        ["count", "Einv", "--modulus", "1,0,1", "--m", "1", "--format", "csv"],
    )
    assert code == 0 and err == ""
    rows = csv_rows(out)
    assert rows[0][:4] == ["check", "field", "modulus", "params"]
    assert len(rows) == 2
    row = rows[1]
    assert row[0] == "count-Einv"
    assert row[2] == "1,0,1"
    assert json.loads(row[3])["m"] == 1
    assert row[4:9] == ["", "", "", "", ""]  # value record: no bound columns
    assert float(row[9]) == float(expected)


def test_count_avg_k_out_of_range(capsysbinary):
    code, out, err = run_cli(
        capsysbinary,
        ["count", "A", "--modulus", "1,0,1", "--a", "1", "--m", "1",
         "--k", "7"],
    )
    assert code == 2
    assert out == b""
    assert err.startswith("ffsums: error:")
    assert "usage:" in err


# ---------------------------------------------------------------------------
# bilinear
# ---------------------------------------------------------------------------

def test_bilinear_bk_plain_matches_library(capsysbinary):
    F = Modulus(parse_poly(F3, "1,2,0,1"))
    expected = bk_plain(
        F, Poly.one(F3), Interval.initial(F3, 1), Interval.initial(F3, 2)
    ).to_complex()
    code, out, err = run_cli(
        capsysbinary,
        ["bilinear", "bk-plain", "--modulus", "1,2,0,1", "--a", "1",
         "--m", "1", "--n", "2", "--format", "json"],
    )
    assert code == 0 and err == ""
    (rec,) = json_records(out)
    assert rec["params"]["check"] == "bilinear-bk-plain"
    got = complex(rec["value"]["re"], rec["value"]["im"])
    assert got == pytest.approx(expected, abs=1e-9)


def test_bilinear_type1_support_matches_library(capsysbinary):
    F = Modulus(parse_poly(F3, "1,0,1"))
    support = (parse_poly(F3, "1"), parse_poly(F3, "0,1"))
    alpha = make_weights("ones", support, seed=0)
    expected = bk_type1_set(F, Poly.one(F3), alpha, Interval.initial(F3, 1))
    code, out, err = run_cli(
        capsysbinary,
        ["bilinear", "bk-type1", "--modulus", "1,0,1", "--a", "1",
         "--support", "1;0,1", "--n", "1", "--format", "json"],
    )
    assert code == 0 and err == ""
    (rec,) = json_records(out)
    got = complex(rec["value"]["re"], rec["value"]["im"])
    assert got == pytest.approx(complex(expected), abs=1e-9)


def test_bilinear_bg_type2_runs(capsysbinary):
    code, out, err = run_cli(
        capsysbinary,
        ["bilinear", "bg-type2", "--modulus", "1,0,1", "--a", "1",
         "--support", "1;0,1", "--beta-support", "1;2", "--n", "1",
         "--format", "json"],
    )
    assert code == 0 and err == ""
    (rec,) = json_records(out)
    assert rec["params"]["check"] == "bilinear-bg-type2"
    assert rec["params"]["beta_seed"] == 1000  # default seed + 1000


def test_bilinear_seeded_weights_deterministic(capsysbinary):
    argv = ["bilinear", "bk-type1-interval", "--modulus", "1,2,0,1",
            "--a", "1", "--m", "2", "--n", "2", "--weights", "random-unit",
            "--seed", "5", "--format", "json"]
    code1, out1, err1 = run_cli(capsysbinary, argv)
    code2, out2, err2 = run_cli(capsysbinary, argv)
    assert code1 == code2 == 0
    assert out1 == out2
    code3, out3, _ = run_cli(capsysbinary, argv[:-3] + ["6", "--format", "json"])
    assert code3 == 0
    assert out3 != out1  # a different seed draws different weights


def test_bilinear_gamma_option_deterministic(capsysbinary):
    argv = ["bilinear", "bk-plain", "--modulus", "1,0,1", "--a", "1",
            "--m", "1", "--n", "1", "--gamma", "random-sign",
            "--gamma-seed", "3", "--format", "json"]
    code1, out1, _ = run_cli(capsysbinary, argv)
    code2, out2, _ = run_cli(capsysbinary, argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_bilinear_gauss_needs_irreducible_modulus(capsysbinary):
    code, out, err = run_cli(
        capsysbinary,
        ["bilinear", "bg-type1", "--modulus", "0,1,1", "--a", "1",
         "--support", "1", "--n", "1"],
    )
    assert code == 2
    assert out == b""
    assert err.startswith("ffsums: error:")
    assert "irreducible" in err


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def test_check_quick_charsum_csv(capsysbinary):
    code, out, err = run_cli(
        capsysbinary,
        ["check", "charsum", "--profile", "quick", "--format", "csv"],
    )
    assert code == 0 and err == ""
    rows = csv_rows(out)
    assert rows[0] == ["check", "field", "modulus", "params", "lhs",
                       "rhs_exact", "rhs_main", "slack_log_q", "passed",
                       "value_re", "value_im"]
    body = rows[1:]
    assert body
    assert all(row[0] == "charsum" for row in body)
    assert all(row[8] == "true" for row in body)


def test_check_quick_tsum_cases_json_parses(capsysbinary):
    code, out, err = run_cli(
        capsysbinary,
        ["check", "tsum-cases", "--profile", "quick", "--format", "json"],
    )
    assert code == 0 and err == ""
    records = json_records(out)
    assert records
    assert all(rec["passed"] for rec in records if "passed" in rec)


def test_check_theorem_quick_with_seeds(capsysbinary):
    code, out, err = run_cli(
        capsysbinary,
        ["check", "thm1", "--profile", "quick", "--seeds", "0..0",
         "--width", "1", "--format", "csv"],
    )
    assert code == 0 and err == ""
    body = csv_rows(out)[1:]
    assert body
    assert all(row[0] == "thm1" for row in body)
    assert all(row[8] == "true" for row in body)


def test_check_multi_field_override(capsysbinary):
    code, out, err = run_cli(
        capsysbinary,
        ["check", "mobius", "--field", "3", "--field", "5", "--max-deg", "2",
         "--format", "csv"],
    )
    assert code == 0 and err == ""
    fields = {row[1] for row in csv_rows(out)[1:]}
    assert fields == {"3", "5"}


def test_check_all_rejects_per_check_options(capsysbinary):
    code, out, err = run_cli(capsysbinary, ["check", "all", "--max-deg", "2"])
    assert code == 2
    assert out == b""
    assert err.startswith("ffsums: error:")
    assert "check all" in err


def test_check_single_field_suite_rejects_second_field(capsysbinary):
    code, _, err = run_cli(
        capsysbinary,
        ["check", "dirichlet", "--field", "3", "--field", "5"],
    )
    assert code == 2
    assert "single --field" in err


def test_check_option_scope_errors(capsysbinary):
    code, _, err = run_cli(capsysbinary, ["check", "charsum", "--seeds", "0..1"])
    assert code == 2 and "--seeds" in err
    code, _, err = run_cli(capsysbinary, ["check", "dirichlet", "--width", "2"])
    assert code == 2 and "--width" in err
    code, _, err = run_cli(capsysbinary, ["check", "twisted", "--max-deg", "2"])
    assert code == 2 and "--max-deg" in err


def test_check_unknown_name_is_usage_error(capsysbinary):
    code, out, err = run_cli(capsysbinary, ["check", "no-such-suite"])
    assert code == 2
    assert out == b""
    assert "usage:" in err


def test_check_failing_record_exits_one(capsysbinary, monkeypatch):
    failing = make_report(
        {"check": "charsum", "field": "3", "modulus": "0,1"},
        lhs=10.0, rhs_exact=1.0, rhs_main=1.0, q=3,
    )
    assert not failing.passed
    monkeypatch.setattr(
        cli_module, "run_named_check", lambda *a, **k: [failing]
    )
    code, out, err = run_cli(
        capsysbinary, ["check", "charsum", "--format", "pretty"]
    )
    assert code == 1
    assert b"FAIL" in out  # the payload is still written before the summary
    assert err.startswith("first failure: ")
    assert "charsum" in err


def test_check_assertion_failure_exits_one(capsysbinary, monkeypatch):
    def boom(*args, **kwargs):
        raise AssertionError("dual routes disagree")

    monkeypatch.setattr(cli_module, "run_named_check", boom)
    code, out, err = run_cli(capsysbinary, ["check", "charsum"])
    assert code == 1
    assert out == b""
    assert err.startswith("ffsums: assertion failure:")
    assert "dual routes disagree" in err


# ---------------------------------------------------------------------------
# scan
# ---------------------------------------------------------------------------

def test_scan_grid_order_and_content(capsysbinary):
    code, out, err = run_cli(
        capsysbinary,
        ["scan", "thm1", "--modulus", "1,0,1", "--grid", "m=1..2,n=1..2",
         "--format", "csv"],
    )
    assert code == 0 and err == ""
    body = csv_rows(out)[1:]
    points = [
        (json.loads(row[3])["m"], json.loads(row[3])["n"]) for row in body
    ]
    assert points == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert all(row[0] == "thm1" for row in body)
    assert all(row[8] == "true" for row in body)


def test_scan_parallel_output_identical(capsysbinary):
    base = ["scan", "thm2", "--modulus", "1,0,1", "--grid", "m=1..2",
            "--n", "1", "--format", "json"]
    code1, out1, _ = run_cli(capsysbinary, base + ["--width", "1"])
    code2, out2, _ = run_cli(capsysbinary, base + ["--width", "2"])
    assert code1 == code2 == 0
    assert out1 == out2


def test_scan_seed_axis(capsysbinary):
    code, out, err = run_cli(
        capsysbinary,
        ["scan", "thm2", "--modulus", "1,0,1", "--grid", "seed=0..2",
         "--m", "1", "--n", "1", "--weights", "random-unit",
         "--format", "json"],
    )
    assert code == 0 and err == ""
    records = json_records(out)
    assert [rec["params"]["seed"] for rec in records] == [0, 1, 2]
    values = {(rec["value"]["re"], rec["value"]["im"]) for rec in records}
    assert len(values) == 3


def test_scan_grid_errors(capsysbinary):
    code, _, err = run_cli(
        capsysbinary,
        ["scan", "thm1", "--modulus", "1,0,1", "--grid", "m=1..2"],
    )
    assert code == 2 and err.startswith("ffsums: error:")
    code, _, err = run_cli(
        capsysbinary,
        ["scan", "thm1", "--modulus", "1,0,1", "--grid", "z=1..2", "--m", "1",
         "--n", "1"],
    )
    assert code == 2 and err.startswith("ffsums: error:")


def test_scan_rejects_non_theorem_name(capsysbinary):
    code, out, err = run_cli(
        capsysbinary,
        ["scan", "charsum", "--modulus", "1,0,1", "--grid", "m=1..2"],
    )
    assert code == 2
    assert "usage:" in err


# ---------------------------------------------------------------------------
# shared error handling
# ---------------------------------------------------------------------------

def test_bad_polynomial_text(capsysbinary):
    code, out, err = run_cli(
        capsysbinary,
        ["sum", "kloosterman", "--modulus", "banana", "--s", "1", "--t", "1"],
    )
    assert code == 2
    assert out == b""
    assert err.startswith("ffsums: error:")
    assert "usage: ffsums" in err


def test_bad_field_spec(capsysbinary):
    code, _, err = run_cli(
        capsysbinary,
        ["sum", "kloosterman", "--field", "4", "--modulus", "0,1",
         "--s", "1", "--t", "1"],
    )
    assert code == 2
    assert err.startswith("ffsums: error:")


def test_constant_modulus_rejected(capsysbinary):
    code, _, err = run_cli(
        capsysbinary,
        ["sum", "kloosterman", "--modulus", "2", "--s", "1", "--t", "1"],
    )
    assert code == 2
    assert err.startswith("ffsums: error:")


def test_missing_required_argument(capsysbinary):
    code, out, err = run_cli(
        capsysbinary, ["sum", "kloosterman", "--modulus", "0,1"]
    )
    assert code == 2
    assert out == b""
    assert "usage:" in err


def test_oversized_request_refused(capsysbinary):
    modulus = ",".join(["0"] * 16 + ["1"])  # T^16 over F_5: 5^32 evaluations
    code, out, err = run_cli(
        capsysbinary,
        ["sum", "tsum", "--field", "5", "--modulus", modulus, "--u", "1",
         "--v", "1", "--a", "1"],
    )
    assert code == 2
    assert out == b""
    assert err.startswith("ffsums: error:")
    assert "character evaluations" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ffsums", "sum", "kloosterman", "--field", "5",
         "--modulus", "0,1", "--s", "1", "--t", "1", "--format", "json"],
        capture_output=True,
        timeout=120,
    )
    assert proc.returncode == 0
    (rec,) = json.loads(proc.stdout.decode())
    assert rec["value"]["re"] == pytest.approx(0.3819660112501051, abs=1e-9)
