import csv
import io
import json
import subprocess
import sys

import pytest

from hilbexact.cli import build_parser, config_from_args, main, parse_range
from hilbexact.rademacher import DEFAULT_CONVENTION


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coeff_exact(capsys):
    code, out, _ = run(capsys, "coeff", "-a", "-1", "-b", "0", "-n", "10", "--exact")
    assert code == 0
    assert out.splitlines()[0] == "42"


def test_coeff_truncated(capsys):
    code, out, _ = run(capsys, "coeff", "-a", "1", "-b", "-2", "-n", "4", "--max-k", "2")
    assert code == 0
    assert out.startswith("2.79016")


def test_coeff_precondition_exit(capsys):
    code, _, err = run(capsys, "coeff", "-a", "1", "-b", "1", "-n", "5")
    assert code == 2
    assert "α+β ≤ 0 violated" in err


def test_coeff_pole_bound_exit(capsys):
    code, _, err = run(capsys, "coeff", "-a", "-24", "-b", "0", "-n", "1")
    assert code == 2
    assert "n > " in err


def test_coeff_json_roundtrip(capsys):
    code, out, _ = run(capsys, "coeff", "-a", "-8", "-b", "-2", "-n", "5", "--max-k", "6", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["N"] == 6 and d["alpha"] == -8
    assert json.loads(json.dumps(d)) == d
    again = json.loads(out)
    assert again["value"] == d["value"]


def test_invariant_signature(capsys):
    code, out, _ = run(capsys, "invariant", "--surface", "p2", "--signature", "--n", "1..6", "--method", "oracle", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["value"]) for r in rows] == [1, 1, 2, 3, 4, 5]
    assert list(rows[0]) == ["n", "value", "method", "N_used"]


def test_invariant_euler(capsys):
    code, out, _ = run(capsys, "invariant", "--surface", "k3", "--euler", "--n", "1..3", "--method", "oracle", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["value"]) for r in rows] == [24, 324, 3200]


def test_invariant_hilb_zero(capsys):
    code, out, _ = run(capsys, "invariant", "--surface", "custom:0,0,1", "--euler", "--n", "0", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[0]["value"] == "1"


def test_invariant_exact_mode(capsys):
    code, out, _ = run(capsys, "invariant", "--surface", "hirzebruch0", "--signature", "--n", "4..6", "--method", "exact", "--format", "json")
    assert code == 0
    assert [r["value"] for r in json.loads(out)] == [5, 0, 10]


def test_table_one(capsys):
    code, out, _ = run(capsys, "table", "1", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "1", "2", "3", "4", "5", "6"]
    assert rows[1][1:] == ["1.0029", "2.0808", "2.9340", "5.0296", "7.0278", "10.9324"]
    assert rows[3][1:] == ["-0.8746", "1.3314", "-1.9544", "2.7901", "-3.8957", "5.3410"]
    assert "abelian_blowup1" in rows[1][0] and "p2" in rows[3][0]


def test_table_one_rounded(capsys):
    code, out, _ = run(capsys, "table", "1", "--format", "csv", "--rounding", "round")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[1][1:] == ["1.0030", "2.0809", "2.9341", "5.0296", "7.0279", "10.9325"]
    assert rows[3][1:] == ["-0.8747", "1.3314", "-1.9544", "2.7902", "-3.8958", "5.3411"]


def test_table_five(capsys):
    code, out, _ = run(capsys, "table", "5")
    assert code == 0
    assert "0.2505" in out and "Theta^0,0(n)" in out


def test_compare_matches_tables(capsys):
    code, out, _ = run(capsys, "compare", "-a", "-1", "-b", "0", "--n-max", "6", "--k-grid", "2,75", "--no-timing")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert all(r["oracle"].lstrip("-").isdigit() for r in rows)
    first = {(int(r["n"]), int(r["N"])): r for r in rows}
    assert first[(1, 2)]["abs_error"].startswith("0.0029")
    assert first[(6, 75)]["abs_error"].startswith("0.0000")


def test_compare_has_timing_by_default(capsys):
    code, out, _ = run(capsys, "compare", "-a", "1", "-b", "-2", "--n-max", "2", "--k-grid", "2")
    assert out.splitlines()[0].endswith("seconds")


def test_series_json(capsys):
    code, out, _ = run(capsys, "series", "-a", "-24", "-b", "0", "--order", "3", "--format", "json")
    assert json.loads(out) == ["1", "24", "324", "3200"]


def test_asymptotics_command(capsys):
    code, out, _ = run(capsys, "asymptotics", "--surface", "p2", "--signature", "--n", "100", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and float(rows[0]["ratio"]) == pytest.approx(1, abs=0.1)
    code, _, _ = run(capsys, "asymptotics", "-a", "0", "-b", "0", "--n", "5")
    assert code == 2


def test_equidistribution_command(capsys):
    code, out, _ = run(capsys, "equidistribution", "--surface", "c2p1_blowup2", "--n-max", "25")
    assert code == 0
    assert "Z(-1,-1)" in out and "c*(0,1;n) = c*(1,0;n)" in out


def test_determinism(capsys):
    argv = ["coeff", "-a", "-8", "-b", "-2", "-n", "7", "--max-k", "12", "--format", "json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_out_file(tmp_path, capsys):
    path = tmp_path / "t.csv"
    code, out, _ = run(capsys, "table", "4", "--format", "csv", "--out", str(path))
    assert code == 0 and out == ""
    assert "0.5714" in path.read_text()


def test_config_defaults_and_env():
    args = build_parser().parse_args(["coeff", "-a", "-1", "-b", "0", "-n", "3"])
    cfg = config_from_args(args, environ={})
    assert (cfg.precision_bits, cfg.convention, cfg.round_margin, cfg.output_format, cfg.max_k) == (
        128, DEFAULT_CONVENTION, 0.25, "table", None)
    assert config_from_args(args, environ={"HILB_PRECISION": "200"}).precision_bits == 200


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("1..4") == [1, 2, 3, 4]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hilbexact", "coeff", "-a", "1", "-b", "1", "-n", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 2
