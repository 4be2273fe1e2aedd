import csv
import io
import json

import pytest

from fewweight import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


EX1 = ["--p", "3", "--e", "6", "--alpha", "6", "--t", "2"]


def test_verify_example_text(capsys):
    code, out, _ = run(capsys, "verify", *EX1, "--a", "0")
    assert code == 0
    assert "result: MATCH" in out
    assert "1 + 360z^48 + 80z^54 + 288z^60" in out


def test_verify_json_schema_and_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", *EX1, "--a", "1", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    for key in ["params", "constants", "length", "dimension", "cwe", "predicted_cwe", "hamming",
                "families", "secret_sharing", "match", "timing_ms"]:
        assert key in rep
    assert set(rep["params"]) >= {"p", "e", "alpha", "t", "d", "regime", "a_index"}
    assert set(rep["constants"]) == {"kappa", "epsilon", "kappa2"}
    assert rep["length"] == {"computed": 90, "predicted": 90}
    path = tmp_path / "rep.json"
    path.write_text(out)
    code, again, _ = run(capsys, "report", str(path), "--format", "json")
    assert code == 0 and json.loads(again) == rep


def test_verify_csv_and_out_file(capsys, tmp_path):
    path = tmp_path / "ham.csv"
    code, out, _ = run(capsys, "verify", *EX1, "--format", "csv", "--out", str(path))
    assert code == 0 and out == ""
    rows = list(csv.reader(io.StringIO(path.read_text())))
    assert rows[0] == ["weight", "count"]
    assert rows[1:] == [["0", "1"], ["48", "360"], ["54", "80"], ["60", "288"]]


def test_exit_codes(capsys):
    code, _, err = run(capsys, "verify", "--p", "3", "--e", "8", "--alpha", "8", "--t", "2", "--a", "1")
    assert code == cli.EXIT_UNSUPPORTED and "Kloosterman" in err
    code, _, err = run(capsys, "verify", "--p", "3", "--e", "6", "--alpha", "3", "--t", "2")
    assert code == cli.EXIT_INVALID and "t|d" in err and "t=2 does not divide d=3" in err
    code, _, err = run(capsys, "verify", *EX1, "--budget", "100")
    assert code == cli.EXIT_BUDGET
    code, _, _ = run(capsys, "verify", *EX1, "--a", "9")
    assert code == cli.EXIT_INVALID


def test_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv(cli.BUDGET_ENV, "10")
    code, _, _ = run(capsys, "verify", *EX1)
    assert code == cli.EXIT_BUDGET
    code, _, _ = run(capsys, "verify", *EX1, "--budget", "100000")
    assert code == 0


def test_mismatch_report_exit(capsys, tmp_path):
    from fewweight import code_lab as cl
    from fewweight.field_tower import build_field

    rep = cl.verify(build_field(3, 6), cl.CodeParams(3, 6, 6, 2, 0), kappa=2).to_dict()
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(rep))
    code, out, _ = run(capsys, "report", str(path))
    assert code == cli.EXIT_MISMATCH and "MISMATCH" in out and "differing terms" in out


def test_allow_nonpaper(capsys):
    code, out, _ = run(capsys, "verify", "--p", "3", "--e", "6", "--alpha", "2", "--t", "2", "--allow-nonpaper")
    assert code == 0 and "not compared" in out and "NOTE" in out


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["gauss", "--p", "3", "--k", "2"], 3),
        (["salie", "--p", "3", "--t", "2", "--a", "1", "--b", "1"], -3),
        (["M", "--p", "3", "--e", "6", "--alpha", "6", "--t", "2", "--a", "1"], 81),
    ],
)
def test_sums_values(capsys, argv, expected):
    code, out, _ = run(capsys, "sums", *argv, "--format", "json")
    res = json.loads(out)
    assert code == 0 and res["equal"] is True
    assert res["brute"]["coeffs"][0] == expected and not any(res["brute"]["coeffs"][1:])


@pytest.mark.parametrize("name", ["weil-s", "weil-s2", "L", "N"])
def test_sums_other(capsys, name):
    code, out, _ = run(capsys, "sums", name, *EX1, "--a", "2", "--b", "5", "--u", "1")
    assert code == 0 and "equal" in out


def test_sums_kloosterman(capsys):
    code, out, _ = run(capsys, "sums", "kloosterman", "--p", "3", "--t", "2", "--a", "1", "--b", "2")
    assert code == 0 and "unavailable" in out
    code, _, _ = run(capsys, "sums", "kloosterman", "--p", "3", "--t", "2", "--closed")
    assert code == cli.EXIT_UNSUPPORTED


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--p", "3", "--e", "1-8", "--format", "json")
    rows = json.loads(out)
    assert code == 0
    keys = {(r["p"], r["e"], r["alpha"], r["t"], r["a_index"]) for r in rows}
    assert {(3, 6, 6, 2, 0), (3, 6, 6, 2, 1), (3, 8, 8, 2, 0), (3, 6, 6, 3, 0)} <= keys
    assert all(r["match"] for r in rows)


def test_scan_empty_and_csv(capsys):
    code, out, _ = run(capsys, "scan", "--p", "3", "--e", "1-3")
    assert code == 0 and "0 rows" in out
    code, out, _ = run(capsys, "scan", "--p", "3", "--e", "6", "--t", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[1][:5] == ["3", "6", "6", "3", "0"] and rows[1][-1] == "match"


def test_scan_budget_aggregates(capsys):
    code, out, _ = run(capsys, "scan", "--p", "3", "--e", "6-8", "--budget", "100000")
    assert code == cli.EXIT_BUDGET and "budget" in out


def test_deterministic_exit_for_identical_runs(capsys):
    a = run(capsys, "verify", *EX1, "--format", "json")
    b = run(capsys, "verify", *EX1, "--format", "json")
    ra, rb = json.loads(a[1]), json.loads(b[1])
    ra.pop("timing_ms"), rb.pop("timing_ms")
    assert a[0] == b[0] and ra == rb
