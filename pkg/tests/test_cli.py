import csv
import io
import json
import subprocess
import sys

import pytest

from cubicirr.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def one(out):
    return json.loads(out.strip().splitlines()[0])


def test_count_brute(capsys):
    code, out, _ = run(capsys, "count", "--p", "2", "--k", "1", "--g", "x^3", "--h", "1", "--n", "2", "--method", "brute")
    assert code == 0
    row = one(out)
    assert row["value"] == 1 and row["method"] == "brute" and row["q"] == 2
    assert "breakdown" not in row


def test_count_inversion_has_breakdown(capsys):
    code, out, _ = run(capsys, "count", "--p", "7", "--g", "x^3", "--n", "2", "--method", "inversion")
    row = one(out)
    assert code == 0 and row["value"] == 14
    assert set(row["breakdown"]) == {"A", "B", "C", "D", "N", "ubar"}
    assert row["breakdown"]["ubar"] == 32


def test_count_rejects_noncoprime(capsys):
    code, _, err = run(capsys, "count", "--p", "2", "--g", "x^2", "--h", "x", "--n", "2")
    assert code == 2 and "not coprime" in err


def test_bad_field_and_degree(capsys):
    assert run(capsys, "count", "--p", "4", "--g", "x^3", "--n", "2")[0] == 2
    assert run(capsys, "count", "--p", "5", "--g", "x^3", "--n", "1")[0] == 2


def test_limit_exit_code(capsys):
    code, _, err = run(capsys, "--limit", "50", "count", "--p", "7", "--g", "x^3", "--n", "3")
    assert code == 3 and "limit" in err


def test_formula_records(capsys):
    row = one(run(capsys, "formula", "--p", "5", "--g", "x^3", "--n", "2")[1])
    assert row["kind"] == "exact" and row["value"] == 8 and row["class"] == "Cube"
    row = one(run(capsys, "formula", "--p", "5", "--g", "x^3+2*x", "--h", "x^2+1", "--n", "2")[1])
    assert row["kind"] == "bound" and "center" in row and "radius" in row and "value" not in row
    row = one(run(capsys, "formula", "--p", "3", "--g", "x^3", "--n", "2")[1])
    assert row["value"] == 0 and row["reason"] == "inseparable"
    row = one(run(capsys, "formula", "--p", "5", "--g", "x^3", "--n", "3")[1])
    assert row["kind"] == "empty-by-permutation" and row["reason"] == "permutation-empty"


def test_classify(capsys):
    row = one(run(capsys, "classify", "--p", "7", "--g", "x^3-3*x")[1])
    assert row["class"] == "ThreeRamSquare"
    assert len(row["params"]["A"]) == 4 and len(row["params"]["B"]) == 4
    row = one(run(capsys, "classify", "--p", "2", "--k", "2", "--g", "x^3+3", "--h", "x")[1])
    assert row["class"] == "C2_iv" and row["params"]["param"] == 2


def test_tsr(capsys):
    assert one(run(capsys, "tsr", "--p", "2", "--m", "2")[1])["value"] == 4
    assert one(run(capsys, "tsr", "--p", "3", "--m", "2", "--method", "sum")[1])["value"] == 66
    row = one(run(capsys, "tsr", "--p", "5", "--m", "2", "--method", "both")[1])
    assert row["agree"] is True and row["params"]["formula"] == row["params"]["sum"]


def test_sweep_f5(capsys):
    code, out, _ = run(capsys, "sweep", "--p", "5", "--n-range", "2..4", "--forms", "all-canonical", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 12
    assert all(r["agree"] == "True" for r in rows)


def test_formats_render_same_data(capsys):
    args = ["count", "--p", "7", "--g", "x^3", "--n", "2"]
    j = one(run(capsys, "--format", "json", *args)[1])
    c = next(csv.DictReader(io.StringIO(run(capsys, "--format", "csv", *args)[1])))
    t = run(capsys, *args, "--format", "table")[1].splitlines()
    assert c["value"] == str(j["value"]) == "14"
    assert c["breakdown.N"] == str(j["breakdown"]["N"])
    header, body = t[0].split(), t[1].split()
    assert dict(zip(header, body))["value"] == "14"


def test_json_keys_are_schema_keys(capsys):
    allowed = {"p", "k", "q", "g", "h", "n", "method", "value", "kind", "center", "radius", "breakdown",
               "class", "params", "elapsed_ms", "seed", "reason", "agree"}
    for argv in (["count", "--p", "3", "--g", "x^3+x^2", "--n", "2"],
                 ["formula", "--p", "7", "--g", "x^3+2*x", "--h", "x^2+1", "--n", "2"],
                 ["tsr", "--p", "2", "--k", "2", "--m", "2", "--method", "both"]):
        row = one(run(capsys, *argv)[1])
        assert set(row) <= allowed


def test_out_file(tmp_path, capsys):
    path = tmp_path / "o.json"
    code, out, _ = run(capsys, "--out", str(path), "count", "--p", "2", "--g", "x^3", "--n", "2")
    assert code == 0 and path.read_text() == out


def _strip_timing(text):
    rows = [json.loads(line) for line in text.splitlines()]
    for r in rows:
        r.pop("elapsed_ms", None)
    return json.dumps(rows)


def test_verify_tsr_suite_is_deterministic(capsys):
    a = run(capsys, "verify", "--suite", "tsr", "--seed", "4")
    b = run(capsys, "verify", "--suite", "tsr", "--seed", "4")
    assert a[0] == b[0] == 0
    assert _strip_timing(a[1]) == _strip_timing(b[1])
    assert "tsr: 5 passed, 0 failed" in a[2]


def test_verify_limit(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "identities", "--limit", "10")
    assert code == 3


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cubicirr.cli", "count", "--p", "2", "--g", "x^3", "--n", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == 1


def test_unknown_subcommand_exits_nonzero(capsys):
    with pytest.raises(SystemExit) as e:
        main(["nope"])
    assert e.value.code != 0
