from __future__ import annotations

import csv
import io
import json

import pytest

from smashcyc.cli import run
from smashcyc.exactmath import format_scalar
from smashcyc.presets import preset


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_surrogate_cylindrical_certification(capsys):
    code, out, _ = _run(capsys, "--input", "pareigis_surrogate(1)", "--computation",
                        "cylindrical-cert", "--p-max", "2", "--q-max", "2", "--quiet")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert doc["result"]["report"]["n_failed"] == 0


@pytest.fixture()
def corrupted_sweedler(tmp_path):
    m = preset("sweedler").rmap.matrix
    entries = [[r, c, format_scalar(2 * v if c == 3 else v)] for r, c, v in m.entries()]
    path = tmp_path / "bad_r.json"
    path.write_text(json.dumps({"R": entries, "name": "corrupted"}))
    return str(path)


def test_corrupted_r_override_fails_with_witness(capsys, corrupted_sweedler):
    code, out, _ = _run(capsys, "--input", "sweedler", "--computation", "axioms",
                        "--r-override", corrupted_sweedler, "--quiet")
    doc = json.loads(out)
    assert code == 1 and not doc["passed"]
    failed = [c for c in doc["result"]["report"]["checks"] if not c["passed"]]
    assert failed and all("witness" in c for c in failed)


def test_hc_of_k2(capsys):
    code, out, _ = _run(capsys, "--input", "cyclic_group(2)", "--computation", "hc",
                        "--n-max", "2", "--quiet")
    assert code == 0
    rows = json.loads(out)["result"]["tables"][0]["rows"]
    assert [r["dim"] for r in rows] == [2, 0, 2]
    assert not any(r["flagged"] for r in rows)


def test_json_is_byte_identical(capsys):
    argv = ("--input", "pareigis_surrogate(1)", "--computation", "spectral-rows", "--quiet")
    _, a, _ = _run(capsys, *argv)
    _, b, _ = _run(capsys, *argv)
    assert a == b


@pytest.mark.parametrize("argv,field", [
    (["--input", "no_such_algebra", "--computation", "hc"], "--input"),
    (["--input", "K2", "--computation", "hc", "--n-max", "0"], "--n-max"),
    (["--input", "taft(3)", "--computation", "hc"], "--field"),
    (["--input", "K2", "--computation", "hc", "--field", "quaternion"], "--field"),
    (["--input", "K2", "--computation", "coinvariants", "--coefficients", "periodic"],
     "--coefficients"),
    (["--input", "D", "--computation", "matched-pair-check"], "--input"),
])
def test_input_errors_name_the_field(capsys, argv, field):
    code, out, err = _run(capsys, *argv, "--quiet")
    assert code == 2 and out == ""
    assert err.startswith(f"smashcyc: error: {field}:")


def test_bad_json_file(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = _run(capsys, "--input", str(path), "--computation", "hc")
    assert code == 2 and "--input" in err


def test_algebra_json_input(capsys, tmp_path):
    path = tmp_path / "k2.json"
    path.write_text(json.dumps(preset("K2").algebra.to_json()))
    code, out, _ = _run(capsys, "--input", str(path), "--computation", "hh", "--quiet")
    assert code == 0
    assert [r["dim"] for r in json.loads(out)["result"]["tables"][0]["rows"]] == [2, 0, 0]


def test_cyclotomic_field_accepts_taft(capsys):
    code, out, _ = _run(capsys, "--input", "taft(3)", "--computation", "axioms",
                        "--field", "cyclotomic:3", "--n-max", "1", "--quiet")
    assert code == 0 and json.loads(out)["passed"]


def test_csv_and_text(capsys):
    _, out, _ = _run(capsys, "--input", "K2", "--computation", "hc", "--format", "csv", "--quiet")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["table", "n", "dim", "flagged"]
    assert [r[2] for r in rows[1:]] == ["2", "0", "2"]
    _, out, _ = _run(capsys, "--input", "pareigis_surrogate(1)", "--computation",
                     "spectral-cols", "--format", "csv", "--quiet")
    assert out.splitlines()[0] == "page,p,q,dim,rank"
    assert "identity,passed,context,witness" in out
    _, out, _ = _run(capsys, "--input", "K2", "--computation", "hc", "--format", "text", "--quiet")
    assert out.startswith("hc on K2: PASS")


def test_out_file_and_progress_on_stderr(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, err = _run(capsys, "--input", "K2", "--computation", "ez-check",
                          "--out", str(target))
    assert code == 0 and out == ""
    assert "smashcyc:" in err
    assert json.loads(target.read_text())["computation"] == "ez-check"


@pytest.mark.parametrize("computation", ["axioms", "coinvariants", "separable-collapse",
                                         "spectral-rows", "ez-check"])
def test_computations_pass_on_the_surrogate(capsys, computation):
    code, out, _ = _run(capsys, "--input", "pareigis_surrogate(1)", "--computation",
                        computation, "--quiet")
    assert code == 0, out


def test_matched_pair_check(capsys):
    code, out, _ = _run(capsys, "--input", "sweedler", "--computation", "matched-pair-check",
                        "--quiet")
    assert code == 0 and json.loads(out)["passed"]


def test_workers_do_not_change_output(capsys):
    argv = ("--input", "pareigis_surrogate(1)", "--computation", "hc", "--quiet")
    _, a, _ = _run(capsys, *argv)
    _, b, _ = _run(capsys, *argv, "--workers", "2")
    da, db = json.loads(a), json.loads(b)
    assert da["result"] == db["result"]
