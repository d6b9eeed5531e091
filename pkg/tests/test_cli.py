import io
import json
import subprocess
import sys

import numpy as np
import pytest

from pauliscope import PauliRep, bell_state, random_state, to_matrix, werner_state
from pauliscope.cli import (CSV_HEADER, ParseError, ScanRow, emit_scan, format_scan, parse_state,
                            run, run_scan, state_document)

BELL = {"pauli": {"s": [0, 0, 0], "t": [0, 0, 0], "C": [[-1, 0, 0], [0, -1, 0], [0, 0, -1]]}}


def _run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def _doc(tmp_path, doc, name="state.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_parse_state_examples():
    assert parse_state(json.dumps(BELL)).allclose(bell_state(), 0)
    chaos = {"matrix": [[[0.25 if i == j else 0, 0] for j in range(4)] for i in range(4)]}
    p = parse_state(json.dumps(chaos))
    assert np.allclose(p.c, 0) and np.allclose(p.s, 0)
    over = {"pauli": {"s": [2, 0, 0], "t": [0, 0, 0], "C": [[0] * 3] * 3}}
    assert parse_state(json.dumps(over)).s[0] == 2


@pytest.mark.parametrize("text, fragment", [
    ('{"pauli": {"s": [0,0,0], "t": [0,0,0]}}', "missing field(s) C"),
    ('{"pauli": {"s": [0,0], "t": [0,0,0], "C": [[0,0,0],[0,0,0],[0,0,0]]}}', "pauli.s"),
    ('{"matrix": [[1]]}', "expected 4 rows"),
    ('{"matrix": [[1],[1],[1],[1]]}', "matrix[0]"),
    ('{"matrix": [], "pauli": {}}', "exactly one"),
    ('{"pauli": \n {"s": [0,0,0],}', "line 2"),
    ('[1, 2]', "object"),
])
def test_parse_errors_carry_locations(text, fragment):
    with pytest.raises(ParseError) as err:
        parse_state(text)
    assert fragment in str(err.value)


def test_classify_bell(tmp_path, capsys):
    code, out, _ = _run(["classify", "--input", _doc(tmp_path, BELL)], capsys)
    d = json.loads(out)
    assert code == 0 and d["class"] == "B" and d["sign"] == "-" and d["c"] == [1, 1, 1]


def test_check_werner(tmp_path, capsys):
    doc = {"pauli": {"s": [0, 0, 0], "t": [0, 0, 0], "C": (-0.5 * np.eye(3)).tolist()}}
    code, out, _ = _run(["check", "--input", _doc(tmp_path, doc)], capsys)
    d = json.loads(out)
    assert code == 0 and d["positive"] is True and d["separable"] is False
    assert d["separability"]["min_eigenvalue"] == pytest.approx(-0.125)


def test_non_positive_advisory_vs_strict(tmp_path, capsys):
    doc = {"pauli": {"s": [2, 0, 0], "t": [0, 0, 0], "C": [[0] * 3] * 3}}
    path = _doc(tmp_path, doc)
    code, out, _ = _run(["check", "--input", path], capsys)
    assert code == 0 and json.loads(out)["positive"] is False
    code, out, err = _run(["check", "--input", path, "--strict"], capsys)
    assert code == 1 and out == "" and "not a positive state" in err
    code, out, _ = _run(["classify", "--input", path], capsys)
    assert code == 0 and "advisory" in json.loads(out)


def test_invalid_matrix_exit_1(tmp_path, capsys):
    m = [[[0.3 if i == j else 0, 0] for j in range(4)] for i in range(4)]
    code, out, err = _run(["check", "--input", _doc(tmp_path, {"matrix": m})], capsys)
    assert code == 1 and out == "" and "defect" in err


def test_parse_error_exit_2(tmp_path, capsys, monkeypatch):
    code, out, err = _run(["check"], capsys, stdin="{not json", monkeypatch=monkeypatch)
    assert code == 2 and out == "" and "line 1" in err
    code, _, _ = _run(["check", "--format", "matrix", "--input", _doc(tmp_path, BELL)], capsys)
    assert code == 2
    code, _, _ = _run(["nonsense"], capsys)
    assert code == 2


def test_io_error_exit_4(tmp_path, capsys):
    code, _, _ = _run(["check", "--input", str(tmp_path / "missing.json")], capsys)
    assert code == 4
    code, _, _ = _run(["check", "--input", _doc(tmp_path, BELL), "--out", str(tmp_path / "no" / "x.json")], capsys)
    assert code == 4


def test_stdin_and_label(capsys, monkeypatch):
    doc = dict(BELL, label="singlet")
    code, out, _ = _run(["concurrence", "--input", "-"], capsys, stdin=json.dumps(doc), monkeypatch=monkeypatch)
    d = json.loads(out)
    assert code == 0 and d["label"] == "singlet" and d["value"] == pytest.approx(1)


def test_invariants_command(tmp_path, capsys):
    code, out, _ = _run(["invariants", "--input", _doc(tmp_path, BELL)], capsys)
    d = json.loads(out)
    assert (d["A2"], d["A1"], d["A0"]) == pytest.approx((6, 8, 3))
    assert d["roots"] == pytest.approx([-3, 1, 1, 1])
    assert d["local"]["det_c"] == pytest.approx(-1)
    assert (d["a"], d["b"]) == pytest.approx((0, 0), abs=1e-12)


def test_lsd_command(tmp_path, capsys):
    doc = {"pauli": {"s": [0, 0, 0], "t": [0, 0, 0], "C": (-0.6 * np.eye(3)).tolist()}}
    code, out, _ = _run(["lsd", "--input", _doc(tmp_path, doc), "--restarts", "4"], capsys)
    d = json.loads(out)
    assert code == 0 and d["S"] == pytest.approx(0.6, abs=1e-6)
    assert d["certificates"]["reconstruction_error"] <= 1e-8


def test_lsd_non_convergence_exit_3(tmp_path, capsys, monkeypatch):
    import pauliscope.cli as cli
    real = cli.optimal_lsd

    def stuck(*args, **kwargs):
        r = real(*args, **kwargs)
        from dataclasses import replace
        return replace(r, converged=False)

    monkeypatch.setattr(cli, "optimal_lsd", stuck)
    code, out, _ = _run(["lsd", "--input", _doc(tmp_path, BELL)], capsys)
    assert code == 3 and out == ""


def test_convert_round_trip(tmp_path, capsys):
    p = random_state(8)
    path = _doc(tmp_path, state_document(p, "pauli"))
    code, out, _ = _run(["convert", "--input", path], capsys)
    assert code == 0 and "matrix" in json.loads(out)
    back_path = _doc(tmp_path, json.loads(out), "m.json")
    code, out, _ = _run(["convert", "--input", back_path], capsys)
    q = parse_state(out)
    assert q.max_abs_diff(p) <= 1e-12
    m = np.array([[complex(*e) for e in row] for row in state_document(p, "matrix")["matrix"]])
    assert np.array_equal(m, to_matrix(p))


def test_csv_emit_for_reports(tmp_path, capsys):
    code, out, _ = _run(["check", "--input", _doc(tmp_path, BELL), "--emit", "csv"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "key,value" and "positive,true" in lines


def test_tol_from_environment(tmp_path, capsys, monkeypatch):
    m = np.eye(4, dtype=complex) / 4
    m[0, 0] += 1e-7
    doc = {"matrix": [[[v.real, v.imag] for v in row] for row in m]}
    path = _doc(tmp_path, doc)
    assert _run(["check", "--input", path], capsys)[0] == 1
    monkeypatch.setenv("PAULISCOPE_TOL", "1e-6")
    assert _run(["check", "--input", path], capsys)[0] == 0
    monkeypatch.setenv("PAULISCOPE_TOL", "abc")
    assert _run(["check", "--input", path], capsys)[0] == 2


def test_emit_scan_shapes(tmp_path):
    path = tmp_path / "empty.csv"
    emit_scan([], str(path))
    assert path.read_text() == ",".join(CSV_HEADER) + "\n"
    rows = [ScanRow(i, 10 + i, "F", "+", 0.1 * i, 0.2, 0.1 * i + 0.2, False, (1.0, 2.0, 3.0)) for i in range(3)]
    emit_scan(rows, str(path))
    lines = path.read_text().splitlines()
    assert len(lines) == 4 and [ln.split(",")[0] for ln in lines[1:]] == ["0", "1", "2"]
    assert lines[2].split(",")[4] == "0.10000000000000001"
    data = json.loads(format_scan(rows, "json"))
    assert [d["index"] for d in data] == [0, 1, 2]


def test_scan_flags_violations(tmp_path, capsys, monkeypatch):
    import pauliscope.cli as cli
    fake = [ScanRow(0, 1, "F", "+", 0.9, 0.2, 1.1, False, (1.0, 1.0, 1.0))]
    monkeypatch.setattr(cli, "run_scan", lambda *a, **k: fake)
    code, out, err = _run(["scan", "--samples", "1"], capsys)
    assert code == 0 and "violations: 1" in err and "index=0" in err


def test_scan_deterministic_and_job_invariant(tmp_path, capsys):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    c = tmp_path / "c.csv"
    args = ["scan", "--samples", "4", "--seed", "7", "--restarts", "4"]
    assert _run(args + ["--out", str(a)], capsys)[0] == 0
    assert _run(args + ["--out", str(b)], capsys)[0] == 0
    assert _run(args + ["--out", str(c), "--jobs", "2"], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()
    rows = run_scan(4, 7, restarts=4)
    assert [r.index for r in rows] == list(range(4))
    assert a.read_text() == format_scan(rows)


def test_console_entry_point(tmp_path):
    path = _doc(tmp_path, BELL)
    res = subprocess.run([sys.executable, "-m", "pauliscope", "classify", "--input", path],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["class"] == "B"


def test_pauli_document_round_trip_bit_exact():
    p = PauliRep(*[np.random.default_rng(1).uniform(-0.3, 0.3, n) for n in (3, 3)],
                 np.random.default_rng(2).uniform(-0.3, 0.3, (3, 3)))
    q = parse_state(json.dumps(state_document(p)))
    assert q.max_abs_diff(p) == 0
    assert werner_state(0.2).allclose(parse_state(json.dumps(state_document(werner_state(0.2)))), 0)
