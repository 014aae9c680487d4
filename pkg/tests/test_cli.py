from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from deepcom.cli import AnalysisReport, main

from conftest import DATA, GOLDEN


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_v4(capsys):
    code, out, _ = run(capsys, "analyze", "V4")
    assert code == 0
    assert "kappa: 1\n" in out
    assert "schur multiplier M: [2]" in out
    assert "edges: EPow 3, DCom 3, Com 6" in out
    assert "classification: EPow = DCom ⊊ Com" in out


def test_analyze_json_round_trip(capsys):
    code, out, _ = run(capsys, "analyze", "D8", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["kappa"] == "5/8" and doc["schur"] == [2] and doc["bogomolov"] == []
    assert doc["edges"]["epow"] <= doc["edges"]["dcom"] <= doc["edges"]["com"]
    report = AnalysisReport.from_dict(doc)
    assert report.to_json() == out


def test_analyze_trivial_group(capsys):
    code, out, _ = run(capsys, "analyze", "C1", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["edges"] == {"epow": 0, "dcom": 0, "com": 0}
    assert doc["order"] == 1


def test_graph_outputs(capsys):
    code, out, _ = run(capsys, "graph", "V4", "--kind", "dcom", "--format", "edgelist")
    assert code == 0 and out == "0 1\n0 2\n0 3\n"
    code, out, _ = run(capsys, "graph", "C6", "--kind", "epow", "--format", "json")
    assert len(json.loads(out)["edges"]) == 15
    code, out, _ = run(capsys, "graph", "C2xC4", "--kind", "dcom", "--format", "dot")
    assert out == (GOLDEN / "c2xc4_dcom.dot").read_text()


def test_graph_relcom(capsys, tmp_path):
    code, out, _ = run(capsys, "graph", "V4", "--kind", "relcom", "--extension", "q8_over_v4",
                       "--format", "edgelist")
    assert code == 0 and out == "0 1\n0 2\n0 3\n"
    code, out, _ = run(capsys, "graph", "D8", "--kind", "relcom", "--format", "edgelist",
                       "--extension", str(DATA / "d16_over_d8.json"))
    assert code == 0
    code2, dcom, _ = run(capsys, "graph", "D8", "--kind", "dcom", "--format", "edgelist")
    assert out == dcom
    code, _, err = run(capsys, "graph", "V4", "--kind", "relcom")
    assert code == 1 and "--extension" in err
    code, _, _ = run(capsys, "graph", "V4", "--kind", "relcom", "--extension", str(tmp_path / "x.json"))
    assert code == 1


def test_graph_out_file(capsys, tmp_path):
    target = tmp_path / "v4.dot"
    code, out, _ = run(capsys, "graph", "V4", "--out", str(target))
    assert code == 0 and out == "" and target.read_text().startswith("graph ")
    code, _, _ = run(capsys, "graph", "V4", "--out", str(tmp_path / "missing" / "x.dot"))
    assert code == 1


def test_multiplier(capsys):
    code, out, _ = run(capsys, "multiplier", "D8")
    assert code == 0
    assert "M = [2]" in out and "B0 = []" in out and "|M0| = 2" in out
    code, out, _ = run(capsys, "multiplier", "C2xC2xC2", "--json")
    doc = json.loads(out)
    assert doc["schur"] == [2, 2, 2] and doc["m0_order"] == 8


def test_census_csv(capsys):
    code, out, _ = run(capsys, "census", "C2", "C3", "C4", "C2xC2", "--csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["name", "order", "kappa", "schur", "bogomolov", "class"]
    assert len(rows) == 5
    assert rows[4] == ["C2xC2", "4", "1", "[2]", "[]", "EPow = DCom ⊊ Com"]


def test_census_threads_do_not_change_output(capsys):
    specs = ["D8", "Q8", "C2xC4", "A4", "S3", "C3xC3"]
    _, one, _ = run(capsys, "census", *specs, "--csv")
    _, four, _ = run(capsys, "census", *specs, "--csv", "--threads", "4")
    assert one == four


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "C2xC4")
    assert code == 0 and out == "OK\n"
    code, out, _ = run(capsys, "verify", "A4", "-v")
    assert code == 0 and "oracle: ok" in out and out.endswith("OK\n")


@pytest.mark.parametrize("argv,expected", [
    (["analyze", "Q6"], 1),
    (["analyze", "C2y"], 1),
    (["analyze", "table:/nonexistent.json"], 1),
    (["bogus"], 1),
    ([], 1),
    (["graph", "V4", "--format", "svg"], 1),
    (["analyze", "S8"], 2),
    (["analyze", "C2xC4", "--max-order", "4"], 2),
    (["multiplier", "C66"], 2),
    (["multiplier", "C12", "--cohomology-cap", "8"], 2),
    (["verify", "C13"], 2),
])
def test_exit_codes(capsys, argv, expected):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == expected


def test_theorem_violation_exit_code(capsys, monkeypatch):
    from deepcom import cli
    from deepcom.errors import TheoremViolation

    def broken(*args, **kwargs):
        raise TheoremViolation("simulated")

    monkeypatch.setattr(cli, "classify", broken)
    code, _, err = run(capsys, "analyze", "V4")
    assert code == 3 and "simulated" in err


def test_byte_identical_runs(capsys):
    outs = {run(capsys, "analyze", "SD16", "--json")[1] for _ in range(2)}
    assert len(outs) == 1


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "deepcom.cli", "graph", "V4", "--format", "edgelist"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "0 1\n0 2\n0 3\n"
    proc = subprocess.run([sys.executable, "-m", "deepcom.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "table:" in proc.stdout
