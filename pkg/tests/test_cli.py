from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from rgt.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

SESSION = str(FIXTURES / "example1_session.json")
TWO_STAGE = str(FIXTURES / "example1_two_stage.json")
VOTE_SESSION = str(FIXTURES / "example2_vote.json")
MULTISTAGE = str(FIXTURES / "example3_multistage.json")
P4 = str(FIXTURES / "p4_conflict.json")
GRAPH = str(FIXTURES / "example1_graph.json")

SOLVE_TEXT = """\
polynomial: abd + c
a = (b·d + c)·a + (c)·¬a
b = (a·d + c)·b + (c)·¬b
c = (1)·c + (a·b·d)·¬c
d = (a·b + c)·d + (c)·¬d
branch 1:
  a = {β}
  b = {β}
  free choice (1 ⊇ c ⊇ 0)
  {α,β} ⊇ d ⊇ {β}
"""


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_text_output(capsys):
    code, out, err = run_cli(capsys, "solve", SESSION)
    assert code == 0
    assert err == ""
    assert out == SOLVE_TEXT


def test_solve_json_output(capsys):
    code, out, _ = run_cli(capsys, "solve", SESSION, "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["polynomial"] == "abd + c"
    branch = doc["branches"][0]
    assert branch["intervals"]["a"]["value"] == ["β"]
    assert branch["intervals"]["c"]["kind"] == "free"
    assert branch["intervals"]["d"] == {"kind": "range", "sup": "{α,β}", "inf": "{β}"}


def test_identical_invocations_are_byte_identical(capsys):
    _, first, _ = run_cli(capsys, "run", MULTISTAGE, "--json", "--trace")
    _, second, _ = run_cli(capsys, "run", MULTISTAGE, "--json", "--trace")
    assert first == second


def test_solve_bound_override_disables_enumeration(capsys, tmp_path):
    base = json.loads(Path(SESSION).read_text(encoding="utf-8"))
    interval_d = {"inf": ["β"], "sup": ["α", "β"]}
    free = {"inf": [], "sup": ["α", "β", "γ"]}
    doc = {
        "format_version": "1",
        "universe": base["universe"],
        "graph": base["graph"],
        "matrix": {
            "a": {"b": ["β"], "c": ["β"], "d": ["β"]},
            "b": {"a": ["β"], "c": ["β"], "d": ["β"]},
            "c": {"a": free, "b": free, "d": free},
            "d": {"a": interval_d, "b": interval_d, "c": interval_d},
        },
        "enumeration_bound": 4,
    }
    path = tmp_path / "setup.json"
    path.write_text(json.dumps(doc, ensure_ascii=False), encoding="utf-8")

    code, out, _ = run_cli(capsys, "solve", str(path), "--json")
    assert code == 0
    branch = json.loads(out)["branches"][0]
    assert branch["assignments"] == [{"d": ["β"]}, {"d": ["α", "β"]}]
    assert branch["intervals"]["a"] == {"kind": "range", "sup": "{β} + c", "inf": "c"}

    code, out, _ = run_cli(capsys, "solve", str(path), "--json", "--bound", "1")
    assert code == 0
    branch = json.loads(out)["branches"][0]
    assert branch["assignments"] == [{}]
    assert branch["intervals"]["a"] == {"kind": "range", "sup": "c + {β}·d", "inf": "c"}


def test_run_two_stage_report(capsys):
    code, out, _ = run_cli(capsys, "run", TWO_STAGE)
    assert code == 0
    assert "step 1: influence formation" in out
    assert "points of view: a = {β}; b = {β}; c = [0, 1]; d = [{β}, {α,β}]" in out
    assert "branch 1 under {d = {β}}, {d = {α,β}}:" in out
    assert "({β} + c) ⊇ a ⊇ c" in out
    assert "1 ⊇ c ⊇ {β}" in out


def test_run_multistage_report(capsys):
    code, out, _ = run_cli(capsys, "run", MULTISTAGE)
    assert code == 0
    assert "step 2: structure edit (vote): remove d -> adopted" in out
    assert "polynomial: ab + c" in out
    assert "step 3: final session" in out
    assert "({β} + c) ⊇ b ⊇ c" in out


def test_run_trace_includes_diagonal_forms(capsys):
    code, out, _ = run_cli(capsys, "run", TWO_STAGE, "--trace")
    assert code == 0
    assert "diagonal form (step 1):\n[a][b][d]\n[abd] + [c]\n[abd + c] = abd + c\n" in out
    code, out, _ = run_cli(capsys, "run", TWO_STAGE, "--trace", "--json")
    doc = json.loads(out)
    assert doc["trace"][0] == {
        "step": 1,
        "diagonal_form": "[a][b][d]\n[abd] + [c]\n[abd + c] = abd + c",
    }


def test_run_json_report_shape(capsys):
    code, out, _ = run_cli(capsys, "run", MULTISTAGE, "--json")
    assert code == 0
    doc = json.loads(out)
    assert [s["type"] for s in doc["stages"]] == ["influence", "structure", "final"]
    assert doc["final"]["equations"]["a"] == {"pos": "b + c", "neg": "c"}
    assert doc["final"]["equations"]["c"] == {"pos": "1", "neg": "a·b"}


def test_check_prints_polynomial(capsys):
    code, out, _ = run_cli(capsys, "check", GRAPH)
    assert (code, out) == (0, "abd + c\n")
    code, out, _ = run_cli(capsys, "check", SESSION)
    assert (code, out) == (0, "abd + c\n")
    code, out, _ = run_cli(capsys, "check", MULTISTAGE)
    assert (code, out) == (0, "abd + c\n")
    code, out, _ = run_cli(capsys, "check", GRAPH, "--json")
    assert json.loads(out) == {"polynomial": "abd + c"}


def test_check_not_decomposable_exits_3(capsys):
    code, out, err = run_cli(capsys, "check", P4)
    assert code == 3
    assert out == ""
    assert err.startswith("error[NotDecomposable]:")
    assert "\n" not in err.rstrip("\n")


def test_run_not_decomposable_exits_3(capsys):
    code, _, err = run_cli(capsys, "run", P4)
    assert code == 3
    assert err.startswith("error[NotDecomposable]:")


def test_export_dot(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "export-dot", GRAPH)
    assert code == 0
    assert out.startswith("graph group {\n")
    assert '  "a" -- "b" [style=solid];\n' in out
    assert '  "c" -- "d" [style=dashed];\n' in out
    target = tmp_path / "out.dot"
    code, stdout, _ = run_cli(capsys, "export-dot", GRAPH, "-o", str(target))
    assert code == 0
    assert stdout == ""
    assert target.read_text(encoding="utf-8") == out


def test_missing_file_exits_2(capsys):
    code, _, err = run_cli(capsys, "solve", "no_such_file.json")
    assert code == 2
    assert err.startswith("error[SchemaError]:")


def test_invalid_json_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    code, _, err = run_cli(capsys, "run", str(bad))
    assert code == 2
    assert err.startswith("error[SchemaError]:")


def test_schema_violation_exits_2(capsys, tmp_path):
    doc = json.loads(Path(SESSION).read_text(encoding="utf-8"))
    del doc["graph"]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(doc, ensure_ascii=False), encoding="utf-8")
    code, _, err = run_cli(capsys, "solve", str(broken))
    assert code == 2
    assert "error[SchemaError]" in err


def test_incomplete_matrix_exits_2(capsys, tmp_path):
    doc = json.loads(Path(SESSION).read_text(encoding="utf-8"))
    del doc["matrix"]["a"]["b"]
    broken = tmp_path / "incomplete.json"
    broken.write_text(json.dumps(doc, ensure_ascii=False), encoding="utf-8")
    code, _, err = run_cli(capsys, "solve", str(broken))
    assert code == 2
    assert err.startswith("error[MatrixIncomplete]:")
    assert "detail:" in err


def test_guard_blowup_exits_4(capsys, tmp_path):
    subjects = ["s1", "s2", "s3", "s4", "s5", "s6"]
    relations = [
        {"pair": [a, b], "relation": "alliance"}
        for i, a in enumerate(subjects)
        for b in subjects[i + 1 :]
    ]
    doc = {
        "format_version": "1",
        "universe": ["x"],
        "graph": {"subjects": subjects, "relations": relations},
        "matrix": {
            s: {t: "symbolic" for t in subjects if t != s} for s in subjects
        },
        "enumeration_bound": 4,
    }
    path = tmp_path / "wide.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = run_cli(capsys, "solve", str(path))
    assert code == 4
    assert err.startswith("error[NotSolvable]:")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rgt.cli", "check", GRAPH],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "abd + c\n"
