import json
import os
from pathlib import Path

import pytest

from conftest import run_cli
from gentle_lab import cli
from gentle_lab.corpus import NAMES, corpus_text

GOLDEN = Path(__file__).parent / "golden" / "cli"
UPDATE = bool(os.environ.get("GENTLE_LAB_UPDATE_GOLDEN"))

STRING = {"e1": "e:4", "e2": "a", "e3": "a", "kronecker": "a b^-1"}
HOMOTOPY = {"e1": "a41.a12 a52^-1", "e2": "a b", "e3": "a", "kronecker": "a b^-1"}
KEEP = {"e1": "1,2,3", "e2": "1,2", "e3": "1", "kronecker": "1,2"}

COMMANDS = {
    "validate": [],
    "info": [],
    "strings": ["--max-len", "3"],
    "bands": ["--max-len", "4"],
    "dims": ["--string", STRING],
    "resolve": ["--string", STRING, "--cap", "8"],
    "cma": [],
    "quotient": [],
    "quotient-bar": ["--side", "bar"],
    "corner": ["--keep", KEEP],
    "recollement-verify": [],
    "hw": ["--homotopy", HOMOTOPY],
    "kg-dim": [],
    "check-quasi-tilted": [],
    "check-theorem-main": [],
    "check-theorem-main2": ["--max-letters", "4"],
    "check-corollary-main3": [],
}


def argv_for(key, name, path, report):
    words = key.split("-", 1) if key.startswith("check-") else [key.replace("-bar", "")]
    args = []
    for x in COMMANDS[key]:
        args.append(x[name] if isinstance(x, dict) else x)
    return words + ["--input", str(path), "--report", str(report)] + args


def check_golden(path, text):
    if UPDATE or not path.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    assert text == path.read_text()


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("key", list(COMMANDS))
def test_golden(tmp_path, name, key):
    src = tmp_path / f"{name}.quiver"
    src.write_text(corpus_text(name))
    report = tmp_path / "report.json"
    code, out = run_cli(argv_for(key, name, src, report))
    check_golden(GOLDEN / f"{name}__{key}.txt", f"exit: {code}\n" + out)
    if code == 0:
        doc = json.loads(report.read_text())
        assert doc["tool_version"] == cli.__version__
        assert doc["input_digest"].startswith("sha256:")
        check_golden(GOLDEN / f"{name}__{key}.json", report.read_text())


def test_report_has_no_floats(tmp_path):
    report = tmp_path / "r.json"
    src = tmp_path / "e1.quiver"
    src.write_text(corpus_text("e1"))
    assert run_cli(["info", "--input", str(src), "--report", str(report)])[0] == 0

    def walk(x):
        assert not isinstance(x, float)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)

    doc = json.loads(report.read_text())
    walk(doc)
    assert doc["result"]["global_dimension"] == "inf"
    assert doc["result"]["finitistic_dimension"] == 2


def test_info_e1_text(tmp_path):
    code, out = run_cli(["info"], stdin_text=corpus_text("e1"))
    assert code == 0
    assert "forbidden cycles: 2" in out and "gl.dim: inf" in out and "fin.dim: 2" in out


def test_dims_e4():
    code, out = run_cli(["dims", "--string", "e:4"], stdin_text=corpus_text("e1"))
    assert code == 0 and "pd: 1  id: 1" in out


def test_qt_criterion_e1():
    code, out = run_cli(["check", "theorem-main"], stdin_text=corpus_text("e1"))
    assert code == 0 and "agree: True" in out


def test_deterministic_reports(tmp_path):
    outs = []
    for i in range(2):
        r = tmp_path / f"r{i}.json"
        run_cli(["check", "theorem-main2", "--report", str(r)], stdin_text=corpus_text("e1"))
        outs.append(r.read_bytes())
    assert outs[0] == outs[1]


@pytest.mark.parametrize("argv,stdin", [
    (["info", "--bogus"], "vertices: 1\n"),
    (["info"], "vertices: 1\narrow a: 1 -> 2\n"),
    (["info", "--input", "/nonexistent/file.quiver"], ""),
    (["frobnicate"], ""),
    (["info"], "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 1 -> 3\narrow c: 1 -> 4\n"),
    (["dims", "--string", "zz"], corpus_text("e1")),
    (["dims"], corpus_text("e1")),
    (["info"], "vertices: 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\n"),
])
def test_input_errors_exit_one(argv, stdin, capsys):
    code, _ = run_cli(argv, stdin_text=stdin)
    assert code == 1
    assert "gentle-lab: error:" in capsys.readouterr().err


def test_validate_reports_violations():
    code, out = run_cli(["validate"], stdin_text="vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 1 -> 3\n"
                                                 "arrow c: 1 -> 4\n")
    assert code == 0 and "gentle: no" in out and "G1" in out


def test_oracle_mismatch_exits_two(monkeypatch, tmp_path):
    monkeypatch.setattr(cli, "proj_dim_string", lambda bq, s: 5)
    report = tmp_path / "r.json"
    code, out = run_cli(["dims", "--string", "e:4", "--report", str(report)], stdin_text=corpus_text("e1"))
    assert code == 2
    assert "formula 5 but oracle 1" in out and "e:4" in out
    assert json.loads(report.read_text())["result"]["error"] == "internal"


def test_criterion_disagreement_exits_two(monkeypatch):
    from gentle_lab.classify import Verdict
    monkeypatch.setattr("gentle_lab.classify.is_quasi_tilted", lambda bq: Verdict(False))
    code, out = run_cli(["check", "theorem-main"], stdin_text=corpus_text("e1"))
    assert code == 2 and "internal check failed" in out


def test_generate(tmp_path):
    code, out = run_cli(["generate", "--seed", "1", "--shape", "tree", "--min-vertices", "5",
                         "--max-vertices", "5"])
    assert code == 0
    assert out == (Path(__file__).parent / "golden" / "generate_seed1_tree5.quiver").read_text()
    code, _ = run_cli(["generate", "--min-vertices", "1", "--max-vertices", "1", "--arrow-density", "5"])
    assert code == 1


def test_main_entry(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
