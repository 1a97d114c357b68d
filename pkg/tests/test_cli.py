import json
import os
from pathlib import Path

import pytest

from cleft.cli import main

FIXTURES = Path(__file__).parent / "fixtures"

GOLDEN = {
    "run_p2n1_sym_axioms.json": ["run", "--p", "2", "--n", "1", "--lambda", "sym", "--suite", "axioms"],
    "catalog_p2.json": ["catalog", "--p", "2"],
    "resolve_p3n1_gamma.json": ["resolve", "--p", "3", "--n", "1", "--suite", "gamma"],
    "torsor_xy.json": ["torsor", "--example"],
}


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_output(capsys, name):
    code, out = run(capsys, GOLDEN[name])
    path = FIXTURES / name
    if os.environ.get("CLEFT_UPDATE_GOLDEN") == "1":
        FIXTURES.mkdir(exist_ok=True)
        path.write_text(out)
    assert code == 0
    assert out == path.read_text()


def test_report_shape(capsys):
    code, out = run(capsys, ["run", "--p", "2", "--n", "1", "--lambda", "0", "--suite", "kummer"])
    doc = json.loads(out)
    assert code == 0 and doc["schemaVersion"] == 1
    s = doc["summary"]
    assert s["total"] == s["pass"] + s["fail"] + s["evidence"] == len(doc["entries"])
    for e in doc["entries"]:
        assert set(e) <= {"checkId", "paperRef", "verdict", "witness"}
        assert e["verdict"] in ("pass", "fail", "evidence")


def test_timings_add_elapsed(capsys):
    _, out = run(capsys, ["run", "--p", "2", "--n", "1", "--lambda", "0", "--suite", "kummer", "--timings"])
    assert all("elapsed" in e for e in json.loads(out)["entries"])


def test_determinism(capsys):
    argv = ["run", "--p", "3", "--n", "1", "--lambda", "sym", "--suite", "mu,torsor"]
    assert run(capsys, argv) == run(capsys, argv)


def test_threads_do_not_change_output(capsys, monkeypatch):
    argv = ["run", "--p", "2", "--n", "1", "--suite", "axioms,unitgroup"]
    serial = run(capsys, argv)
    monkeypatch.setenv("CLEFT_THREADS", "2")
    assert run(capsys, argv) == serial


def test_text_format(capsys):
    code, out = run(capsys, ["run", "--p", "3", "--lambda", "1", "--suite", "kummer", "--format", "text"])
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) > 1
    assert lines[-1].startswith("total")


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    assert main(["catalog", "--p", "2", "--scheme", "Mu", "--out", str(target)]) == 0
    assert json.loads(target.read_text())["format"] == "cleft.hopf"


@pytest.mark.parametrize("argv", [
    ["run", "--p", "7", "--n", "2"],
    ["run", "--p", "4"],
    ["run", "--p", "2", "--n", "4"],
    ["run", "--suite", "nope"],
    ["run", "--p", "2", "--lambda", "x"],
    ["catalog", "--p", "2", "--scheme", "Nope"],
])
def test_config_errors_exit_2(capsys, argv):
    assert main(argv) == 2
    assert capsys.readouterr().err


def test_failed_hypothesis_exits_1(capsys):
    code, out = run(capsys, ["torsor", "--p", "2", "--lambda", "1", "--a", "1", "--c", "1"])
    assert code == 1
    assert json.loads(out)["summary"]["fail"] >= 1


def test_custom_torsor(capsys):
    code, out = run(capsys, ["torsor", "--p", "3", "--lambda", "lam", "--a", "1", "--c", "lam"])
    doc = json.loads(out)
    assert code == 0
    assert any(e["checkId"].endswith("cleft-search") and e["witness"] == "CleftWitness(0)" for e in doc["entries"])
