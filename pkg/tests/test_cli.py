import json
import subprocess
import sys

import pytest

from starring import VerificationReport
from starring.cli import main

Z6 = '{"kind":"ZMod","n":6}'
Z8 = '{"kind":"ZMod","n":8}'
M22 = '{"kind":"MatZp","p":2,"k":2}'
Q2 = '{"kind":"MatQi","k":2}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mp_prints_inverse(capsys):
    code, out, _ = run(capsys, "mp", "--ring", Z6, "--element", "2")
    assert code == 0 and out.splitlines()[0] == "2"
    assert "certificate" in out


def test_mp_does_not_exist(capsys):
    code, out, _ = run(capsys, "mp", "--ring", Z8, "--element", "2")
    assert code == 0 and out.splitlines()[0] == "does not exist"


def test_mp_json_and_oracle(capsys):
    code, out, _ = run(capsys, "mp", "--ring", Q2, "--element", "[[1,1],[0,0]]", "--json")
    data = json.loads(out)
    assert code == 0 and data["exists"] and data["value"] == [["1/2", "0"], ["1/2", "0"]]
    code, out, _ = run(capsys, "mp", "--ring", Z8, "--element", "6", "--oracle", "--json")
    names = [n for n, _ in json.loads(out)["certificate"]]
    assert "oracle: no b satisfies the Penrose equations" in names


def test_verify_sweep(capsys):
    code, out, _ = run(capsys, "verify", "--ring", Z8, "--theorem", "T3.1",
                       "--max-n", "2", "--oracle")
    assert code == 0 and "counterexamples: 0" in out


def test_verify_json_round_trips(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--ring", M22, "--theorem", "T3.4", "--max-n", "2",
                     "--json", "--out", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    rep = VerificationReport.from_json(data)
    assert rep.elements_scanned == 16 and rep.passed
    assert json.loads(rep.dumps()) == data


def test_verify_reports_are_identical_across_workers(capsys):
    outs = []
    for workers in ("1", "3"):
        code, out, _ = run(capsys, "verify", "--ring", '{"kind":"ZMod","n":12}', "--theorem",
                           "T3.3", "--json", "--workers", workers)
        assert code == 0
        data = json.loads(out)
        data.pop("elapsed_ms")
        outs.append(json.dumps(data, sort_keys=True))
    assert outs[0] == outs[1]


def test_ring_from_file(capsys, tmp_path):
    path = tmp_path / "ring.json"
    path.write_text(Z6)
    code, out, _ = run(capsys, "validate-ring", "--ring", f"@{path}")
    assert code == 0 and "36 pairs" in out


def test_other_verbs(capsys):
    code, out, _ = run(capsys, "classify", "--ring", Z6, "--element", "3", "--json")
    flags = json.loads(out)["flags"]
    assert code == 0 and flags["projection"] and not flags["unit"]
    code, out, _ = run(capsys, "ginv", "--ring", Q2, "--element", "[[0,1],[0,0]]", "--json")
    data = json.loads(out)
    assert code == 0 and not data["group"]["exists"] and data["mp"]["exists"]
    code, out, _ = run(capsys, "ginv", "--ring", Z6, "--element", "2", "--kind", "13")
    assert code == 0 and out.startswith("{1,3}: 2")
    code, out, _ = run(capsys, "decompose", "--ring", Z8, "--element", "2", "--variant", "3")
    assert code == 0 and "fails" in out
    code, out, _ = run(capsys, "decompose", "--ring", Z6, "--element", "2", "--json")
    rows = json.loads(out)["decompositions"]
    assert code == 0 and all(r["holds"] for r in rows)


@pytest.mark.parametrize("argv", [
    ["mp", "--ring", '{"kind":"MatZp","p":4,"k":2}', "--element", "[[1,0],[0,1]]"],
    ["mp", "--ring", "{not json", "--element", "1"],
    ["mp", "--ring", M22, "--element", "[[1,0]]"],
    ["mp", "--ring", Z6],
    ["verify", "--ring", Z6, "--theorem", "T7.7"],
    ["verify", "--ring", Q2, "--theorem", "T3.1"],
    ["decompose", "--ring", Q2, "--element", "[[1,0],[0,1]]"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_parse_error_names_field(capsys):
    code, _, err = run(capsys, "mp", "--ring", M22, "--element", '[[1,0],[0,"x"]]')
    assert code == 2 and "row 1, column 1" in err


def test_failed_validation_exits_1(capsys, monkeypatch):
    from starring import cli
    from starring.predicates import ValidationReport

    def broken(ring, budget):
        return ValidationReport(ring, False, 1, True, None, {"law": "x", "a": 0, "b": 0})

    monkeypatch.setattr(cli, "validate_ring", broken)
    code, out, _ = run(capsys, "validate-ring", "--ring", Z6)
    assert code == 1 and "FAIL" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "starring", "mp", "--ring", Z6, "--element", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.splitlines()[0] == "2"


def test_counterexample_exits_1(capsys, monkeypatch):
    from starring import sweep

    def always_true(part, idx, a, truth, ns, ms, oracle):
        part.record("C3.6(2)", True, truth is not None, idx, a)

    monkeypatch.setitem(sweep._SCANNERS, "C3.6", always_true)
    code, out, _ = run(capsys, "verify", "--ring", Z8, "--theorem", "C3.6", "--workers", "1")
    assert code == 1 and "counterexamples: 3" in out
