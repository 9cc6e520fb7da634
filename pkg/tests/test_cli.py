import json
from importlib import resources

import jsonschema
import pytest

from repstab import cli
from repstab.chars import NotACharacterError


@pytest.fixture(scope="module")
def schema():
    text = resources.files("repstab").joinpath("report.schema.json").read_text("utf-8")
    return json.loads(text)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def mults(doc):
    return {tuple(r["partition"]): r["mult"] for r in doc["result"]["multiplicities"]}


def test_powerset_table(capsys):
    code, out, _ = run(capsys, "decompose", "powerset", "--n", "4", "--k", "2", "--format", "table")
    assert code == 0
    assert "V(4)" in out and "V(3,1)" in out and "V(2,2)" in out
    doc = run_json(capsys, "decompose", "powerset", "--n", "4", "--k", "2")
    assert mults(doc) == {(4,): 1, (3, 1): 1, (2, 2): 1}


def test_arnold_five(capsys):
    doc = run_json(capsys, "decompose", "arnold", "--n", "5", "--degree", "2")
    # four irreducible types, seven summands counted with multiplicity
    assert mults(doc) == {(4, 1): 2, (3, 2): 2, (3, 1, 1): 2, (2, 2, 1): 1}
    assert doc["result"]["published"]["agrees"] is True
    assert doc["result"]["published"]["note"]


def test_squarefree_basis_size(capsys):
    code, out, _ = run(capsys, "basis", "squarefree", "--n", "7", "--k", "3", "--i", "2")
    assert code == 0
    polys = [ln for ln in out.splitlines() if ln.startswith("(x_")]
    assert len(polys) == 14
    doc = run_json(capsys, "basis", "squarefree", "--n", "7", "--k", "3", "--i", "2")
    assert doc["result"]["size"] == 14


COMMANDS = [
    ["decompose", "powerset", "--n", "6", "--k", "3"],
    ["decompose", "powerset-full", "--n", "5", "--stable"],
    ["decompose", "squarefree", "--n", "6", "--k", "2"],
    ["decompose", "lambda2", "--n", "5"],
    ["decompose", "yb-ideal", "--n", "5"],
    ["decompose", "arnold", "--n", "4", "--degree", "1"],
    ["decompose", "arnold", "--n", "9", "--degree", "2"],
    ["basis", "filtration", "--n", "5", "--k", "2", "--i", "1"],
    ["character", "irr", "--n", "4"],
    ["character", "closed-form", "--n", "6"],
    ["character", "module", "--n", "5", "--k", "2"],
    ["character", "module", "--n", "5"],
    ["stability", "rep", "--k", "1", "--n-min", "2", "--n-max", "5"],
    ["stability", "rep", "--family", "filtration", "--k", "2", "--i", "1",
     "--n-min", "4", "--n-max", "6"],
    ["stability", "action", "--family", "powerset", "--n-min", "4", "--n-max", "6"],
    ["stability", "action", "--k", "2", "--n-min", "4", "--n-max", "6"],
    ["omega-bases", "--n", "5"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:2]))
@pytest.mark.parametrize("fmt", ["table", "json"])
def test_deterministic(capsys, argv, fmt):
    first = run(capsys, *argv, "--format", fmt)
    second = run(capsys, *argv, "--format", fmt)
    assert first[0] == 0
    assert first == second


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:2]))
def test_json_schema_and_round_trip(capsys, schema, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema)
    assert json.dumps(doc, indent=2) + "\n" == out
    assert doc["schema_version"] == "1"


def test_rationals_lowest_terms(capsys):
    doc = run_json(capsys, "basis", "filtration", "--n", "4", "--k", "1", "--i", "0")
    coeffs = [t["coeff"] for b in doc["result"]["basis"] for t in b["terms"]]
    assert coeffs and all(c == {"num": "1", "den": "1"} for c in coeffs)
    assert cli.rational("6/4") == {"num": "3", "den": "2"}
    assert cli.rational(-2) == {"num": "-2", "den": "1"}


def test_stable_notation(capsys):
    doc = run_json(capsys, "decompose", "powerset", "--n", "6", "--k", "2", "--stable")
    stable = {tuple(r["stable"]) for r in doc["result"]["multiplicities"]}
    assert stable == {(), (1,), (2,)}
    code, out, _ = run(capsys, "decompose", "powerset", "--n", "6", "--k", "2", "--stable")
    assert "V(1)_6" in out


@pytest.mark.parametrize("argv", [
    ["decompose", "powerset", "--n", "11", "--k", "1"],
    ["omega-bases", "--n", "9"],
    ["stability", "action", "--family", "natural", "--n-min", "2", "--n-max", "9"],
])
def test_caps_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "cap" in err


@pytest.mark.parametrize("argv", [
    ["decompose", "powerset", "--n", "4"],
    ["decompose", "powerset", "--n", "4", "--k", "7"],
    ["basis", "squarefree", "--n", "4", "--k", "3", "--i", "1"],
    ["stability", "rep", "--family", "nonsense", "--k", "1", "--n-min", "2", "--n-max", "3"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("repstab:")


def test_grammar_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["decompose", "nothing"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        cli.main(["decompose", "arnold", "--n", "4", "--degree", "3"])
    assert e.value.code == 2


def test_help_lists_caps(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--help"])
    out = capsys.readouterr().out
    assert "n <= 8" in out and "n <= 10" in out


def test_internal_failure_exit_one(capsys, monkeypatch):
    def broken(chi):
        raise NotACharacterError("multiplicity 1/2 is not an integer")
    monkeypatch.setattr(cli.chars, "decompose_character", broken)
    code, _, err = run(capsys, "decompose", "powerset", "--n", "4", "--k", "1")
    assert code == 1
    assert "internal failure" in err


def test_assertion_exit_one(capsys, monkeypatch):
    monkeypatch.setattr(cli.chars, "closed_form_character", lambda label, ct: 99)
    code, _, _ = run(capsys, "character", "closed-form", "--n", "5")
    assert code == 1


def test_out_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "decompose", "lambda2", "--n", "4", "--format", "json",
                       "--out", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text("utf-8"))
    assert doc["command"] == "decompose lambda2"
    assert doc["params"] == {"n": 4, "stable": False}


def test_action_report_lists_condition_c(capsys):
    doc = run_json(capsys, "stability", "action", "--family", "powerset",
                   "--n-min", "4", "--n-max", "5")
    assert doc["result"]["summary"]
    fails = [c for c in doc["result"]["condition_c"] if not c["holds"]]
    assert fails
    assert all(s["missing_orbits"] for s in doc["result"]["steps"])
