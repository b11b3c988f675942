import json
from pathlib import Path

import jsonschema
import pytest

from nearfrob.cli import main

SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def check_schema(verb, text):
    schema = json.loads((SCHEMAS / f"{verb}.json").read_text())
    jsonschema.validate(json.loads(text), schema)


@pytest.mark.parametrize("sel,line", [
    ("builtin:truncpoly:4", "dim_k=5 frobdim=5"),
    ("builtin:cycle:3,3", "dim_k=18 frobdim=20"),
    ("builtin:An:1", "dim_k=1 frobdim=1"),
    ("matrix:2", "dim_k=4 frobdim=4"),
])
def test_frobdim(capsys, sel, line):
    code, out, _ = run(capsys, "frobdim", sel)
    assert code == 0 and out.strip() == line


def test_basis_outputs(capsys):
    code, out, _ = run(capsys, "basis", "builtin:An:3")
    assert code == 0 and "Δ(e2) = b⊗a" in out
    code, out, _ = run(capsys, "basis", "builtin:truncpoly:2", "--format", "json")
    assert code == 0 and len(json.loads(out)["basis"]) == 3
    code, out, _ = run(capsys, "basis", "builtin:matrix:2", "--verify", "--format", "json")
    assert code == 0 and all(b["verified"]["coassociative"] for b in json.loads(out)["basis"])


def test_counit(capsys):
    code, out, _ = run(capsys, "counit", "builtin:truncpoly:2")
    assert code == 0
    assert out.splitlines()[1:] == ["[0] counit: ε(x^2)=1", "[1] no counit", "[2] no counit"]


def test_counit_delta_file(tmp_path, capsys):
    f = tmp_path / "d.json"
    # sum_{i,k} E_ik (x) E_ki on M_2, row-major labels E_11 E_12 E_21 E_22
    f.write_text(json.dumps({"delta": [[0, 0, "1"], [1, 2, "1"], [2, 1, "1"], [3, 3, "1"]]}))
    code, out, _ = run(capsys, "counit", "builtin:matrix:2", "--delta-file", str(f))
    assert code == 0 and "ε(E_11)=1, ε(E_22)=1" in out
    f.write_text(json.dumps({"delta": [[0, 1, "1"]]}))
    code, _, err = run(capsys, "counit", "builtin:matrix:2", "--delta-file", str(f))
    assert code == 2 and "bimodule" in err


@pytest.mark.parametrize("sel,d", [("builtin:mid:2,2", 6), ("builtin:An:4", 1), ("builtin:crossing:1,1,1,1", 2)])
def test_gentle_verify(capsys, sel, d):
    code, out, _ = run(capsys, "gentle", sel, "--verify")
    assert code == 0
    assert f"d={d}" in out and "verify OK" in out


def test_gentle_rejects_non_gentle(capsys, tmp_path):
    f = tmp_path / "star.q"
    f.write_text("vertices 4\na: 1 -> 2\nb: 1 -> 3\nc: 1 -> 4\n")
    code, _, err = run(capsys, "gentle", f"file:{f}")
    assert code == 2 and "not gentle" in err
    code, _, _ = run(capsys, "gentle", "builtin:truncpoly:2")
    assert code == 1


def test_construct_examples(capsys):
    code, out, _ = run(capsys, "construct", "quotient", "builtin:An:3", "--ideal", "a.b")
    assert code == 0
    assert "Δ(e2) = b⊗a" in out and out.count("Δ(") == 1
    assert "bimodule=OK coassociative=OK" in out
    code, out, _ = run(capsys, "construct", "dsum", "truncpoly:1", "truncpoly:1")
    assert code == 0 and out.startswith("truncpoly:1(+)truncpoly:1: dim_k=4 frobdim=4")
    code, out, _ = run(capsys, "construct", "op", "builtin:matrix:2", "--delta", "3")
    assert code == 0 and "frobdim=4" in out.splitlines()[0]
    code, out, _ = run(capsys, "construct", "tensor", "truncpoly:1", "An:2", "--delta", "0", "--delta", "0")
    assert code == 0 and "dim_k=6" in out


def test_construct_pullback(tmp_path, capsys):
    files = {}
    for name, text in {"c": "vertices 3; α: 1->2; β: 2->3",
                       "b": "vertices 4; α: 1->2; β: 2->3; γ: 3->4; rel α.β.γ",
                       "a": "vertices 4; α: 1->2; β: 2->3; δ: 2->4; rel α.δ"}.items():
        files[name] = tmp_path / f"{name}.q"
        files[name].write_text(text)
    code, out, _ = run(capsys, "construct", "pullback", *(f"file:{files[k]}" for k in "abc"),
                       "--format", "json")
    assert code == 0
    js = json.loads(out)
    assert js["dim_k"] == 11 and js["frobdim"] == 2
    check_schema("construct", out)


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--budget", "3", "--include-cyclic")
    assert code == 0 and "counterexamples=0" in out and "skipped (has relations): C(1,1)" in out
    code, out, _ = run(capsys, "census", "--budget", "0")
    assert code == 0 and out.startswith("budget=0 path_algebras=0")
    code, _, _ = run(capsys, "census", "--budget", "9")
    assert code == 2


def test_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", "builtin:cycle:2,1", "--verify")
    assert code == 0 and "gentle: yes" in out
    f = tmp_path / "bad.q"
    f.write_text("vertices 2\na: 1 -> 2\nb: 2 -> 1\nrel a.b\nbound 2\n")
    code, out, _ = run(capsys, "validate", f"file:{f}")
    assert code == 2 and "admissible: FAIL" in out


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "frobdim", "builtin:nope:1")[0] == 1
    assert run(capsys, "frobdim", "builtin:An:x")[0] == 1
    assert run(capsys, "frobdim")[0] == 1
    assert run(capsys, "frobdim", "file:/nonexistent/q")[0] == 1
    f = tmp_path / "syntax.q"
    f.write_text("vertices 2\na: 1 => 2\n")
    code, _, err = run(capsys, "frobdim", f"file:{f}")
    assert code == 1 and "line 2" in err
    assert run(capsys, "basis", "An:3", "--format", "xml")[0] == 1
    assert run(capsys, "construct", "quotient", "truncpoly:2", "--ideal", "1")[0] == 2
    assert run(capsys, "construct", "quotient", "truncpoly:2", "--ideal", "y")[0] == 1
    assert run(capsys, "--help")[0] == 0


def test_max_paths(capsys):
    code, _, err = run(capsys, "frobdim", "builtin:An:8", "--max-paths", "10")
    assert code == 2 and "cap" in err


JSON_CASES = [
    ("frobdim", ["builtin:cycle:2,1"]),
    ("basis", ["builtin:An:3", "--verify"]),
    ("counit", ["builtin:truncpoly:3"]),
    ("gentle", ["builtin:crossing:1,1,2,1", "--verify"]),
    ("census", ["--budget", "2", "--include-cyclic"]),
    ("validate", ["builtin:mid:1,2", "--verify"]),
    ("construct", ["dsum", "truncpoly:1", "An:2"]),
    ("construct", ["quotient", "An:3", "--ideal", "a.b"]),
]


@pytest.mark.parametrize("verb,args", JSON_CASES)
def test_json_schema_and_determinism(capsys, verb, args):
    code, first, _ = run(capsys, verb, *args, "--format", "json")
    assert code == 0
    check_schema(verb, first)
    code, second, _ = run(capsys, verb, *args, "--format", "json")
    assert first == second
    _, t1, _ = run(capsys, verb, *args)
    _, t2, _ = run(capsys, verb, *args)
    assert t1 == t2
