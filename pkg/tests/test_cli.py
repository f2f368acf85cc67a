import json

import pytest

from freevoa.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_nprod_theta(capsys):
    code, out, _ = call(capsys, "nprod", "theta[1]", "theta[1]", "1")
    assert code == 0 and out.strip() == "-1"


def test_invariant_theta_fails(capsys):
    code, out, _ = call(capsys, "invariant", "theta[1]")
    assert code == 1
    assert "fails at pole order 1" in out


def test_invariant_ls(capsys):
    code, out, _ = call(capsys, "invariant", "L_S[1]")
    assert code == 0 and out.strip() == "invariant"


@pytest.mark.parametrize("realization", ["bg", "heis", "bc"])
def test_check_w3(capsys, realization):
    code, out, _ = call(capsys, "check", "w3", "--realization", realization)
    assert code == 0 and "verified" in out


def test_check_virasoro(capsys):
    code, out, _ = call(capsys, "check", "virasoro", "--alpha", "0")
    assert code == 0 and "c = 2" in out
    code, _, _ = call(capsys, "check", "virasoro", "--expr", "2*L_S[1]", "--c", "-2")
    assert code == 1


def test_ope_json(capsys):
    code, out, _ = call(capsys, "ope", "L_S[1]", "L_S[1]", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert [e["n"] for e in data["ope"]] == [3, 1, 0]
    assert data["ope"][0]["text"] == "-1"


def test_commutant(capsys):
    code, out, _ = call(capsys, "commutant", "gens", "--rho", "1,-1")
    assert code == 0
    assert "omega(1,1): :gamma1 gamma2:" in out
    code, out, _ = call(capsys, "commutant", "basis", "--weight", "3")
    assert code == 0 and out.startswith("dimension 2")


def test_quantum_correct(capsys):
    code, out, _ = call(capsys, "quantum-correct", "2")
    assert code == 0
    assert out.strip() == ":beta1 beta1 gamma1 gamma1: + 2*:beta1 D^1 gamma1: - 2*:D^1 beta1 gamma1:"


def test_zhu(capsys):
    code, out, _ = call(capsys, "zhu", ":gamma1 beta1:", "--alpha", "0")
    assert code == 0 and out.splitlines()[0] == "x1 d1 + 1"


def test_cokernel(capsys):
    code, out, _ = call(capsys, "cokernel", "--degree", "3")
    assert code == 0
    assert out.splitlines()[0] == "codim 1 in E_<=3 (dim 4)"
    assert "representatives: e1" in out


def test_star_and_transvect(capsys):
    assert call(capsys, "star", "e1", "e1", "--k", "1", "--side", "weyl")[1].strip() == "-1"
    assert call(capsys, "star", ":beta1 gamma1:", ":beta1 gamma1:", "--k", "1")[1].strip() == "-1"
    assert call(capsys, "transvect", "xp1 x1", "xp1 x1", "--k", "2")[1].strip() == "-1"


def test_extract_unit(capsys):
    code, out, _ = call(capsys, "extract-unit", "omega[-2]")
    assert code == 0 and out.strip() == "l = (-2,), d = 2, c = 1/2"
    code, out, _ = call(capsys, "extract-unit", "d1^2", "--side", "weyl", "--format", "json")
    assert json.loads(out)["d"] == 2


def test_files(capsys, tmp_path):
    act = tmp_path / "act.json"
    act.write_text(json.dumps({"rows": [["1", "-1"]]}))
    code, out, _ = call(capsys, "nprod", "theta[1]", "theta[1]", "1", "--action", str(act))
    assert code == 0 and out.strip() == "-2"
    alg = tmp_path / "alg.json"
    alg.write_text(json.dumps({"bg_pairs": 0, "bc_pairs": 0, "heisenberg_levels": ["1"]}))
    code, out, _ = call(capsys, "check", "w3", "--realization", "heis", "--algebra", str(alg))
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["nprod", "beta1 +", "gamma1", "0"],
    ["nprod", "foo1", "gamma1", "0"],
    ["bogus"],
    ["nprod", "beta1"],
    ["zhu", "beta1", "--alpha", "1/2,1/2"],
    ["invariant", "beta1", "--action", "/nonexistent.json"],
    ["commutant", "gens", "--rho", "1,1;2,2"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, _ = call(capsys, *argv)
    assert code == 2


def test_error_message_on_stderr(capsys):
    code, out, err = call(capsys, "nprod", "foo1", "gamma1", "0")
    assert out == "" and "unknown identifier 'foo1'" in err


def test_deterministic_output(capsys):
    a = call(capsys, "commutant", "gens", "--rho", "1,1,1", "--format", "json")
    b = call(capsys, "commutant", "gens", "--rho", "1,1,1", "--format", "json")
    assert a == b


def test_selftest_json(capsys):
    code, out, _ = call(capsys, "selftest", "--json")
    data = json.loads(out)
    assert [c["id"] for c in data["checks"]] == list(range(1, 15))
    assert code == (0 if data["passed"] else 1)
