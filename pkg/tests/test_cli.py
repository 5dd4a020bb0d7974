import itertools
import json
import shutil
import subprocess

import pytest

from tautring.cli import main

DELTA0 = " + ".join("sepbdiv(0,{%s})" % ",".join(map(str, S))
                    for k in (2, 3, 4) for S in itertools.combinations(range(1, 5), k))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_eval(capsys):
    assert run(capsys, "eval", "psi(2)*psi(3)^2 on (1,3)") == (0, "1/12", "")


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "--json", "psi(1)^2 + psi(1)*psi(2) on (1,2)")
    assert code == 0 and json.loads(out) == {"value": "1/12"}


def test_flags_before_command(capsys):
    code, out, _ = run(capsys, "--json", "eval", "psi(1) on (1,1)")
    assert json.loads(out) == {"value": "1/24"}


def test_gens_layout(capsys):
    code, out, _ = run(capsys, "gens", "2", "0", "2")
    assert code == 0
    assert out.count("Graph :") == 8
    assert out.splitlines()[0].rstrip() == "[0] : Graph :      [2] [[]] []"


def test_gens_json(capsys):
    code, out, _ = run(capsys, "gens", "2", "0", "2", "--json")
    data = json.loads(out)
    assert len(data["generators"]) == 8
    assert data["generators"][3]["terms"][0]["monomials"][0]["psi"] == [[2, 1]]


def test_iszero_and_assert(capsys):
    expr = f"kappa(1) - psi(1) - psi(2) - psi(3) - psi(4) + {DELTA0} on (1,4)"
    assert run(capsys, "iszero", expr, "--assert")[:2] == (0, "true")
    assert run(capsys, "iszero", "kappa(1) on (1,4)", "--assert")[:2] == (1, "false")
    assert run(capsys, "iszero", "kappa(1) on (1,4)")[:2] == (0, "false")


def test_basis_with_moduli(capsys):
    assert run(capsys, "basis", "kappa(1) on (3,0)", "--moduli", "sm")[:2] == (0, "(1)")
    assert run(capsys, "basis", "lambda(1) on (3,0)", "--moduli", "sm")[:2] == (0, "(1/12)")
    code, out, _ = run(capsys, "basis", "--json", "kappa(1)^2 on (2,0)")
    data = json.loads(out)
    assert data["generating_indices"] == [0, 1] and len(data["vector"]) == 2


def test_pair(capsys):
    assert run(capsys, "pair", "psi(1) on (1,1)", "fund() on (1,1)")[:2] == (0, "1/24")


def test_dr(capsys):
    code, out, _ = run(capsys, "dr", "1", "0", "0", "--json")
    data = json.loads(out)
    assert data["terms"][0]["monomials"][0]["coeff"] == "-1/24"
    code, out, _ = run(capsys, "dr", "1", "2", "-2", "--rpoly")
    assert "(-1/24 + 1/24*r^2)*" in out


def test_forgetful_maps(capsys):
    code, out, _ = run(capsys, "pushforward", "psi(3)^2 on (1,3)", "--forget", "3")
    assert out.splitlines() == ["Graph :      [1] [[1, 2]] []",
                                "Polynomial : 1*(kappa_1^1 )_0"]
    code, out, _ = run(capsys, "pullback", "psi(2) on (1,2)", "--forget", "3")
    assert out.splitlines()[-2:] == ["Graph :      [1, 0] [[1, 4], [5, 3, 2]] [(4, 5)]",
                                     "Polynomial : -1*"]


def test_boundary_pullback_tensor(capsys):
    code, out, _ = run(capsys, "pullback", "--json",
                       "graph([1,3],[[2],[3]],[(2,3)])*psi(1) on (4,0)",
                       "--graph", "graph([2,2],[[1],[2]],[(1,2)])", "--tensor", "2")
    # psi(1) has no marking on (4,0): computation error
    assert code == 4
    code, out, _ = run(capsys, "pullback", "--json",
                       "graph([1,3],[[2],[3]],[(2,3)]) on (4,0)",
                       "--graph", "graph([2,2],[[1],[2]],[(1,2)])", "--tensor", "1")
    assert code == 0 and len(json.loads(out)["vector"]) == 6


@pytest.mark.parametrize("argv, code", [
    (["eval", "psi(2)*"], 3),
    (["eval", "frob(1) on (1,1)"], 3),
    (["eval", "psi(1)"], 3),
    (["eval", "psi(9) on (1,3)"], 4),
    (["dr", "1", "1", "1"], 4),
    (["frob"], 2),
    (["eval"], 2),
    (["--threads", "0", "eval", "1"], 2),
    (["--moduli", "xx", "iszero", "fund() on (1,1)"], 2),
    (["pullback", "psi(1) on (1,1)", "--tensor", "1", "--forget", "2"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code
    capsys.readouterr()


def test_parse_error_message(capsys):
    code, _, err = run(capsys, "eval", "psi(2)*")
    assert code == 3 and "offset 7" in err


def test_cache_flag_and_env(capsys, tmp_path, monkeypatch):
    path = tmp_path / "cache.json"
    assert run(capsys, "basis", "kappa(1) on (1,2)", "--cache", str(path))[0] == 0
    assert json.loads(path.read_text())["version"] == 1
    env_path = tmp_path / "env.json"
    monkeypatch.setenv("TAUTRING_CACHE", str(env_path))
    assert run(capsys, "eval", "psi(1) on (1,1)")[0] == 0
    assert env_path.exists()
    env_path.write_text('{"version": 7}')
    assert run(capsys, "eval", "psi(1) on (1,1)")[0] == 4


def test_output_independent_of_threads(capsys):
    a = run(capsys, "basis", "kappa(1)^2 on (1,4)", "--threads", "1")
    b = run(capsys, "basis", "kappa(1)^2 on (1,4)", "--threads", "3")
    assert a == b


@pytest.mark.skipif(shutil.which("taut") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["taut", "eval", "psi(2)*psi(3)^2 on (1,3)"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "1/12\n"
