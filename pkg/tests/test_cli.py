import json
import subprocess
import sys
from pathlib import Path

import pytest

from ainf_bialgebra.cli import main

BROKEN = "ring Z2\ngenerators 1:0 y:-2\ntype 2 2\nomega y|y = y|y\n"
EX1 = "ring Z2\ngenerators 1:0 y:-2\ntype 2 3\nomega y|y = y|1|1 + 1|1|y\n"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def broken(tmp_path):
    path = tmp_path / "broken.struct"
    path.write_text(BROKEN)
    return str(path)


def test_verify_ex1(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "ex1")
    assert code == 0
    assert out.strip().endswith("PASS")
    assert "R4d     exact     PASS" in out


def test_verify_theorem1(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "theorem1", "--m", "3", "--n", "4",
                       "--p", "1", "--q", "3")
    assert code == 0
    assert "R3      termwise  PASS" in out


def test_verify_broken_file(capsys, broken):
    code, out, _ = run(capsys, "verify", "--file", broken)
    assert code == 3
    assert "R6      exact     FAIL" in out
    code, _, _ = run(capsys, "verify", "--file", broken, "--no-degree-check")
    assert code == 1


def test_verify_perturbed_file_fails_with_relation_code(capsys, tmp_path):
    path = tmp_path / "p.struct"
    path.write_text(EX1 + "omega 1|y = 1|1|1\n")
    code, out, _ = run(capsys, "verify", "--file", str(path))
    assert code == 1
    assert "on 1|y" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "ex1", "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert [r["relation"] for r in data["reports"]][:4] == ["Assoc", "Coassoc", "Hopf", "R1"]
    assert data["reports"][3]["basis_size"] == 4


def test_verify_degree_violation_exit_code(capsys):
    code, _, err = run(capsys, "verify", "--builtin", "theorem1", "--m", "3", "--n", "4",
                       "--p", "1", "--q", "2")
    assert code == 3 and "violates" in err


@pytest.mark.parametrize("argv", [
    ["verify"],
    ["verify", "--builtin", "theorem1", "--m", "3"],
    ["verify", "--file", "/nonexistent.struct"],
    ["verify", "--builtin", "theorem1", "--m", "3", "--n", "4", "--p", "1", "--q", "3",
     "--mode", "exact"],
    ["show", "ex1", "mu(y|y|y)"],
    ["show", "ex1", "nope(y)"],
    ["show", "theorem1:3,4", "mu(y|y)"],
    ["enumerate", "--m-max", "1"],
])
def test_input_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_parse_error_exit_two(capsys, tmp_path):
    path = tmp_path / "bad.struct"
    path.write_text("ring Z2\ntype 2 3\n")
    code, _, _ = run(capsys, "verify", "--file", str(path))
    assert code == 2


def test_relation2_flag(capsys):
    argv = ["verify", "--builtin", "theorem1", "--m", "2", "--n", "3", "--p", "1", "--q", "1"]
    assert run(capsys, *argv)[0] == 0
    code, out, _ = run(capsys, *argv, "--relation2", "display")
    assert code == 1 and "R2      exact     FAIL" in out


def test_verbose_logs_alternate_verdict(capsys):
    code, _, err = run(capsys, "-v", "verify", "--builtin", "theorem1", "--m", "2", "--n", "3",
                       "--p", "1", "--q", "1")
    assert code == 0
    assert "display convention: fail" in err


def test_enumerate_text(capsys):
    code, out, _ = run(capsys, "enumerate", "--m-max", "3", "--q-cap", "4")
    assert code == 0
    assert "  3   4   1   3  iii     3" in out
    code, out, _ = run(capsys, "enumerate", "--m-max", "2", "--q-cap", "2")
    assert "  2   2   1   2  i       -" in out


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--m-max", "2", "--q-cap", "1", "--json")
    rows = json.loads(out)
    assert code == 0
    assert not [r for r in rows if r["case"] == "i"]
    assert {"m": 2, "n": 3, "p": 1, "q": 1, "case": "ii", "q_of_n": "1"} in rows


@pytest.mark.parametrize("expr,expected", [
    ("delta3(omega(y|y))", "1|1|1|y + 1|1|y|1 + 1|y|1|1 + y|1|1|1"),
    ("f3(y)", "1|1|y + 1|y|1 + y|1|1"),
    ("g2(1|1)", "1"),
    ("omega(1|y)", "0"),
    ("mu*mu(sigma2_2(Delta*Delta(y|y)))", "0"),
    ("id2(y|1 + 1|y)", "1|y + y|1"),
    ("partial2(y|1|1)", "0"),
])
def test_show_ex1(capsys, expr, expected):
    code, out, _ = run(capsys, "show", "ex1", expr)
    assert code == 0
    assert out.strip() == expected


def test_show_theorem1(capsys):
    code, out, _ = run(capsys, "show", "theorem1:3,4,1,3", "omega(y|y|y)")
    assert code == 0 and out.strip() == "x(y|y|y|y)"


def test_show_file(capsys, broken):
    code, out, _ = run(capsys, "show", broken, "omega(y|y)")
    assert code == 0 and out.strip() == "y|y"


def test_output_is_byte_identical(capsys, broken):
    first = run(capsys, "verify", "--file", broken, "--json")
    second = run(capsys, "verify", "--file", broken, "--json")
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ainf_bialgebra", "show", "ex1", "f3(y)"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1|1|y + 1|y|1 + y|1|1"


STRUCTURES = Path(__file__).resolve().parent.parent / "structures"


@pytest.mark.parametrize("name,code", [("ex1", 0), ("exterior_2_3", 0), ("broken", 3)])
def test_bundled_structure_files(capsys, name, code):
    assert run(capsys, "verify", "--file", str(STRUCTURES / f"{name}.struct"))[0] == code
