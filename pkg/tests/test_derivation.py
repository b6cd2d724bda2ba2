from pathlib import Path

import pytest

from ggf.derivation import ScriptError, run_script
from ggf.families import FamilySpec, family_system
from ggf.gfalg import render
from ggf.oracle import count_series
from ggf.series import SpecializationMap, specialize
from ggf.solver import solve
from ggf.textparse import parse_file

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def q(F, N=14):
    return specialize(F, SpecializationMap.all_q(F.n), N)


@pytest.mark.parametrize("name", ["minc3", "alhc2"])
def test_bundled_scripts(name):
    S = parse_file((SCRIPTS / f"{name}.txt").read_text())
    d = run_script(S, (SCRIPTS / f"{name}.steps").read_text())
    assert q(d.gf) == count_series(S, 14)
    assert d.trace[0] == "goal 1:"
    assert d.trace[-1].strip() and "result:" in d.trace


def test_minc3_tree_shape():
    S = family_system(FamilySpec("minc", 3))
    d = run_script(S, "g5 remove 2\ng2\nsolve\ng1\ngoal 1.2\ng3 l3 2 l2\n")
    kinds = {g.id: g.kind for g in d.root.walk()}
    assert kinds["1"] == "g5" and kinds["1.1"] == "g2" and kinds["1.2"] == "g3"
    assert kinds["1.1.1"] == "solve" and kinds["1.1.2"] == "g1"
    assert kinds["1.2.1"] == "solve"  # closed automatically
    assert any("open at end of script" in ln for ln in d.trace)


def test_empty_script_is_solver():
    S = family_system(FamilySpec("alhc", 3))
    d = run_script(S, "# nothing\n")
    assert render(d.gf) == render(solve(S))


def test_g3_indices_and_override():
    S = parse_file("vars: a b\n")
    with pytest.raises(ScriptError) as e:
        run_script(S, "g3 1 1 2\n")
    assert e.value.line == 1
    d = run_script(S, "g3 1 1 2 assume\n")
    # overriding a false side condition gives the wrong function, as it should
    assert q(d.gf) != count_series(S, 14)
    assert any("assumed" in ln for ln in d.trace)


def test_g4_and_implied_flag():
    S = parse_file("vars: a b\na >= b\n")
    d = run_script(S, "g4 a + 1 >= b\n")
    assert q(d.gf) == count_series(S, 14)
    d = run_script(S, "g4 a + 1 >= b implied\n")
    assert "  implied: certified" in d.trace
    with pytest.raises(ScriptError):
        run_script(S, "g4 b >= a implied\n")


def test_g5_redundant_flag():
    S = parse_file("vars: a b\na >= b\n2*a >= b\n")
    d = run_script(S, "g5 remove 2 redundant\n")
    assert q(d.gf) == count_series(S, 14)
    with pytest.raises(ScriptError):
        run_script(S, "g5 remove 1 redundant\n")


@pytest.mark.parametrize(
    "script, line",
    [
        ("frobnicate\n", 1),
        ("solve\nsolve\n", 2),
        ("g5 remove 9\n", 1),
        ("\n\ng3 a x b\n", 3),
        ("goal 7\n", 1),
        ("g4 a >= zz\n", 1),
        ("g4 a >= b >= 0\n", 1),
        ("g3 a 1 q\n", 1),
    ],
)
def test_script_errors(script, line):
    S = parse_file("vars: a b\na >= b\n")
    with pytest.raises(ScriptError) as e:
        run_script(S, script)
    assert e.value.line == line


def test_g2_then_g1():
    S = parse_file("vars: a b\na >= 2\nb > 0\n")
    d = run_script(S, "g2\ng1\ng1\n")
    assert render(d.gf) == "+ a^2*b / (1 - a) (1 - b)"
