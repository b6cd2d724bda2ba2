"""The nine acceptance criteria, each at its stated order, size and time limit.

Each test prints one PASS/FAIL line; the lines are repeated in the terminal
summary under "acceptance criteria".
"""

import pytest

from conftest import ACCEPTANCE_LINES
from ggf.verify import (
    DEFAULT_SEED,
    _Outputs,
    _timed,
    check_alhc,
    check_identities,
    check_inhomogeneous,
    check_laws,
    check_minc,
    check_solver,
    check_structure,
    check_tlhp,
    check_tworow,
)

SOLVER_CASES = 200
LAW_CASES = 100
INHOMOGENEOUS_CASES = 50

_outputs = _Outputs()
_filled = set()


def _record(result):
    line = result.line()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert result.passed, line


def _solver():
    _filled.add("solver")
    return check_solver(DEFAULT_SEED, SOLVER_CASES, _outputs)


def _inhomogeneous():
    _filled.add("inhomogeneous")
    return check_inhomogeneous(DEFAULT_SEED, INHOMOGENEOUS_CASES, _outputs)


def _structure():
    # when run on its own, produce the outputs first
    if "solver" not in _filled:
        _solver()
    if "inhomogeneous" not in _filled:
        _inhomogeneous()
    return check_structure(_outputs)


CRITERIA = [
    ("1 minc", 5, check_minc),
    ("2 alhc", 30, check_alhc),
    ("3 tlhp", 60, check_tlhp),
    ("4 tworow", 30, check_tworow),
    ("5 identities", 10, check_identities),
    ("6 solver vs oracle", 300, _solver),
    ("7 guideline laws", None, lambda: check_laws(DEFAULT_SEED, LAW_CASES)),
    ("8 inhomogeneous", None, _inhomogeneous),
    ("9 structure", None, _structure),
]


@pytest.mark.parametrize("name, limit, check", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, limit, check):
    _record(_timed(name, limit, check))
