import pytest

from ggf.core import Constraint, GEQ, normalize
from ggf.families import FamilySpec, family_system
from ggf.oracle import count_series
from ggf.textparse import ParseError, parse_file


def test_alhc_chain():
    S = parse_file("vars: a b\na >= b/2 >= 0\n")
    assert S.nonbasic == family_system(FamilySpec("alhc", 2)).nonbasic


def test_lecture_hall_chain():
    S = parse_file("vars: a b c\na/3 >= b/2 >= c/1 >= 0")
    assert S.nonbasic == family_system(FamilySpec("lhp", 3)).nonbasic


def test_empty_body():
    S = parse_file("# nothing but variables\nvars: x y\n")
    assert S.r == 0 and S.n == 2


def test_strict_chain():
    S = parse_file("vars: x y\nx/3 >= y/2 > 0")
    assert S.nonbasic == (Constraint((2, -3)), Constraint((0, 1), -1))
    # weight 8: (8,0) fails y > 0; (7,1), (6,2), (5,3) hold; (4,4) fails
    pts = {(x, 8 - x) for x in range(9) if 2 * x - 3 * (8 - x) >= 0 and 8 - x >= 1}
    assert count_series(S, 8).coeffs()[8] == len(pts) == 3


def test_term_forms():
    S = parse_file("vars: x y z\n2*x + y - z/2 + 1/3*x - 3 >= 1/2\n")
    # (7/3)x + y - z/2 - 7/2 >= 0, times 6
    assert S.nonbasic == (Constraint((14, 6, -3), -21, GEQ),)


def test_relations_and_comments():
    S = parse_file("vars: a b   # two\na <= b # tail\nb < 4\na = 0\n")
    assert S.nonbasic == (Constraint((-1, 1)), Constraint((0, -1), 3))
    assert S.zeroed(0)


def test_leading_minus():
    S = parse_file("vars: a b\n-a + 2*b >= -1")
    assert S.nonbasic == (Constraint((-1, 2), 1),)


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("vars: x\nx >= z", 2, 6),
        ("vars: x\nx >= 1/0", 2, 8),
        ("vars: x\nx $ 2", 2, 3),
        ("x >= 0", 1, 1),
        ("vars: x\nx 2 >= 0", 2, 3),
        ("vars: x\nx", 2, 2),
        ("vars: x x", 1, 1),
        ("", 1, 1),
    ],
)
def test_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as e:
        parse_file(text)
    assert (e.value.line, e.value.column) == (line, col)


def test_round_trip_random():
    import random

    from ggf.verify import random_system

    rng = random.Random(2)
    for _ in range(50):
        S = random_system(rng, const=3)
        T = parse_file(S.format())
        assert parse_file(T.format()) == T
        assert count_series(T, 8) == count_series(S, 8)
