from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ggf.core import GEQ, Constraint, ConstraintSystem, VarTable, negate, normalize
from ggf.families import FamilySpec, family_system
from ggf.gfalg import gf_substitute, render
from ggf.guidelines import (
    DerivationStep,
    GuidelineError,
    Status,
    apply_g1,
    apply_g2,
    apply_g3,
    apply_g4,
    apply_g5,
    certified_g3,
    close_by_g1,
    difference_constraint,
    implied,
    product_of_components,
)
from ggf.oracle import count_series, enumerate_points
from ggf.series import SpecializationMap, TruncatedSeries, specialize
from ggf.solver import solve


def q(S, N=10):
    return count_series(S, N)


def gfq(F, N=10):
    return specialize(F, SpecializationMap.all_q(F.n), N)


# -- implication ---------------------------------------------------------------

def test_implied_positive_part():
    S = normalize([({"a": 2, "b": -1}, 0, ">="), ({"b": 1}, -1, ">=")], ["a", "b"])
    c = Constraint((1, 0), -1, GEQ)  # a >= 1
    r = implied(S, c)
    assert r and r.status is Status.IMPLIED


def test_member_is_implied():
    S = normalize([({"a": 1, "b": -3}, 2, ">=")], ["a", "b"])
    assert implied(S, S.nonbasic[0])


def test_unknown_with_witness():
    S = normalize([], ["a", "b"])
    r = implied(S, Constraint((1, -1), 0, GEQ))
    assert not r and r.status is Status.UNKNOWN
    w = r.witness
    assert all(v >= 0 for v in w)
    assert w[0] - w[1] <= -1  # satisfies the negation
    assert w == (Fraction(0), Fraction(1))


def test_implied_is_rational_only():
    # 2a = 1 has no integer solution, but FM sees the rational point a = 1/2
    S = ConstraintSystem.build(VarTable(("a",)), [Constraint((2,), -1, GEQ), Constraint((-2,), 1, GEQ)])
    assert not implied(S, Constraint((-1,), -5, GEQ))


# -- guideline 1 and 2 -----------------------------------------------------------

@pytest.mark.parametrize("t", [0, 1, 3])
def test_g1_series(t):
    f = apply_g1(t)
    assert gfq(f, 6).coeffs() == [0] * t + [1] * (7 - t)


def test_g1_negative():
    with pytest.raises(GuidelineError):
        apply_g1(-1)


def test_close_by_g1():
    S = normalize([({"a": 1}, -2, ">="), ({"b": 3}, -4, ">=")], ["a", "b"])
    F = close_by_g1(S)
    assert gfq(F) == q(S)
    assert render(F) == "+ a^2*b^2 / (1 - a) (1 - b)"


def test_g2_components():
    S = normalize(
        [({"a": 1, "b": -1}, 0, ">="), ({"c": 1}, -1, ">=")],
        ["a", "b", "c"],
    )
    parts = apply_g2(S)
    assert [p.vars.names for p in parts] == [("a", "b"), ("c",)]
    F = product_of_components([solve(p) for p in parts], S.vars)
    assert gfq(F) == q(S)


def test_g2_basics_only():
    parts = apply_g2(normalize([], ["a", "b", "c"]))
    assert len(parts) == 3


def test_g2_minc_peels_last_part():
    # C_{n-1} with lam_n >= 1 splits off lam_n
    S = family_system(FamilySpec("minc", 3))
    rest, _ = apply_g5(S, 1)
    parts = apply_g2(rest)
    assert [p.vars.names for p in parts] == [("l1", "l2"), ("l3",)]


# -- guideline 3 ------------------------------------------------------------------

def test_g3_minc_step():
    S = family_system(FamilySpec("minc", 3))
    _, neg = apply_g5(S, 1)  # branch with l3 - 2*l2 >= 1
    S2, post = apply_g3(neg, 2, 2, 1)
    assert post == (1, 2, 2)
    assert Constraint((0, 0, 1), -1, GEQ) in S2.nonbasic
    F = gf_substitute(solve(S2), *post)
    assert gfq(F) == q(neg)


def test_g3_zero_multiplier_is_identity():
    S = normalize([({"a": 1, "b": -1}, 0, ">=")], ["a", "b"])
    S2, post = apply_g3(S, 0, 0, 1)
    assert S2 == S and post == (1, 0, 0)


def test_g3_refuses_uncertified():
    S = normalize([], ["a", "b"])
    with pytest.raises(GuidelineError):
        apply_g3(S, 0, 1, 1)
    S2, _ = apply_g3(S, 0, 1, 1, cert="assume")
    assert S2.r == 0


def test_g3_step_needs_certificate():
    with pytest.raises(GuidelineError):
        DerivationStep("G3", {"i": 0})
    _, _, step = certified_g3(normalize([({"a": 1, "b": -1}, 0, ">=")], ["a", "b"]), 0, 1, 1)
    assert step.certificate


def test_g3_chain_on_alhc():
    # l3 <- l3 + l2, then l2 <- l2 + l1: both certified on {l1 >= l2 >= l3}
    S = normalize([({"a": 1, "b": -1}, 0, ">="), ({"b": 1, "c": -1}, 0, ">=")], ["a", "b", "c"])
    S1, p1 = apply_g3(S, 0, 1, 1)
    S2, p2 = apply_g3(S1, 1, 1, 2)
    assert all(min(c.coeffs) >= 0 for c in S2.nonbasic)
    F = gf_substitute(gf_substitute(solve(S2), *p2), *p1)
    assert render(F) == "+ 1 / (1 - a) (1 - a*b) (1 - a*b*c)"
    assert gfq(F, 12) == q(S, 12)


# -- guideline 4 and 5 --------------------------------------------------------------

def test_g4_basics_split_counts():
    S = normalize([], ["a", "b"])
    A, B = apply_g4(S, Constraint((1, -1), 0, GEQ))
    assert q(A, 4).coeffs()[4] == 3
    assert q(B, 4).coeffs()[4] == 2
    assert q(S, 4).coeffs()[4] == 5


def test_g4_implied_second_branch_empty():
    S = normalize([({"a": 1, "b": -1}, 0, ">=")], ["a", "b"])
    _, B = apply_g4(S, S.nonbasic[0])
    assert len(enumerate_points(B, 10)) == 0
    assert gfq(solve(B)) == TruncatedSeries.zero(10)


def test_g5_requires_member():
    S = normalize([({"a": 1, "b": -1}, 0, ">=")], ["a", "b"])
    with pytest.raises(GuidelineError):
        apply_g5(S, Constraint((1, 0), -1, GEQ))
    with pytest.raises(GuidelineError):
        apply_g5(S, 3)


def test_g5_redundant_second_branch_empty():
    S = normalize([({"a": 1, "b": -1}, 0, ">="), ({"a": 2, "b": -1}, 0, ">=")], ["a", "b"])
    rest, neg = apply_g5(S, 1)
    assert implied(rest, S.nonbasic[1])
    assert len(enumerate_points(neg, 10)) == 0


def test_g5_alhc_split():
    S = family_system(FamilySpec("alhc", 3))
    rest, neg = apply_g5(S, 1)
    assert q(S) == q(rest) - q(neg)


# -- property laws ------------------------------------------------------------------

coef = st.integers(-3, 3)


@st.composite
def systems(draw, n_min=1, n_max=3, r_max=2):
    n = draw(st.integers(n_min, n_max))
    r = draw(st.integers(0, r_max))
    rows = []
    for _ in range(r):
        cs = tuple(draw(coef) for _ in range(n))
        if any(cs):
            rows.append(Constraint(cs, draw(st.integers(-3, 3)), GEQ).normalized())
    return ConstraintSystem.build(VarTable(tuple(f"x{i}" for i in range(n))), rows)


@st.composite
def system_and_constraint(draw):
    S = draw(systems())
    cs = tuple(draw(coef) for _ in range(S.n))
    return S, Constraint(cs, draw(st.integers(-3, 3)), GEQ)


@settings(max_examples=60, deadline=None)
@given(system_and_constraint())
def test_law_g4(pair):
    S, c = pair
    A, B = apply_g4(S, c)
    assert q(S) == q(A) + q(B)


@settings(max_examples=60, deadline=None)
@given(systems(), st.integers(0, 5))
def test_law_g5(S, k):
    if S.r == 0:
        return
    rest, neg = apply_g5(S, k % S.r)
    assert q(S) == q(rest) - q(neg)


@settings(max_examples=60, deadline=None)
@given(systems(n_min=2), st.integers(0, 3), st.data())
def test_law_g3_counts(S, a, data):
    i, j = data.draw(st.sampled_from([(i, j) for i in range(S.n) for j in range(S.n) if i != j]))
    S = S.with_constraints(difference_constraint(S.n, i, a, j))
    S2, post = apply_g3(S, i, a, j)
    assert gfq(gf_substitute(solve(S2), *post)) == q(S)


@settings(max_examples=60, deadline=None)
@given(systems(n_max=4, r_max=3))
def test_law_g2(S):
    parts = apply_g2(S)
    joint = TruncatedSeries.one(10)
    for p in parts:
        joint = joint * q(p)
    assert joint == q(S)


@settings(max_examples=60, deadline=None)
@given(system_and_constraint())
def test_implied_is_sound(pair):
    S, c = pair
    if implied(S, c):
        assert len(enumerate_points(S.with_constraints(negate(c)), 15)) == 0
