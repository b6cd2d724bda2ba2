"""Automatic generating-function computation by guideline-driven Elliott reduction.

The recursion works on the first nonbasic constraint ``c_1`` of a homogeneous
system and tracks the measure ``(r, M, e_max, |m|, e_min)``: r is the number of
nonbasic constraints, M and m the largest positive and smallest negative
coefficient of ``c_1`` (0 if none) and e_max, e_min their multiplicities.
Every recursive call strictly decreases the measure lexicographically.

* r = 0: product of ``1/(1 - x_i)`` over the variables not forced to zero.
* m = 0: ``c_1`` is redundant and dropped.
* M = 0: every variable with a negative coefficient in ``c_1`` is forced to 0.
* otherwise split on ``lam_i >= lam_j`` (i carries m, j carries M):
  branch A substitutes ``lam_i <- lam_i + lam_j`` and maps back with
  ``x_j <- x_j x_i``; branch B substitutes ``lam_j <- lam_j + lam_i``, removes
  the residual ``lam_j > 0`` as ``F(C') - F(C' with lam_j = 0)`` and maps back
  with ``x_i <- x_i x_j``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import gcd
from typing import Optional

from .core import EQ, ConstraintSystem
from .gfalg import (
    Monomial,
    RationalGF,
    SimpleTerm,
    gf_canonicalize,
    gf_extract_coeff,
    var_mono,
)
from .core import homogenize

DEFAULT_STEP_BUDGET = 10**6

Rows = tuple[tuple[int, ...], ...]
Zero = tuple[bool, ...]
Terms = tuple[tuple[int, Monomial, tuple[Monomial, ...]], ...]


class BudgetExceeded(RuntimeError):
    """The reduction needed more steps than the configured budget."""


class MeasureViolation(AssertionError):
    pass


@dataclass(frozen=True, order=True)
class ReductionMeasure:
    r: int
    M: int
    e_max: int
    m_abs: int
    e_min: int

    @classmethod
    def of(cls, rows: Rows) -> "ReductionMeasure":
        if not rows:
            return cls(0, 0, 0, 0, 0)
        c1 = rows[0]
        M = max((c for c in c1 if c > 0), default=0)
        m = min((c for c in c1 if c < 0), default=0)
        return cls(
            len(rows),
            M,
            c1.count(M) if M else 0,
            -m,
            c1.count(m) if m else 0,
        )


@dataclass(frozen=True)
class ElliottCase:
    kind: str  # "empty", "redundant", "zero", "split"
    i: Optional[int] = None
    j: Optional[int] = None
    zeroed: tuple[int, ...] = ()
    before: Optional[ReductionMeasure] = None
    after: tuple[ReductionMeasure, ...] = ()


def _reduce_row(row) -> tuple[int, ...]:
    g = 0
    for c in row:
        g = gcd(g, c)
    if g > 1:
        row = tuple(c // g for c in row)
    return tuple(row)


def _clean(rows, zero: Zero, drop: bool = True) -> Rows:
    """Zero the columns of forced variables and reduce contents.

    With ``drop`` set, rows without a negative coefficient are removed: they
    are implied by the basic constraints.
    """
    out = []
    for row in rows:
        row = tuple(0 if z else c for c, z in zip(row, zero))
        if drop and min(row, default=0) >= 0:
            continue
        out.append(_reduce_row(row))
    return tuple(out)


def _prepare(S: ConstraintSystem) -> tuple[Rows, Zero]:
    if not S.is_homogeneous():
        raise ValueError("the reduction needs a homogeneous system")
    zero = tuple(S.zeroed(i) for i in range(S.n))
    rows = []
    for c in S.nonbasic:
        rows.append(c.coeffs)
        if c.relation == EQ:
            rows.append(tuple(-a for a in c.coeffs))
    return _clean(rows, zero, drop=False), zero


def _children(rows: Rows, zero: Zero):
    """Case analysis on c_1; yields the case descriptor and child systems."""
    c1 = rows[0]
    M = max((c for c in c1 if c > 0), default=0)
    m = min((c for c in c1 if c < 0), default=0)
    if m == 0:
        return ElliottCase("redundant"), [(rows[1:], zero)]
    if M == 0:
        hit = tuple(k for k, c in enumerate(c1) if c < 0)
        z2 = tuple(z or k in hit for k, z in enumerate(zero))
        return ElliottCase("zero", zeroed=hit), [(_clean(rows, z2), z2)]
    i = c1.index(m)
    j = c1.index(M)
    # branch A: lam_i <- lam_i + lam_j  (column j += column i)
    rows_a = tuple(_add_col(r, j, i) for r in rows)
    # branch B: lam_j <- lam_j + lam_i  (column i += column j)
    rows_b = tuple(_add_col(r, i, j) for r in rows)
    zb = tuple(z or k == j for k, z in enumerate(zero))
    children = [
        (_clean(rows_a, zero), zero),
        (_clean(rows_b, zero), zero),
        (_clean(rows_b, zb), zb),
    ]
    return ElliottCase("split", i=i, j=j), children


def _add_col(row, target: int, source: int):
    if not row[source]:
        return row
    out = list(row)
    out[target] += row[source]
    return tuple(out)


def elliott_case(S: ConstraintSystem) -> ElliottCase:
    """Which reduction case applies to the first nonbasic constraint, with measures."""
    rows, zero = _prepare(S)
    if not rows:
        return ElliottCase("empty", before=ReductionMeasure.of(rows))
    case, kids = _children(rows, zero)
    return ElliottCase(
        case.kind,
        i=case.i,
        j=case.j,
        zeroed=case.zeroed,
        before=ReductionMeasure.of(rows),
        after=tuple(ReductionMeasure.of(r) for r, _ in kids),
    )


class _Reducer:
    def __init__(self, n: int, budget: int, check_measure: bool = True):
        self.n = n
        self.budget = budget
        self.steps = 0
        self.check_measure = check_measure
        self.memo: dict = {}
        self.measure_checks = 0

    def _sub(self, terms: Terms, j: int, i: int) -> Terms:
        """x_j <- x_j * x_i on every monomial."""

        def s(m):
            if not m[j]:
                return m
            out = list(m)
            out[i] += m[j]
            return tuple(out)

        return tuple((c, s(num), tuple(sorted(s(d) for d in den))) for c, num, den in terms)

    @staticmethod
    def _merge(parts) -> Terms:
        acc: dict = {}
        for sign, terms in parts:
            for c, num, den in terms:
                key = (num, den)
                acc[key] = acc.get(key, 0) + sign * c
        return tuple((c, num, den) for (num, den), c in sorted(acc.items()) if c)

    def solve(self, rows: Rows, zero: Zero) -> Terms:
        key = (rows, zero)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceeded(f"reduction exceeded the step budget of {self.budget}")
        if not rows:
            den = tuple(var_mono(self.n, k) for k in range(self.n) if not zero[k])
            result: Terms = ((1, (0,) * self.n, tuple(sorted(den))),)
        else:
            case, kids = _children(rows, zero)
            if self.check_measure:
                before = ReductionMeasure.of(rows)
                for r, _ in kids:
                    after = ReductionMeasure.of(r)
                    self.measure_checks += 1
                    if not after < before:
                        raise MeasureViolation(f"measure did not decrease: {before} -> {after}")
            if case.kind != "split":
                result = self.solve(*kids[0])
            else:
                i, j = case.i, case.j
                a = self._sub(self.solve(*kids[0]), j, i)
                b1 = self.solve(*kids[1])
                b2 = self.solve(*kids[2])
                b = self._sub(self._merge([(1, b1), (-1, b2)]), i, j)
                result = self._merge([(1, a), (1, b)])
        self.memo[key] = result
        return result


def step_budget() -> int:
    env = os.environ.get("GGF_STEP_BUDGET")
    return int(env) if env else DEFAULT_STEP_BUDGET


@dataclass
class SolveStats:
    steps: int = 0
    measure_checks: int = 0
    homogenized: bool = False
    fast_path: bool = False


def solve(
    S: ConstraintSystem,
    budget: int | None = None,
    fast_path: bool = False,
    stats: SolveStats | None = None,
) -> RationalGF:
    """Full generating function of the nonnegative integer solutions of S.

    Inhomogeneous systems are homogenized with a fresh variable ``h`` and the
    coefficient of ``x_h^1`` is extracted afterwards.
    """
    budget = step_budget() if budget is None else budget
    if not S.is_homogeneous():
        H, v = homogenize(S)
        F = solve(H, budget=budget, fast_path=fast_path, stats=stats)
        if stats is not None:
            stats.homogenized = True
        return gf_extract_coeff(F, v, 1)
    if fast_path:
        F = cmatrix_fast_path(S)
        if F is not None:
            if stats is not None:
                stats.fast_path = True
            return F
    rows, zero = _prepare(S)
    red = _Reducer(S.n, budget)
    terms = red.solve(rows, zero)
    if stats is not None:
        stats.steps += red.steps
        stats.measure_checks += red.measure_checks
    return gf_canonicalize(
        RationalGF(S.vars, tuple(SimpleTerm(c, num, den) for c, num, den in terms))
    )


def cmatrix_fast_path(S: ConstraintSystem) -> RationalGF | None:
    """Product formula when the square constraint matrix has a nonnegative integer inverse."""
    n = S.n
    if (
        S.r != n
        or not S.is_homogeneous()
        or any(c.relation == EQ for c in S.nonbasic)
        or any(S.zeroed(i) for i in range(n))
    ):
        return None
    from sympy import Matrix

    C = Matrix([list(c.coeffs) for c in S.nonbasic])
    if C.det() == 0:
        return None
    B = C.inv()
    if any(not (b.is_integer and b >= 0) for b in B):
        return None
    den = tuple(tuple(int(B[row, col]) for row in range(n)) for col in range(n))
    return RationalGF(S.vars, (SimpleTerm(1, (0,) * n, den),))
