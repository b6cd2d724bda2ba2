"""The five guidelines as rewrite steps on constraint systems.

Each ``apply_g*`` returns the systems whose generating functions combine into
the generating function of the input; the caller does the combining (sum,
difference, product or substitution).  Guideline 3 needs the side condition
``lam_i - a*lam_j >= 0`` to be implied, certified by :func:`implied`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from . import fm
from .core import (
    EQ,
    GEQ,
    Constraint,
    ConstraintError,
    ConstraintSystem,
    VarTable,
    negate,
    substitute_constraint,
)
from .gfalg import RationalGF, SimpleTerm, gf_product, var_mono


class Status(Enum):
    IMPLIED = "implied"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ImplicationResult:
    status: Status
    witness: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.status is Status.IMPLIED


@dataclass(frozen=True)
class DerivationStep:
    kind: str  # "G1".."G5"
    params: dict = field(default_factory=dict)
    certificate: ImplicationResult | str | None = None

    def __post_init__(self):
        if self.kind == "G3" and self.certificate is None:
            raise GuidelineError("guideline 3 needs a certificate or an explicit override")


class GuidelineError(ValueError):
    pass


def _fm_rows(S: ConstraintSystem, extra: Constraint):
    for c in S.constraints() + (extra,):
        yield c.coeffs, c.constant
        if c.relation == EQ:
            yield tuple(-a for a in c.coeffs), -c.constant


def implied(S: ConstraintSystem, c: Constraint) -> ImplicationResult:
    """IMPLIED when S together with the negation of c is infeasible over the rationals.

    Sound but incomplete for integer implication: UNKNOWN carries a rational
    point satisfying S and the negation of c.
    """
    if c.relation != GEQ:
        raise ConstraintError("implication is checked for >= constraints only")
    ok, point = fm.feasible(_fm_rows(S, negate(c)), S.n)
    if not ok:
        return ImplicationResult(Status.IMPLIED)
    return ImplicationResult(Status.UNKNOWN, point)


def difference_constraint(n: int, i: int, a: int, j: int) -> Constraint:
    """``lam_i - a*lam_j >= 0``."""
    coeffs = [0] * n
    coeffs[i] += 1
    coeffs[j] -= a
    return Constraint(tuple(coeffs), 0, GEQ)


# -- guideline 1 ------------------------------------------------------------

def apply_g1(t: int, name: str = "x") -> RationalGF:
    """Generating function ``x^t / (1 - x)`` of the single constraint ``lam >= t``."""
    if t < 0:
        raise GuidelineError("guideline 1 needs t >= 0")
    return RationalGF.term(VarTable((name,)), (t,), [(1,)])


def lower_bounds(S: ConstraintSystem) -> list[int] | None:
    """Per-variable lower bounds if every nonbasic constraint is ``c*lam_i >= t`` with c > 0."""
    lows = [0] * S.n
    for c in S.nonbasic:
        support = c.support()
        if c.relation != GEQ or len(support) != 1:
            return None
        (i,) = support
        a = c.coeffs[i]
        if a < 0:
            return None
        lows[i] = max(lows[i], -(c.constant // a))  # ceil(-const / a)
    return lows


def close_by_g1(S: ConstraintSystem) -> RationalGF:
    """Product of guideline-1 factors over the variables (guideline 2 glues them)."""
    lows = lower_bounds(S)
    if lows is None:
        raise GuidelineError("system is not a set of single-variable lower bounds")
    n = S.n
    num = [0] * n
    den = []
    for i, t in enumerate(lows):
        if S.zeroed(i):
            if t > 0:
                return RationalGF.zero(S.vars)
            continue
        num[i] = t
        den.append(var_mono(n, i))
    return RationalGF(S.vars, (SimpleTerm(1, tuple(num), tuple(den)),))


# -- guideline 2 ------------------------------------------------------------

def apply_g2(S: ConstraintSystem) -> list[ConstraintSystem]:
    """Split into connected components of the variable-sharing graph."""
    parent = list(range(S.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in S.nonbasic:
        sup = sorted(c.support())
        for k in sup[1:]:
            parent[find(k)] = find(sup[0])
    groups: dict[int, list[int]] = {}
    for i in range(S.n):
        groups.setdefault(find(i), []).append(i)
    comps = []
    for idx in sorted(groups.values()):
        vars = VarTable(tuple(S.vars.names[i] for i in idx))
        rows = [
            Constraint(tuple(c.coeffs[i] for i in idx), c.constant, c.relation)
            for c in S.nonbasic
            if c.support() and min(c.support()) in idx
        ]
        # constant-only constraints ride with the first component
        if not comps:
            rows += [
                Constraint(tuple(0 for _ in idx), c.constant, c.relation)
                for c in S.nonbasic
                if not c.support()
            ]
        zero = [k for k, i in enumerate(idx) if S.zeroed(i)]
        comps.append(ConstraintSystem.build(vars, rows, zero))
    return comps


def embed(f: RationalGF, vars: VarTable) -> RationalGF:
    """Re-index a generating function onto a larger variable table by name."""
    pos = [vars.index(name) for name in f.vars.names]
    n = len(vars)

    def lift(m):
        out = [0] * n
        for k, e in zip(pos, m):
            out[k] = e
        return tuple(out)

    return RationalGF(
        vars, tuple(SimpleTerm(t.coeff, lift(t.num), tuple(lift(d) for d in t.den)) for t in f.terms)
    )


def product_of_components(parts: list[RationalGF], vars: VarTable) -> RationalGF:
    out = RationalGF.one(vars)
    for p in parts:
        out = gf_product(out, embed(p, vars))
    return out


# -- guideline 3 ------------------------------------------------------------

def apply_g3(S: ConstraintSystem, i: int, a: int, j: int, cert=None):
    """Substitute ``lam_i <- lam_i + a*lam_j``.

    Returns ``(S', (j, i, a))``; the generating function of S is
    ``gf_substitute(F_{S'}, j, i, a)``.  With ``cert`` left as None the side
    condition is certified here; pass ``"assume"`` to override.
    """
    S2, post, _ = certified_g3(S, i, a, j, cert)
    return S2, post


def certified_g3(S: ConstraintSystem, i: int, a: int, j: int, cert=None):
    """Like :func:`apply_g3`, also returning the DerivationStep record."""
    if i == j:
        raise GuidelineError("guideline 3 needs i != j")
    if cert is None:
        cert = implied(S, difference_constraint(S.n, i, a, j))
    if cert != "assume" and not (isinstance(cert, ImplicationResult) and cert):
        raise GuidelineError(
            f"cannot certify {S.vars.names[i]} - {a}*{S.vars.names[j]} >= 0; "
            "pass an explicit override to proceed"
        )
    step = DerivationStep("G3", {"i": i, "a": a, "j": j}, cert)
    return substitute_constraint(S, i, a, j), (j, i, a), step


# -- guidelines 4 and 5 -----------------------------------------------------

def apply_g4(S: ConstraintSystem, c: Constraint):
    """Branches ``S + c`` and ``S + not c``; their generating functions add."""
    if c.n != S.n:
        raise GuidelineError("constraint is over a different set of variables")
    return S.with_constraints(c), S.with_constraints(negate(c))


def apply_g5(S: ConstraintSystem, c):
    """Branches ``S - c`` and ``(S - c) + not c``; subtract the second from the first.

    ``c`` is a nonbasic constraint of S or its index in ``S.nonbasic``.
    """
    if isinstance(c, int):
        idx = c
        if not 0 <= idx < S.r:
            raise GuidelineError(f"no nonbasic constraint with index {idx}")
        c = S.nonbasic[idx]
    else:
        try:
            idx = S.nonbasic.index(c)
        except ValueError:
            raise GuidelineError("constraint is not in the system") from None
    if c.relation != GEQ:
        raise GuidelineError("guideline 5 needs a >= constraint")
    rest = S.without_index(idx)
    return rest, rest.with_constraints(negate(c))
