"""Linear constraint systems over nonnegative integer variables.

A constraint is stored as ``constant + sum(coeffs[k] * lam_k)  REL  0`` with
``REL`` one of ``>=`` (GEQ) or ``=`` (EQ), all numbers integers.  Every
variable carries exactly one *basic* constraint, either ``lam_i >= 0`` or
``lam_i = 0``; the remaining constraints are *nonbasic*.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

GEQ = ">="
EQ = "="

_RELATIONS = (">=", "<=", ">", "<", "=")


class ConstraintError(ValueError):
    """Malformed constraint input."""


@dataclass(frozen=True)
class VarTable:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            dup = sorted({n for n in self.names if self.names.count(n) > 1})
            raise ConstraintError(f"duplicate variable name(s): {', '.join(dup)}")

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ConstraintError(f"unknown variable {name!r}") from None

    def fresh_name(self, stem: str = "h") -> str:
        name, k = stem, 0
        while name in self.names:
            k += 1
            name = f"{stem}{k}"
        return name

    def without(self, i: int) -> "VarTable":
        return VarTable(self.names[:i] + self.names[i + 1:])


def _content(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[int, ...]
    constant: int = 0
    relation: str = GEQ
    basic: bool = False

    def __post_init__(self):
        if self.relation not in (GEQ, EQ):
            raise ConstraintError(f"relation must be >= or =, got {self.relation!r}")

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def value(self, point: Sequence[int]):
        return self.constant + sum(c * p for c, p in zip(self.coeffs, point) if c)

    def holds(self, point: Sequence[int]) -> bool:
        v = self.value(point)
        return v >= 0 if self.relation == GEQ else v == 0

    def normalized(self) -> "Constraint":
        """Divide through by the content; EQ constraints get a positive leading coefficient."""
        g = _content(self.coeffs + (self.constant,))
        coeffs, const = self.coeffs, self.constant
        if g > 1:
            coeffs = tuple(c // g for c in coeffs)
            const //= g
        if self.relation == EQ:
            lead = next((c for c in coeffs + (const,) if c), 0)
            if lead < 0:
                coeffs = tuple(-c for c in coeffs)
                const = -const
        if coeffs == self.coeffs and const == self.constant:
            return self
        return Constraint(coeffs, const, self.relation, self.basic)

    def is_homogeneous(self) -> bool:
        return self.constant == 0

    def support(self) -> frozenset[int]:
        return frozenset(k for k, c in enumerate(self.coeffs) if c)

    def format(self, vars: VarTable) -> str:
        parts = []
        for name, c in zip(vars.names, self.coeffs):
            if not c:
                continue
            mag = abs(c)
            term = name if mag == 1 else f"{mag}*{name}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        lhs = " ".join(parts) if parts else "0"
        return f"{lhs} {self.relation} {-self.constant}"


def basic_geq(n: int, i: int) -> Constraint:
    coeffs = [0] * n
    coeffs[i] = 1
    return Constraint(tuple(coeffs), 0, GEQ, basic=True)


def basic_zero(n: int, i: int) -> Constraint:
    coeffs = [0] * n
    coeffs[i] = 1
    return Constraint(tuple(coeffs), 0, EQ, basic=True)


@dataclass(frozen=True)
class ConstraintSystem:
    vars: VarTable
    nonbasic: tuple[Constraint, ...]
    basic: tuple[Constraint, ...]

    def __post_init__(self):
        n = len(self.vars)
        if len(self.basic) != n:
            raise ConstraintError("need exactly one basic constraint per variable")
        for i, b in enumerate(self.basic):
            unit = tuple(1 if k == i else 0 for k in range(n))
            if not b.basic or b.coeffs != unit or b.constant != 0:
                raise ConstraintError(f"malformed basic constraint for {self.vars.names[i]}")
        for c in self.nonbasic:
            if c.n != n:
                raise ConstraintError("coefficient vector length does not match variables")
            if c.basic:
                raise ConstraintError("basic constraint in nonbasic list")

    @classmethod
    def build(cls, vars, nonbasic=(), zero=()) -> "ConstraintSystem":
        """System with ``lam_i >= 0`` for every variable except those listed in *zero*."""
        if not isinstance(vars, VarTable):
            vars = VarTable(tuple(vars))
        n = len(vars)
        zero = {vars.index(z) if isinstance(z, str) else z for z in zero}
        basic = tuple(basic_zero(n, i) if i in zero else basic_geq(n, i) for i in range(n))
        return cls(vars, tuple(nonbasic), basic)

    @property
    def n(self) -> int:
        return len(self.vars)

    @property
    def r(self) -> int:
        return len(self.nonbasic)

    def zeroed(self, i: int) -> bool:
        return self.basic[i].relation == EQ

    def constraints(self) -> tuple[Constraint, ...]:
        return self.nonbasic + self.basic

    def holds(self, point: Sequence[int]) -> bool:
        return all(c.holds(point) for c in self.basic) and all(
            c.holds(point) for c in self.nonbasic
        )

    def is_homogeneous(self) -> bool:
        return all(c.constant == 0 for c in self.nonbasic)

    def with_constraints(self, *cs: Constraint) -> "ConstraintSystem":
        return ConstraintSystem(self.vars, self.nonbasic + tuple(cs), self.basic)

    def without_index(self, idx: int) -> "ConstraintSystem":
        if not 0 <= idx < self.r:
            raise ConstraintError(f"no nonbasic constraint with index {idx}")
        return ConstraintSystem(self.vars, self.nonbasic[:idx] + self.nonbasic[idx + 1:], self.basic)

    def with_basic_zero(self, i: int) -> "ConstraintSystem":
        basic = list(self.basic)
        basic[i] = basic_zero(self.n, i)
        return ConstraintSystem(self.vars, self.nonbasic, tuple(basic))

    def format(self) -> str:
        lines = [f"vars: {' '.join(self.vars.names)}"]
        lines += [c.format(self.vars) for c in self.nonbasic]
        lines += [b.format(self.vars) for b in self.basic if b.relation == EQ]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RawConstraint:
    """``sum(coeffs[name] * name) + constant  relation  0`` with rational numbers."""

    coeffs: Mapping[str, Fraction]
    constant: Fraction = Fraction(0)
    relation: str = ">="


def _as_raw(item) -> RawConstraint:
    if isinstance(item, RawConstraint):
        return item
    coeffs, const, rel = item
    return RawConstraint(dict(coeffs), Fraction(const), rel)


def constraint_from_raw(item, vars: VarTable) -> Constraint:
    """One rational constraint as a normalized integer ``>=`` or ``=`` constraint."""
    rc = _as_raw(item)
    if rc.relation not in _RELATIONS:
        raise ConstraintError(f"unknown relation {rc.relation!r}")
    values = [Fraction(v) for v in rc.coeffs.values()] + [Fraction(rc.constant)]
    scale = lcm(*(v.denominator for v in values))
    coeffs = [0] * len(vars)
    for name, v in rc.coeffs.items():
        coeffs[vars.index(name)] += int(Fraction(v) * scale)
    const = int(Fraction(rc.constant) * scale)
    rel = rc.relation
    if rel in ("<=", "<"):
        coeffs = [-c for c in coeffs]
        const = -const
        rel = ">=" if rel == "<=" else ">"
    if rel == ">":
        const -= 1
        rel = GEQ
    return Constraint(tuple(coeffs), const, GEQ if rel == ">=" else EQ).normalized()


def normalize(raw: Iterable, vars) -> ConstraintSystem:
    """Turn rational constraints with relations ``>= <= > < =`` into a ConstraintSystem.

    Each constraint is scaled to integers by the lcm of its denominators, ``<=``
    and ``<`` are flipped, a strict ``e > 0`` becomes ``e - 1 >= 0``, and the
    result is divided by its content.  A constraint of the form ``lam_i = 0``
    becomes the basic constraint of ``lam_i``; ``c*lam_i >= 0`` with ``c > 0``
    duplicates the implicit basic constraint and is dropped.
    """
    if not isinstance(vars, VarTable):
        vars = VarTable(tuple(vars))
    nonbasic: list[Constraint] = []
    zero: set[int] = set()
    for item in raw:
        c = constraint_from_raw(item, vars)
        support = c.support()
        if len(support) == 1 and c.constant == 0:
            (i,) = support
            if c.relation == EQ:
                zero.add(i)
                continue
            if c.coeffs[i] > 0:
                continue
        nonbasic.append(c)
    return ConstraintSystem.build(vars, nonbasic, zero)


def negate(c: Constraint) -> Constraint:
    """The complement ``-a0 - sum(a_k lam_k) >= 1`` of a GEQ constraint."""
    if c.relation != GEQ:
        raise ConstraintError("negation is only defined for >= constraints")
    return Constraint(tuple(-a for a in c.coeffs), -c.constant - 1, GEQ).normalized()


def substitute_constraint(S: ConstraintSystem, i: int, a: int, j: int) -> ConstraintSystem:
    """Replace ``lam_i`` by ``lam_i + a*lam_j`` in every nonbasic constraint."""
    if i == j:
        raise ConstraintError("substitution needs two distinct variables")
    if a == 0:
        return S
    out = []
    for c in S.nonbasic:
        if c.coeffs[i]:
            coeffs = list(c.coeffs)
            coeffs[j] += a * coeffs[i]
            c = Constraint(tuple(coeffs), c.constant, c.relation).normalized()
        out.append(c)
    return ConstraintSystem(S.vars, tuple(out), S.basic)


def homogenize(S: ConstraintSystem) -> tuple[ConstraintSystem, int]:
    """Move every constant term onto a new last variable with basic ``>= 0``."""
    name = S.vars.fresh_name("h")
    vars = VarTable(S.vars.names + (name,))
    n = len(vars)
    nonbasic = tuple(
        Constraint(c.coeffs + (c.constant,), 0, c.relation).normalized() for c in S.nonbasic
    )
    basic = tuple(Constraint(b.coeffs + (0,), 0, b.relation, True) for b in S.basic)
    basic += (basic_geq(n, n - 1),)
    return ConstraintSystem(vars, nonbasic, basic), n - 1
