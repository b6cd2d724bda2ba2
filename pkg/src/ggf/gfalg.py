"""Generating functions as finite sums of simple terms.

A simple term is ``coeff * x^num / prod_k (1 - x^den_k)`` where ``num`` and the
``den_k`` are integer exponent vectors (Laurent monomials).  No common
denominators are ever formed; two RationalGFs are compared through their
truncated series expansions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import VarTable

Monomial = tuple[int, ...]


class GFError(ValueError):
    """Invalid generating-function operation."""


def unit(n: int) -> Monomial:
    return (0,) * n


def is_unit(m: Monomial) -> bool:
    return not any(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def var_mono(n: int, i: int, e: int = 1) -> Monomial:
    return tuple(e if k == i else 0 for k in range(n))


def factor_key(m: Monomial):
    """Denominator order: by the first variable present, then lexicographically."""
    first = next((k for k, e in enumerate(m) if e), len(m))
    return first, m


@dataclass(frozen=True)
class SimpleTerm:
    coeff: int
    num: Monomial
    den: tuple[Monomial, ...] = ()

    def __post_init__(self):
        for m in self.den:
            if is_unit(m):
                raise GFError("denominator factor (1 - 1) is zero")
            if len(m) != len(self.num):
                raise GFError("monomial length mismatch")
        den = tuple(sorted(self.den, key=factor_key))
        if den != self.den:
            object.__setattr__(self, "den", den)

    @property
    def key(self):
        return self.num, self.den


@dataclass(frozen=True)
class RationalGF:
    vars: VarTable
    terms: tuple[SimpleTerm, ...] = ()

    def __post_init__(self):
        n = len(self.vars)
        for t in self.terms:
            if len(t.num) != n:
                raise GFError("term does not match variable table")

    @classmethod
    def zero(cls, vars: VarTable) -> "RationalGF":
        return cls(vars, ())

    @classmethod
    def one(cls, vars: VarTable) -> "RationalGF":
        return cls(vars, (SimpleTerm(1, unit(len(vars))),))

    @classmethod
    def term(cls, vars: VarTable, num: Monomial, den: Iterable[Monomial] = (), coeff: int = 1):
        return cls(vars, (SimpleTerm(coeff, tuple(num), tuple(den)),))

    @property
    def n(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not gf_canonicalize(self).terms

    def __add__(self, other):
        return gf_combine("add", self, other)

    def __sub__(self, other):
        return gf_combine("sub", self, other)

    def __neg__(self):
        return RationalGF(self.vars, tuple(SimpleTerm(-t.coeff, t.num, t.den) for t in self.terms))

    def __mul__(self, other):
        if isinstance(other, int):
            return gf_canonicalize(
                RationalGF(self.vars, tuple(SimpleTerm(other * t.coeff, t.num, t.den) for t in self.terms))
            )
        return gf_product(self, other)

    __rmul__ = __mul__

    def __str__(self):
        return render(self)


def gf_canonicalize(f: RationalGF) -> RationalGF:
    merged: dict = {}
    for t in f.terms:
        merged[t.key] = merged.get(t.key, 0) + t.coeff
    terms = tuple(
        SimpleTerm(c, num, den) for (num, den), c in sorted(merged.items()) if c
    )
    return RationalGF(f.vars, terms)


def _check_vars(f: RationalGF, g: RationalGF):
    if f.vars != g.vars:
        raise GFError("generating functions live over different variable tables")


def gf_combine(op: str, f: RationalGF, g: RationalGF) -> RationalGF:
    _check_vars(f, g)
    if op == "add":
        other = g.terms
    elif op == "sub":
        other = tuple(SimpleTerm(-t.coeff, t.num, t.den) for t in g.terms)
    else:
        raise GFError(f"unknown operation {op!r}")
    return gf_canonicalize(RationalGF(f.vars, f.terms + other))


def gf_mul(f: RationalGF, num_factor: Monomial, new_den_factors: Iterable[Monomial] = ()) -> RationalGF:
    """Multiply by ``x^num_factor / prod (1 - x^d)``."""
    new_den = tuple(new_den_factors)
    for d in new_den:
        if is_unit(d):
            raise GFError("denominator factor (1 - 1) is zero")
    terms = tuple(
        SimpleTerm(t.coeff, mono_mul(t.num, num_factor), t.den + new_den) for t in f.terms
    )
    return RationalGF(f.vars, terms)


def gf_product(f: RationalGF, g: RationalGF) -> RationalGF:
    _check_vars(f, g)
    terms = tuple(
        SimpleTerm(s.coeff * t.coeff, mono_mul(s.num, t.num), s.den + t.den)
        for s in f.terms
        for t in g.terms
    )
    return gf_canonicalize(RationalGF(f.vars, terms))


def _sub_mono(m: Monomial, j: int, i: int, a: int) -> Monomial:
    if not m[j]:
        return m
    out = list(m)
    out[i] += a * m[j]
    return tuple(out)


def gf_substitute(f: RationalGF, j: int, i: int, a: int) -> RationalGF:
    """Apply ``x_j <- x_j * x_i**a`` to every monomial."""
    if i == j:
        raise GFError("substitution needs two distinct variables")
    if a == 0:
        return f
    terms = []
    for t in f.terms:
        den = tuple(_sub_mono(d, j, i, a) for d in t.den)
        if any(is_unit(d) for d in den):
            raise GFError("substitution collapsed a geometric factor")
        terms.append(SimpleTerm(t.coeff, _sub_mono(t.num, j, i, a), den))
    return gf_canonicalize(RationalGF(f.vars, tuple(terms)))


def _drop(m: Monomial, v: int) -> Monomial:
    return m[:v] + m[v + 1:]


def gf_extract_coeff(f: RationalGF, v: int, k: int) -> RationalGF:
    """Coefficient of ``x_v**k`` (k in {0, 1}) as a RationalGF over the other variables."""
    if k not in (0, 1):
        raise GFError("only the coefficients of x^0 and x^1 can be extracted")
    vars = f.vars.without(v)
    out: list[SimpleTerm] = []
    for t in f.terms:
        if t.num[v] < 0 or any(d[v] < 0 for d in t.den):
            raise GFError(f"negative exponent of {f.vars.names[v]} in a term")
        e = t.num[v]
        keep = tuple(_drop(d, v) for d in t.den if d[v] == 0)
        if e == k:
            out.append(SimpleTerm(t.coeff, _drop(t.num, v), keep))
        elif k == 1 and e == 0:
            mult: dict[Monomial, int] = {}
            for d in t.den:
                if d[v] == 1:
                    mult[d] = mult.get(d, 0) + 1
            for d, dm in mult.items():
                num = _drop(mono_mul(t.num, d), v)
                out.append(SimpleTerm(dm * t.coeff, num, keep))
    return gf_canonicalize(RationalGF(vars, tuple(out)))


def denominator_exponents(f: RationalGF) -> list[Monomial]:
    return sorted({d for t in f.terms for d in t.den})


def is_simple_form(f: RationalGF) -> bool:
    """Every term is integer * monomial / product of (1 - non-unit monomial)."""
    n = f.n
    for t in f.terms:
        if not isinstance(t.coeff, int) or len(t.num) != n:
            return False
        if any(len(d) != n or is_unit(d) for d in t.den):
            return False
    return True


# --- text form -------------------------------------------------------------

def render_monomial(m: Sequence[int], vars: VarTable) -> str:
    parts = []
    for name, e in zip(vars.names, m):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def render_term(t: SimpleTerm, vars: VarTable) -> str:
    sign = "+" if t.coeff > 0 else "-"
    mag = abs(t.coeff)
    mono = render_monomial(t.num, vars)
    if mag != 1:
        mono = f"{mag}" if mono == "1" else f"{mag}*{mono}"
    if not t.den:
        return f"{sign} {mono}"
    groups: list[tuple[Monomial, int]] = []
    for d in t.den:
        if groups and groups[-1][0] == d:
            groups[-1] = (d, groups[-1][1] + 1)
        else:
            groups.append((d, 1))
    factors = []
    for d, mult in groups:
        fac = f"(1 - {render_monomial(d, vars)})"
        factors.append(fac if mult == 1 else f"{fac}^{mult}")
    return f"{sign} {mono} / {' '.join(factors)}"


def render(f: RationalGF) -> str:
    """One term per line; the zero function renders as ``0``."""
    f = gf_canonicalize(f)
    if not f.terms:
        return "0"
    return "\n".join(render_term(t, f.vars) for t in f.terms)


_FACTOR = re.compile(r"\(1 - ([^)]*)\)(?:\^(\d+))?")


def parse_monomial(text: str, vars: VarTable) -> tuple[int, Monomial]:
    """Parse ``3*x1^2*x3`` into (coefficient, exponents)."""
    exps = [0] * len(vars)
    coeff = 1
    text = text.strip()
    if not text:
        raise GFError("empty monomial")
    for part in text.split("*"):
        part = part.strip()
        if re.fullmatch(r"\d+", part):
            coeff *= int(part)
            continue
        m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?", part)
        if not m:
            raise GFError(f"cannot parse monomial factor {part!r}")
        exps[vars.index(m.group(1))] += int(m.group(2) or 1)
    return coeff, tuple(exps)


def parse_term(line: str, vars: VarTable) -> SimpleTerm:
    line = line.strip()
    if line[:1] not in "+-":
        raise GFError(f"term must start with a sign: {line!r}")
    sign = 1 if line[0] == "+" else -1
    body = line[1:].strip()
    num_text, _, den_text = body.partition("/")
    coeff, num = parse_monomial(num_text, vars)
    den: list[Monomial] = []
    rest = den_text.strip()
    pos = 0
    while pos < len(rest):
        m = _FACTOR.match(rest, pos)
        if not m:
            raise GFError(f"cannot parse denominator {rest[pos:]!r}")
        c, d = parse_monomial(m.group(1), vars)
        if c != 1:
            raise GFError("denominator monomials carry no coefficient")
        den += [d] * int(m.group(2) or 1)
        pos = m.end()
        while pos < len(rest) and rest[pos] == " ":
            pos += 1
    return SimpleTerm(sign * coeff, num, tuple(den))


def parse(text: str, vars: VarTable) -> RationalGF:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if lines == ["0"]:
        return RationalGF.zero(vars)
    return RationalGF(vars, tuple(parse_term(ln, vars) for ln in lines))
