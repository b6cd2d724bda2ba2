"""Line-oriented constraint files.

::

    # anti-lecture hall, n = 3
    vars: a b c
    a >= b/2 >= c/3 >= 0

Relations are ``>= <= > < =`` and chains expand pairwise.  Expressions are
signed sums of ``int``, ``int*var``, ``var``, ``var/int`` and ``int/int*var``.
Every declared variable is implicitly nonnegative.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .core import ConstraintError, ConstraintSystem, RawConstraint, VarTable, normalize

RELATIONS = (">=", "<=", ">", "<", "=")

_TOKEN = re.compile(r"\s*(?:(>=|<=|>|<|=)|(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/]))")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


def _tokenize(text: str, line: int, offset: int = 0):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", line, offset + col)
        rel, num, name, op = m.groups()
        col = m.start(m.lastindex) + 1 + offset
        if rel:
            out.append(("rel", rel, col))
        elif num:
            out.append(("num", int(num), col))
        elif name:
            out.append(("name", name, col))
        else:
            out.append(("op", op, col))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, vars: VarTable, line: int, end_col: int):
        self.toks = tokens
        self.k = 0
        self.vars = vars
        self.line = line
        self.end_col = end_col

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else None

    def fail(self, msg, tok=None):
        col = tok[2] if tok else self.end_col
        raise ParseError(msg, self.line, col)

    def take(self, kind, value=None):
        tok = self.peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            self.fail(f"expected {want}" + (f", got {tok[1]!r}" if tok else " at end of line"), tok)
        self.k += 1
        return tok

    def number(self):
        tok = self.take("num")
        value = Fraction(tok[1])
        nxt = self.peek()
        if nxt and nxt[:2] == ("op", "/") and self.k + 1 < len(self.toks) and self.toks[self.k + 1][0] == "num":
            self.k += 1
            den = self.take("num")
            if den[1] == 0:
                self.fail("zero denominator", den)
            value /= den[1]
        return value

    def term(self, sign, coeffs, const):
        tok = self.peek()
        if tok is None:
            self.fail("expected a term")
        if tok[0] == "num":
            value = sign * self.number()
            nxt = self.peek()
            if nxt and nxt[:2] == ("op", "*"):
                self.k += 1
                name = self.variable()
                coeffs[name] = coeffs.get(name, 0) + value
                return const
            return const + value
        if tok[0] == "name":
            name = self.variable()
            value = Fraction(sign)
            nxt = self.peek()
            if nxt and nxt[:2] == ("op", "/"):
                self.k += 1
                den = self.take("num")
                if den[1] == 0:
                    self.fail("zero denominator", den)
                value /= den[1]
            coeffs[name] = coeffs.get(name, 0) + value
            return const
        self.fail(f"unexpected {tok[1]!r}", tok)

    def variable(self):
        tok = self.take("name")
        if tok[1] not in self.vars.names:
            self.fail(f"unknown variable {tok[1]!r}", tok)
        return tok[1]

    def expr(self):
        coeffs: dict[str, Fraction] = {}
        const = Fraction(0)
        sign = 1
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            self.k += 1
        const = self.term(sign, coeffs, const)
        while True:
            tok = self.peek()
            if not (tok and tok[0] == "op" and tok[1] in "+-"):
                return coeffs, const
            self.k += 1
            const = self.term(-1 if tok[1] == "-" else 1, coeffs, const)

    def chain(self) -> list[RawConstraint]:
        exprs = [self.expr()]
        rels = []
        while self.peek() is not None:
            rels.append(self.take("rel")[1])
            exprs.append(self.expr())
        if not rels:
            self.fail("expected a relation")
        out = []
        for (lc, lk), rel, (rc, rk) in zip(exprs, rels, exprs[1:]):
            coeffs = dict(lc)
            for name, v in rc.items():
                coeffs[name] = coeffs.get(name, 0) - v
            out.append(RawConstraint(coeffs, lk - rk, rel))
        return out


def parse_relation(text: str, vars: VarTable, line: int = 1, offset: int = 0) -> list[RawConstraint]:
    """Raw constraints of one (possibly chained) relation line."""
    toks = _tokenize(text, line, offset)
    if not toks:
        raise ParseError("empty constraint", line, offset + 1)
    return _Parser(toks, vars, line, offset + len(text.rstrip()) + 1).chain()


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def parse_raw(text: str) -> tuple[VarTable, list[RawConstraint]]:
    vars = None
    raw: list[RawConstraint] = []
    for no, full in enumerate(text.splitlines(), 1):
        line = _strip_comment(full)
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        if stripped.startswith("vars:"):
            if vars is not None:
                raise ParseError("duplicate vars line", no, indent + 1)
            names = stripped[5:].split()
            for name in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                    raise ParseError(f"bad variable name {name!r}", no, line.index(name) + 1)
            try:
                vars = VarTable(tuple(names))
            except ConstraintError as e:
                raise ParseError(str(e), no, indent + 1) from None
            continue
        if vars is None:
            raise ParseError("constraints before the vars line", no, indent + 1)
        raw += parse_relation(line, vars, no)
    if vars is None:
        raise ParseError("missing vars line", 1, 1)
    return vars, raw


def parse_file(text: str) -> ConstraintSystem:
    vars, raw = parse_raw(text)
    try:
        return normalize(raw, vars)
    except ConstraintError as e:
        raise ParseError(str(e)) from None
