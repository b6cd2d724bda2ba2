"""Hand derivations with the guidelines, driven by a small step language.

A script is a list of lines, one command each (``#`` starts a comment).
Commands act on the current goal: the first child of the last branching
step, else the first open goal in depth-first order; ``goal ID`` selects
another.  Goal ids are dotted paths: the input system is ``1``, its
branches ``1.1``, ``1.2``, ...

``g1``
    close a goal whose constraints are single-variable lower bounds.
``g2``
    split into independent components (product).
``g3 I A J [assume]``
    substitute ``I <- I + A*J``; I and J are names or 1-based indices.  The
    side condition ``I - A*J >= 0`` must be certified unless ``assume`` is given.
``g4 <constraint> [implied]``
    branch on a constraint and its negation (sum).
``g5 remove K [redundant]``
    drop the K-th (1-based) nonbasic constraint and subtract the branch with its
    negation.
``solve``
    close the goal with the automatic solver.
``goal ID``
    make goal ID current.

Goals left open at the end are closed by the automatic solver, and the trace
says so.  The trailing flags on ``g4``/``g5`` are assertions: the engine
checks them with :func:`ggf.guidelines.implied` and records the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import ConstraintError, ConstraintSystem, constraint_from_raw
from .gfalg import RationalGF, gf_canonicalize, gf_substitute, render
from .guidelines import (
    DerivationStep,
    GuidelineError,
    apply_g2,
    apply_g4,
    apply_g5,
    certified_g3,
    close_by_g1,
    implied,
    product_of_components,
)
from .solver import solve
from .textparse import ParseError, parse_relation


class ScriptError(ValueError):
    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class Goal:
    id: str
    system: ConstraintSystem
    kind: str | None = None  # None while open
    children: list["Goal"] = field(default_factory=list)
    step: DerivationStep | None = None
    post: tuple[int, int, int] | None = None  # g3 back-substitution (j, i, a)
    gf: RationalGF | None = None

    @property
    def open(self) -> bool:
        return self.kind is None

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass
class Derivation:
    root: Goal
    trace: list[str]
    gf: RationalGF


def _var_ref(token: str, S: ConstraintSystem) -> int:
    if token.isdigit():
        k = int(token)
        if not 1 <= k <= S.n:
            raise GuidelineError(f"variable index {k} out of range 1..{S.n}")
        return k - 1
    try:
        return S.vars.index(token)
    except (KeyError, ValueError, ConstraintError):
        raise GuidelineError(f"unknown variable {token!r}") from None


class _Engine:
    def __init__(self, S: ConstraintSystem):
        self.root = Goal("1", S)
        self.current: Goal | None = None
        self.trace: list[str] = ["goal 1:", *_indent(S.format())]

    def goals(self):
        return list(self.root.walk())

    def first_open(self):
        return next((g for g in self.root.walk() if g.open), None)

    def target(self, line: int) -> Goal:
        g = self.current if self.current is not None and self.current.open else self.first_open()
        if g is None:
            raise ScriptError("no open goal", line)
        return g

    def branch(self, g: Goal, kind: str, systems, step=None, post=None):
        g.kind = kind
        g.step = step
        g.post = post
        g.children = [Goal(f"{g.id}.{k}", S) for k, S in enumerate(systems, 1)]
        self.current = g.children[0] if g.children else None
        for c in g.children:
            self.trace.append(f"  -> goal {c.id}:")
            self.trace += _indent(c.system.format(), 6)

    def run(self, cmd: str, args: list[str], raw: str, line: int):
        if cmd == "goal":
            if len(args) != 1:
                raise ScriptError("usage: goal ID", line)
            hit = [g for g in self.goals() if g.id == args[0]]
            if not hit:
                raise ScriptError(f"no goal {args[0]}", line)
            if not hit[0].open:
                raise ScriptError(f"goal {args[0]} is already closed", line)
            self.current = hit[0]
            self.trace.append(f"goal {args[0]}")
            return
        g = self.target(line)
        S = g.system
        self.trace.append(f"[{g.id}] {raw}")
        if cmd == "solve":
            if args:
                raise ScriptError("solve takes no arguments", line)
            g.kind, g.gf = "solve", solve(S)
            self.current = None
        elif cmd == "g1":
            g.kind, g.gf = "g1", close_by_g1(S)
            g.step = DerivationStep("G1", {})
            self.current = None
        elif cmd == "g2":
            parts = apply_g2(S)
            self.branch(g, "g2", parts, DerivationStep("G2", {"components": len(parts)}))
        elif cmd == "g3":
            if len(args) not in (3, 4) or (len(args) == 4 and args[3] != "assume"):
                raise ScriptError("usage: g3 I A J [assume]", line)
            i, j = _var_ref(args[0], S), _var_ref(args[2], S)
            try:
                a = int(args[1])
            except ValueError:
                raise ScriptError(f"bad multiplier {args[1]!r}", line) from None
            cert = "assume" if len(args) == 4 else None
            S2, post, step = certified_g3(S, i, a, j, cert)
            how = "assumed" if cert else "certified"
            self.trace.append(f"  {S.vars.names[i]} - {a}*{S.vars.names[j]} >= 0 {how}")
            self.branch(g, "g3", [S2], step, post)
        elif cmd == "g4":
            text = raw.split(None, 1)[1] if len(args) else ""
            flag = text.rstrip().endswith(" implied")
            if flag:
                text = text.rstrip()[: -len(" implied")]
            try:
                (rc,) = parse_relation(text, S.vars, line)
            except ValueError as e:
                if isinstance(e, ParseError):
                    raise ScriptError(str(e), line) from None
                raise ScriptError("g4 needs a single relation", line) from None
            c = constraint_from_raw(rc, S.vars)
            cert = None
            if flag:
                cert = implied(S, c)
                if not cert:
                    raise ScriptError("constraint is not certified as implied", line)
                self.trace.append("  implied: certified")
            self.branch(g, "g4", apply_g4(S, c), DerivationStep("G4", {"c": c}, cert))
        elif cmd == "g5":
            if len(args) not in (2, 3) or args[0] != "remove" or (len(args) == 3 and args[2] != "redundant"):
                raise ScriptError("usage: g5 remove K [redundant]", line)
            try:
                k = int(args[1]) - 1
            except ValueError:
                raise ScriptError(f"bad constraint index {args[1]!r}", line) from None
            if not 0 <= k < S.r:
                raise ScriptError(f"no nonbasic constraint {k + 1} (goal has {S.r})", line)
            c = S.nonbasic[k]
            cert = None
            if len(args) == 3:
                cert = implied(S.without_index(k), c)
                if not cert:
                    raise ScriptError("constraint is not certified as redundant", line)
                self.trace.append("  redundant: certified")
            self.trace.append(f"  removing {c.format(S.vars)}")
            self.branch(g, "g5", apply_g5(S, k), DerivationStep("G5", {"c": c}, cert))
        else:
            raise ScriptError(f"unknown command {cmd!r}", line)

    def finish(self) -> RationalGF:
        for g in self.goals():
            if g.open:
                self.trace.append(f"[{g.id}] open at end of script: closed by the automatic solver")
                g.kind, g.gf = "solve", solve(g.system)
        return _evaluate(self.root)


def _indent(text: str, k: int = 4) -> list[str]:
    return [" " * k + ln for ln in text.splitlines()]


def _evaluate(g: Goal) -> RationalGF:
    if g.kind in ("solve", "g1"):
        return g.gf
    parts = [_evaluate(c) for c in g.children]
    if g.kind == "g2":
        out = product_of_components(parts, g.system.vars)
    elif g.kind == "g3":
        j, i, a = g.post
        out = gf_substitute(parts[0], j, i, a)
    elif g.kind == "g4":
        out = parts[0] + parts[1]
    else:
        out = parts[0] - parts[1]
    g.gf = gf_canonicalize(out)
    return g.gf


def run_script(S: ConstraintSystem, script: str) -> Derivation:
    eng = _Engine(S)
    for no, full in enumerate(script.splitlines(), 1):
        raw = full.split("#", 1)[0].strip()
        if not raw:
            continue
        cmd, *args = raw.split()
        try:
            eng.run(cmd, args, raw, no)
        except (GuidelineError, ConstraintError) as e:
            raise ScriptError(str(e), no) from None
    gf = eng.finish()
    eng.trace.append("result:")
    eng.trace += _indent(render(gf), 2)
    return Derivation(eng.root, eng.trace, gf)
