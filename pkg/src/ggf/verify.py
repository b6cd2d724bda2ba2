"""Acceptance suites: families, identities and seeded random cross-checks.

Every check returns a :class:`CheckResult`; a check passes only when its
comparison holds and it finishes inside its time limit.  Random instances
come from ``random.Random(seed)`` so a seed reproduces a run exactly.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from math import comb
from typing import Callable

from .core import GEQ, Constraint, ConstraintSystem, VarTable, negate
from .families import (
    ALHC_MODES,
    FamilySpec,
    TLHP_MODES,
    alhc_closed,
    alhc_series,
    family_system,
    lhp_closed,
    minc_closed_series,
    minc_nu_series,
    tlhp_series,
    tworow_closed,
    tworow_gstar,
    tworow_gstar_closed,
)
from .gfalg import is_simple_form
from .guidelines import (
    apply_g2,
    apply_g4,
    apply_g5,
    certified_g3,
    difference_constraint,
    implied,
)
from .identities import (
    IDENTITIES,
    binomial_sum1,
    binomial_sum2,
    even2,
    qchu1_general,
    qchu1_specialized,
    qchu2_general,
    qchu2_specialized,
)
from .oracle import count_series, enumerate_points, minc_compositions
from .series import SpecializationMap, TruncatedSeries, specialize
from .solver import SolveStats, solve

DEFAULT_SEED = 20240607


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: float | None = None

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        lim = f" (limit {self.limit:g}s)" if self.limit else ""
        return f"{mark}  {self.name}: {self.detail} [{self.seconds:.2f}s{lim}]"


def _timed(name: str, limit: float | None, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as e:  # a crash is a failed check, reported with its cause
        ok, detail = False, f"{type(e).__name__}: {e}"
    dt = time.perf_counter() - t0
    if limit is not None and dt > limit:
        ok, detail = False, detail + f"; too slow ({dt:.1f}s > {limit:g}s)"
    return CheckResult(name, ok, detail, dt, limit)


def _qseries(S: ConstraintSystem, N: int, **kw) -> TruncatedSeries:
    return specialize(solve(S, **kw), SpecializationMap.all_q(S.n), N)


def _first_bad(items):
    """First failing label among ``(label, ok)`` pairs, or None."""
    return next((label for label, ok in items if not ok), None)


# -- families ----------------------------------------------------------------

def check_minc() -> tuple[bool, str]:
    six = minc_nu_series(6).coeffs()[1:]
    if six != [1, 2, 4, 7, 13, 24]:
        return False, f"q^1..q^6 = {six}"
    if minc_nu_series(30) != minc_closed_series(30):
        return False, "recurrence and closed form differ below q^30"
    if minc_nu_series(18).coeffs() != minc_compositions(18):
        return False, "recurrence and enumeration differ below q^18"
    return True, "1,2,4,7,13,24; recurrence = closed form to q^30 = enumeration to q^18"


def check_alhc() -> tuple[bool, str]:
    N = 40
    for n in range(1, 11):
        ref = alhc_closed(n, N)
        routes = {m: alhc_series(n, N, m) for m in ALHC_MODES}
        if routes["recurrence12"] != ref:
            return False, f"recurrence differs from (-q)_n/(q^2)_n at n={n}"
        if any(routes[m] != routes["recurrence12"] for m in ALHC_MODES):
            return False, f"modes disagree at n={n}"
    for n in range(1, 5):
        if _qseries(family_system(FamilySpec("alhc", n)), 20) != alhc_closed(n, 20):
            return False, f"solver differs at n={n}"
    return True, "n=1..10 three routes = closed form to q^40; solver n<=4 to q^20"


def check_tlhp() -> tuple[bool, str]:
    N = 40
    for n in range(1, 7):
        for k in range(1, n + 1):
            routes = [tlhp_series(n, k, N, m) for m in TLHP_MODES]
            if any(r != routes[0] for r in routes[1:]):
                return False, f"routes disagree at n={n}, k={k}"
    for n in range(1, 6):
        full = tlhp_series(n, n, 30 + comb(n + 1, 2), "recurrence20")
        head = full.coeffs()[: comb(n + 1, 2)]
        if any(head):
            return False, f"low coefficients nonzero at n={n}"
        reduced = TruncatedSeries.from_poly(full.coeffs()[comb(n + 1, 2):], 30)
        if reduced != lhp_closed(n, 30):
            return False, f"k=n quotient differs from lecture hall product at n={n}"
    return True, "n<=6 recurrence = j-sum = closed form to q^40; k=n reduces to prod 1/(1-q^(2i-1)) n<=5"


def check_tworow() -> tuple[bool, str]:
    for n in range(1, 9):
        if tworow_gstar(n, 30) != tworow_gstar_closed(n, 30):
            return False, f"G*_{n} differs from its closed form"
    for n in range(1, 4):
        if count_series(family_system(FamilySpec("tworow", n)), 12) != tworow_closed(n, 12):
            return False, f"oracle differs from 1/((q)_n (q^2)_n) at n={n}"
    return True, "G*_n n<=8 to q^30,s^30; P_n = oracle n<=3 to q^12"


# -- identities --------------------------------------------------------------

def check_identities() -> tuple[bool, str]:
    for name, fn in IDENTITIES.items():
        for n in range(1, 7):
            lhs, rhs = fn(n, 40)
            if lhs != rhs:
                return False, f"{name} fails at n={n}"
    # the opposite sign in the last identity must fail wherever it is visible
    for n in range(1, 5):
        lhs, rhs = even2(n, 40, sign=+1)
        if lhs == rhs:
            return False, f"even2 with + sign unexpectedly holds at n={n}"
    for n in range(9):
        for fn in (binomial_sum1, binomial_sum2):
            lhs, rhs = fn(n)
            if lhs != rhs:
                return False, f"{fn.__name__} fails at n={n}"
    for n in range(6):
        bad = _first_bad(
            [
                ("qchu1", qchu1_general(n)),
                ("qchu2", qchu2_general(n)),
                ("qchu1 at a=-1, c->oo", qchu1_specialized(n)),
                ("qchu2 at a=-1, c=0", qchu2_specialized(n)),
            ]
        )
        if bad:
            return False, f"{bad} fails at n={n}"
    return True, (
        "odd1/even1/odd2/even2 n=1..6 to q^40 (+ sign variant refuted n<=4); "
        "binomial sums exact n=0..8; q-Chu both forms n=0..5"
    )


# -- random systems ------------------------------------------------------------

def random_system(
    rng: random.Random,
    n_max: int = 4,
    r_max: int = 3,
    coeff: int = 3,
    const: int = 0,
    n_min: int = 1,
) -> ConstraintSystem:
    n = rng.randint(n_min, n_max)
    r = rng.randint(1, r_max)
    vars = VarTable(tuple(f"x{i + 1}" for i in range(n)))
    rows = []
    for _ in range(r):
        coeffs = tuple(rng.randint(-coeff, coeff) for _ in range(n))
        if not any(coeffs):
            coeffs = tuple(1 if k == 0 else 0 for k in range(n))
        c = rng.randint(-const, const) if const else 0
        rows.append(Constraint(coeffs, c, GEQ).normalized())
    return ConstraintSystem.build(vars, rows)


def family_systems(n_max: int = 4) -> list[tuple[str, ConstraintSystem]]:
    out = []
    for name in ("minc", "tworow", "alhc", "lhp"):
        for n in range(1, n_max + 1):
            out.append((f"{name} n={n}", family_system(FamilySpec(name, n))))
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            out.append((f"tlhp n={n} k={k}", family_system(FamilySpec("tlhp", n, k))))
    return out


class _Outputs:
    """Solver outputs collected for the structural check."""

    def __init__(self):
        self.gfs = []


def check_solver(seed: int, cases: int, outputs: _Outputs | None = None) -> tuple[bool, str]:
    rng = random.Random(seed)
    stats = SolveStats()
    systems = [(f"random #{t}", random_system(rng)) for t in range(cases)] + family_systems(4)
    for label, S in systems:
        F = solve(S, stats=stats)
        if outputs is not None:
            outputs.gfs.append(F)
        if specialize(F, SpecializationMap.all_q(S.n), 12) != count_series(S, 12):
            return False, f"{label} differs from the oracle:\n{S.format()}"
    return True, (
        f"{cases} random + {len(systems) - cases} family systems = oracle to q^12; "
        f"{stats.measure_checks} measure decreases asserted"
    )


def check_inhomogeneous(seed: int, cases: int, outputs: _Outputs | None = None) -> tuple[bool, str]:
    rng = random.Random(seed + 1)
    done = 0
    homog = 0
    while done < cases:
        S = random_system(rng, n_max=3, const=3)
        if S.is_homogeneous():
            continue
        stats = SolveStats()
        F = solve(S, stats=stats)
        homog += stats.homogenized
        if outputs is not None:
            outputs.gfs.append(F)
        if specialize(F, SpecializationMap.all_q(S.n), 12) != count_series(S, 12):
            return False, f"system differs from the oracle:\n{S.format()}"
        done += 1
    return homog == cases, f"{cases} inhomogeneous systems, coefficient of x_h^1 = oracle to q^12"


def check_structure(outputs: _Outputs) -> tuple[bool, str]:
    bad = [F for F in outputs.gfs if not is_simple_form(F)]
    if not outputs.gfs:
        return False, "no solver outputs collected"
    if bad:
        return False, f"{len(bad)} of {len(outputs.gfs)} outputs break the simple-term form"
    terms = sum(len(F.terms) for F in outputs.gfs)
    return True, f"{len(outputs.gfs)} outputs ({terms} terms): integer * monomial / prod(1 - non-unit monomial)"


# -- guideline laws ------------------------------------------------------------

def _counts(S, N=10):
    return count_series(S, N)


def _convolve(parts, N):
    out = TruncatedSeries.one(N)
    for p in parts:
        out = out * p
    return out


def _random_constraint(rng, n, coeff=3, const=2):
    coeffs = tuple(rng.randint(-coeff, coeff) for _ in range(n))
    if not any(coeffs):
        coeffs = (1,) + (0,) * (n - 1)
    return Constraint(coeffs, rng.randint(-const, const), GEQ)


def law_g4(rng) -> bool:
    S = random_system(rng, n_max=3, r_max=2, const=2)
    c = _random_constraint(rng, S.n)
    a, b = apply_g4(S, c)
    return _counts(S) == _counts(a) + _counts(b)


def law_g5(rng) -> bool:
    S = random_system(rng, n_max=3, r_max=2, const=2)
    rest, neg = apply_g5(S, rng.randrange(S.r))
    return _counts(S) == _counts(rest) - _counts(neg)


def law_g2(rng) -> bool:
    # two independent blocks of variables, interleaved
    n = rng.randint(2, 4)
    cut = rng.randint(1, n - 1)
    perm = list(range(n))
    rng.shuffle(perm)
    blocks = [perm[:cut], perm[cut:]]
    rows = []
    for block in blocks:
        for _ in range(rng.randint(0, 2)):
            coeffs = [0] * n
            for k in block:
                coeffs[k] = rng.randint(-3, 3)
            if any(coeffs):
                rows.append(Constraint(tuple(coeffs), rng.randint(-2, 2), GEQ).normalized())
    S = ConstraintSystem.build(VarTable(tuple(f"x{i + 1}" for i in range(n))), rows)
    parts = apply_g2(S)
    return _counts(S) == _convolve([_counts(P) for P in parts], 10)


def law_g3(rng) -> bool:
    """Certified substitution: points of S and S' correspond under lam_i -> lam_i - a*lam_j."""
    n = rng.randint(2, 3)
    i, j = rng.sample(range(n), 2)
    a = rng.randint(0, 3)
    base = random_system(rng, n_max=n, n_min=n, r_max=2, const=2)
    side = Constraint(difference_constraint(n, i, a, j).coeffs, -rng.randint(0, 2), GEQ)
    S = base.with_constraints(side)
    S2, (jj, ii, aa), step = certified_g3(S, i, a, j)
    if not step.certificate:
        return False
    N = 10
    mine = enumerate_points(S, N)
    theirs = enumerate_points(S2, N)
    # forward map sends each point of S to a point of S' of no larger weight
    for p in mine.points():
        q = list(p)
        q[i] -= a * p[j]
        if not S2.holds(q):
            return False
    back = set()
    for p in theirs.points():
        q = list(p)
        q[i] += a * p[j]
        if sum(q) <= N:
            back.add(tuple(q))
    return back == set(mine.points())


LAWS = {"G4 additivity": law_g4, "G5 subtraction": law_g5, "G2 product": law_g2, "G3 bijection": law_g3}


def check_laws(seed: int, cases: int) -> tuple[bool, str]:
    rng = random.Random(seed + 2)
    for name, law in LAWS.items():
        for t in range(cases):
            if not law(rng):
                return False, f"{name} fails on instance {t}"
    return True, f"{', '.join(LAWS)}: {cases} instances each, oracle counts to q^10"


def check_implied_sound(seed: int, cases: int) -> tuple[bool, str]:
    """Whenever the certificate says IMPLIED, no integer point violates c up to weight 15."""
    rng = random.Random(seed + 3)
    hits = 0
    for _ in range(cases):
        S = random_system(rng, n_max=3, r_max=2, const=2)
        c = _random_constraint(rng, S.n)
        if implied(S, c):
            hits += 1
            if len(enumerate_points(S.with_constraints(negate(c)), 15)):
                return False, f"false certificate for {c.format(S.vars)}"
    return True, f"{hits} of {cases} random implications certified, none refuted to weight 15"


# -- suites ----------------------------------------------------------------------

SUITES = ("all", "families", "identities", "random")


def run_suite(suite: str = "all", seed: int = DEFAULT_SEED, cases: int = 200) -> list[CheckResult]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    out = []
    if suite in ("all", "families"):
        out.append(_timed("1 minc", 5, check_minc))
        out.append(_timed("2 alhc", 30, check_alhc))
        out.append(_timed("3 tlhp", 60, check_tlhp))
        out.append(_timed("4 tworow", 30, check_tworow))
    if suite in ("all", "identities"):
        out.append(_timed("5 identities", 10, check_identities))
    if suite in ("all", "random"):
        coll = _Outputs()
        # default cases=200 gives 200 solver, 100 per-law and 50 inhomogeneous instances
        out.append(_timed("6 solver vs oracle", 300, lambda: check_solver(seed, cases, coll)))
        out.append(_timed("7 guideline laws", None, lambda: check_laws(seed, max(cases // 2, 1))))
        out.append(_timed("8 inhomogeneous", None, lambda: check_inhomogeneous(seed, max(cases // 4, 1), coll)))
        out.append(_timed("9 structure", None, lambda: check_structure(coll)))
    return out
