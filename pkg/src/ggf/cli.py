"""Command line: ``ggf solve|expand|count|family|verify|steps``.

Exit codes: 0 ok, 1 verification failure, 2 usage or parse error,
3 step budget exceeded.
"""

from __future__ import annotations

import argparse
import sys

from .core import ConstraintError
from .derivation import ScriptError, run_script
from .families import (
    ALHC_MODES,
    FAMILIES,
    TLHP_MODES,
    FamilyError,
    FamilySpec,
    alhc_closed,
    alhc_series,
    family_system,
    lhp_closed,
    minc_closed_series,
    minc_nu_series,
    tlhp_series,
    tworow_closed,
    tworow_series,
)
from .gfalg import GFError, render
from .guidelines import GuidelineError
from .oracle import count_series, enumerate_points, format_dump, minc_compositions
from .series import SeriesError, SpecializationMap, TruncatedSeries, format_series, specialize
from .solver import BudgetExceeded, solve
from .textparse import ParseError, parse_file
from .verify import DEFAULT_SEED, SUITES, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

FAMILY_MODES = {
    "minc": ("recurrence", "closed", "oracle"),
    "tworow": ("recurrence", "closed", "solver", "oracle"),
    "alhc": ALHC_MODES + ("closed", "solver", "oracle"),
    "tlhp": TLHP_MODES + ("solver", "oracle"),
    "lhp": ("closed", "solver", "oracle"),
}


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load(path: str):
    try:
        return parse_file(_read(path))
    except ParseError as e:
        raise UsageError(f"{path}: {e}") from None


def _emit(series: TruncatedSeries, coeffs: bool):
    if coeffs:
        print(", ".join(str(v) for v in series.coeffs()))
    else:
        print(format_series(series))


def cmd_solve(args):
    S = _load(args.file)
    print(render(solve(S, fast_path=args.fast_path)))


def cmd_expand(args):
    S = _load(args.file)
    mapping = {}
    if args.track is not None:
        if args.track not in S.vars.names:
            raise UsageError(f"unknown variable {args.track!r}")
        mapping[args.track] = (0, 1)
    m = SpecializationMap.from_mapping(S.vars.names, mapping)
    _emit(specialize(solve(S), m, args.weight), args.coeffs)


def cmd_count(args):
    S = _load(args.file)
    if args.list:
        sys.stdout.write(format_dump(enumerate_points(S, args.weight), args.weight))
    else:
        _emit(count_series(S, args.weight), args.coeffs)


def family_series_by_mode(name: str, n: int | None, k: int | None, N: int, mode: str | None) -> TruncatedSeries:
    modes = FAMILY_MODES[name]
    mode = mode or modes[0]
    if mode not in modes:
        raise UsageError(f"family {name} has modes {', '.join(modes)}")
    if name == "minc":
        if k is not None:
            raise UsageError("minc takes no --k")
        if mode == "recurrence":
            return minc_nu_series(N)
        if mode == "closed":
            return minc_closed_series(N)
        return TruncatedSeries.from_poly(minc_compositions(N), N)
    if n is None:
        raise UsageError(f"family {name} needs --n")
    fam = FamilySpec(name, n, k)
    if mode == "solver":
        S = family_system(fam)
        return specialize(solve(S), SpecializationMap.all_q(S.n), N)
    if mode == "oracle":
        return count_series(family_system(fam), N)
    if name == "tworow":
        return tworow_series(n, N) if mode == "recurrence" else tworow_closed(n, N)
    if name == "alhc":
        return alhc_closed(n, N) if mode == "closed" else alhc_series(n, N, mode)
    if name == "tlhp":
        return tlhp_series(n, k, N, mode)
    return lhp_closed(n, N)


def cmd_family(args):
    _emit(family_series_by_mode(args.name, args.n, args.k, args.weight, args.mode), args.coeffs)


def cmd_verify(args):
    results = run_suite(args.suite, seed=args.seed, cases=args.cases)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_steps(args):
    S = _load(args.file)
    d = run_script(S, _read(args.script))
    print("\n".join(d.trace))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ggf", description="Generating functions of linear constraint systems.")
    sub = p.add_subparsers(dest="command", required=True)

    def weight(sp):
        sp.add_argument("--weight", "-N", type=int, required=True, help="truncation order in q")
        sp.add_argument("--coeffs", action="store_true", help="print the coefficient list only")

    sp = sub.add_parser("solve", help="full generating function of a constraint file")
    sp.add_argument("file")
    sp.add_argument("--fast-path", action="store_true", help="try the inverse-matrix product formula first")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("expand", help="series of the generating function with every variable set to q")
    sp.add_argument("file")
    weight(sp)
    sp.add_argument("--track", metavar="VAR", help="send VAR to s instead of q")
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("count", help="count solutions by brute force")
    sp.add_argument("file")
    weight(sp)
    sp.add_argument("--list", action="store_true", help="dump the solutions grouped by weight")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("family", help="series of a solved family")
    sp.add_argument("name", choices=FAMILIES)
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    weight(sp)
    sp.add_argument("--mode", help="route: recurrence, closed form, solver or oracle (family dependent)")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("verify", help="run the acceptance suites")
    sp.add_argument("--suite", choices=SUITES, default="all")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--cases", type=int, default=200)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("steps", help="run a guideline derivation script")
    sp.add_argument("file")
    sp.add_argument("script")
    sp.set_defaults(func=cmd_steps)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "weight", 0) < 0:
            raise UsageError("--weight must be nonnegative")
        code = args.func(args)
    except BudgetExceeded as e:
        print(f"ggf: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ScriptError, FamilyError, GuidelineError, ConstraintError, GFError, SeriesError) as e:
        print(f"ggf: {e}", file=sys.stderr)
        return EXIT_USAGE
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
