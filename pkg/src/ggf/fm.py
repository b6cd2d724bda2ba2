"""Exact Fourier-Motzkin elimination for rational feasibility of ``A x + b >= 0``."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Row = tuple[tuple[int, ...], Fraction]


def _canon(coeffs: Sequence[int], const) -> Row:
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    const = Fraction(const)
    if g > 1:
        coeffs = tuple(c // g for c in coeffs)
        const /= g
    return tuple(coeffs), const


def _prune(rows: Iterable[Row]) -> dict[tuple[int, ...], Fraction] | None:
    """Keep the tightest constant per direction; None if a constant row fails."""
    best: dict[tuple[int, ...], Fraction] = {}
    for coeffs, const in rows:
        if not any(coeffs):
            if const < 0:
                return None
            continue
        old = best.get(coeffs)
        if old is None or const < old:
            best[coeffs] = const
    return best


def feasible(rows: Iterable[tuple[Sequence[int], object]], n: int):
    """Decide rational feasibility of ``sum(a_k x_k) + b >= 0`` for all rows.

    Variables are eliminated in increasing index order.  Returns
    ``(True, point)`` with a rational witness, or ``(False, None)``.
    """
    current = _prune(_canon(a, b) for a, b in rows)
    if current is None:
        return False, None
    stages = []
    for k in range(n):
        stages.append(current)
        pos = [(a, b) for a, b in current.items() if a[k] > 0]
        neg = [(a, b) for a, b in current.items() if a[k] < 0]
        rest = [(a, b) for a, b in current.items() if a[k] == 0]
        for ap, bp in pos:
            for an, bn in neg:
                sp, sn = -an[k], ap[k]
                coeffs = tuple(sp * x + sn * y for x, y in zip(ap, an))
                rest.append(_canon(coeffs, sp * bp + sn * bn))
        current = _prune(rest)
        if current is None:
            return False, None
    point = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        lo = hi = None
        for a, b in stages[k].items():
            if not a[k]:
                continue
            other = b + sum(a[t] * point[t] for t in range(k + 1, n) if a[t])
            bound = -other / a[k]
            if a[k] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        point[k] = lo if lo is not None else (hi if hi is not None else Fraction(0))
    return True, tuple(point)
