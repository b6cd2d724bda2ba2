"""Ground truth by exhaustive enumeration of nonnegative integer points."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import EQ, ConstraintSystem
from .series import TruncatedSeries


@dataclass
class SolutionSet:
    by_weight: dict[int, list[tuple[int, ...]]] = field(default_factory=dict)

    def count(self, weight: int) -> int:
        return len(self.by_weight.get(weight, ()))

    def points(self):
        for w in sorted(self.by_weight):
            yield from self.by_weight[w]

    def __len__(self):
        return sum(len(v) for v in self.by_weight.values())


def enumerate_points(S: ConstraintSystem, N: int) -> SolutionSet:
    """All solutions of weight <= N, grouped by weight and lex-sorted.

    Depth-first over lam_1..lam_n.  A branch is cut when some constraint can no
    longer be met: with residual weight R left for the unassigned variables,
    their contribution lies in ``[R*min(0, min c), R*max(0, max c)]``.
    """
    if N < 0:
        raise ValueError("weight bound must be nonnegative")
    n = S.n
    rows = [(c.coeffs, c.constant, c.relation == EQ) for c in S.nonbasic]
    # suffix extremes of the coefficients of unassigned variables
    suf_max = [[0] * (n + 1) for _ in rows]
    suf_min = [[0] * (n + 1) for _ in rows]
    for r, (coeffs, _, _) in enumerate(rows):
        for k in range(n - 1, -1, -1):
            suf_max[r][k] = max(suf_max[r][k + 1], coeffs[k])
            suf_min[r][k] = min(suf_min[r][k + 1], coeffs[k])
    fixed = [S.zeroed(i) for i in range(n)]
    out = SolutionSet()
    point = [0] * n
    partial = [c for _, c, _ in rows]

    def feasible(k: int, residual: int) -> bool:
        for r, (_, _, is_eq) in enumerate(rows):
            hi = partial[r] + residual * suf_max[r][k]
            if hi < 0:
                return False
            if is_eq and partial[r] + residual * suf_min[r][k] > 0:
                return False
        return True

    def rec(k: int, used: int):
        if k == n:
            if all(v == 0 if is_eq else v >= 0 for v, (_, _, is_eq) in zip(partial, rows)):
                out.by_weight.setdefault(used, []).append(tuple(point))
            return
        top = 0 if fixed[k] else N - used
        for v in range(top + 1):
            point[k] = v
            for r, (coeffs, _, _) in enumerate(rows):
                partial[r] += coeffs[k] * v
            if feasible(k + 1, N - used - v):
                rec(k + 1, used + v)
            for r, (coeffs, _, _) in enumerate(rows):
                partial[r] -= coeffs[k] * v
        point[k] = 0

    if feasible(0, N):
        rec(0, 0)
    for w in out.by_weight:
        out.by_weight[w].sort()
    return out


def count_series(S: ConstraintSystem, N: int) -> TruncatedSeries:
    sols = enumerate_points(S, N)
    return TruncatedSeries.from_poly([sols.count(w) for w in range(N + 1)], N)


def slice_polynomial(S: ConstraintSystem, N: int) -> list[tuple[int, ...]]:
    """Exponent vectors of the coefficient of q^N in F(q x_1, ..., q x_n)."""
    return enumerate_points(S, N).by_weight.get(N, [])


def format_dump(sols: SolutionSet, N: int) -> str:
    lines = []
    for w in range(N + 1):
        lines.append(f"# weight {w}")
        lines += [" ".join(map(str, p)) for p in sols.by_weight.get(w, ())]
    return "\n".join(lines) + "\n"


def parse_dump(text: str) -> SolutionSet:
    out = SolutionSet()
    weight = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("# weight"):
            weight = int(line.split()[-1])
            out.by_weight.setdefault(weight, [])
            continue
        out.by_weight[weight].append(tuple(int(v) for v in line.split()))
    for w in [w for w, v in out.by_weight.items() if not v]:
        del out.by_weight[w]
    return out


def minc_compositions(N: int) -> list[int]:
    """Number of compositions of each weight 0..N whose parts at most double.

    Weight 0 counts the empty composition.
    """
    counts = [0] * (N + 1)
    counts[0] = 1

    def rec(prev: int, used: int):
        for part in range(1, min(2 * prev, N - used) + 1):
            counts[used + part] += 1
            rec(part, used + part)

    for first in range(1, N + 1):
        counts[first] += 1
        rec(first, first)
    return counts
