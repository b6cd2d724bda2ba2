"""Truncated power series in q, or in q and s, with exact integer coefficients.

A univariate series keeps the coefficients of ``q^0 .. q^N``; a bivariate one
keeps ``q^a s^b`` for ``a <= N``, ``b <= S``.  Univariate series act as
s-free constants when combined with bivariate ones.  Coefficients are Python
ints held in numpy object arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .gfalg import RationalGF


class SeriesError(ValueError):
    pass


def _zeros(shape) -> np.ndarray:
    a = np.empty(shape, dtype=object)
    a.fill(0)
    return a


class TruncatedSeries:
    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=object)
        if c.ndim not in (1, 2) or c.shape[0] == 0 or (c.ndim == 2 and c.shape[1] == 0):
            raise SeriesError("series needs a nonempty 1d or 2d coefficient table")
        self.c = c

    # -- construction ---------------------------------------------------
    @classmethod
    def zero(cls, N: int, S: int | None = None) -> "TruncatedSeries":
        return cls(_zeros(N + 1 if S is None else (N + 1, S + 1)))

    @classmethod
    def monomial(cls, N: int, qe: int = 0, se: int = 0, S: int | None = None, coeff: int = 1):
        out = cls.zero(N, S)
        if qe < 0 or se < 0:
            raise SeriesError("negative exponent in a power series")
        if S is None and se:
            raise SeriesError("univariate series cannot carry s")
        if qe <= N and (S is None or se <= S):
            out.c[(qe,) if S is None else (qe, se)] = coeff
        return out

    @classmethod
    def one(cls, N: int, S: int | None = None) -> "TruncatedSeries":
        return cls.monomial(N, 0, 0, S)

    @classmethod
    def from_poly(cls, coeffs: Sequence[int], N: int) -> "TruncatedSeries":
        out = cls.zero(N)
        for k, v in enumerate(coeffs[: N + 1]):
            out.c[k] = v
        return out

    # -- shape ----------------------------------------------------------
    @property
    def N(self) -> int:
        return self.c.shape[0] - 1

    @property
    def S(self) -> int | None:
        return self.c.shape[1] - 1 if self.c.ndim == 2 else None

    @property
    def bivariate(self) -> bool:
        return self.c.ndim == 2

    def copy(self) -> "TruncatedSeries":
        return TruncatedSeries(self.c.copy())

    def truncate(self, N: int, S: int | None = None) -> "TruncatedSeries":
        if N > self.N:
            raise SeriesError("cannot extend a truncated series")
        if self.bivariate:
            S = self.S if S is None else S
            if S > self.S:
                raise SeriesError("cannot extend a truncated series")
            return TruncatedSeries(self.c[: N + 1, : S + 1].copy())
        return TruncatedSeries(self.c[: N + 1].copy())

    def lift(self, S: int) -> "TruncatedSeries":
        """View a univariate series as a bivariate one (constant in s)."""
        if self.bivariate:
            return self.truncate(self.N, S)
        out = _zeros((self.N + 1, S + 1))
        out[:, 0] = self.c
        return TruncatedSeries(out)

    def coeffs(self) -> list:
        return self.c.tolist()

    def __getitem__(self, idx):
        return self.c[idx]

    def _common(self, other: "TruncatedSeries"):
        N = min(self.N, other.N)
        if self.bivariate or other.bivariate:
            S = min(x.S for x in (self, other) if x.bivariate)
            return N, S
        return N, None

    def _fit(self, N, S) -> np.ndarray:
        if S is None:
            return self.c[: N + 1]
        if self.bivariate:
            return self.c[: N + 1, : S + 1]
        return self.lift(S).c[: N + 1]

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries.monomial(self.N, S=self.S, coeff=other)
        N, S = self._common(other)
        return TruncatedSeries(self._fit(N, S) + other._fit(N, S))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries(self.c * other)
        N, S = self._common(other)
        a, b = self, other
        if a.bivariate and not b.bivariate:
            a, b = b, a
        A = a._fit(N, None if not a.bivariate else S)
        B = b._fit(N, S if b.bivariate else None)
        out = _zeros(N + 1 if S is None else (N + 1, S + 1))
        if not a.bivariate:
            for k in np.flatnonzero(A):
                out[k:] += A[k] * B[: N + 1 - k]
        else:
            for k, l in zip(*np.nonzero(A)):
                out[k:, l:] += A[k, l] * B[: N + 1 - k, : S + 1 - l]
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.c.shape == other.c.shape and bool(np.all(self.c == other.c))

    def __hash__(self):
        return hash(tuple(self.c.flat))

    def agrees(self, other: "TruncatedSeries", N: int | None = None) -> bool:
        """Coefficientwise equality on the common truncation (or up to q^N)."""
        M, S = self._common(other)
        if N is not None:
            M = min(M, N)
        return bool(np.all(self._fit(M, S) == other._fit(M, S)))

    # -- special products -------------------------------------------------
    def shift(self, qe: int = 0, se: int = 0) -> "TruncatedSeries":
        """Multiply by ``q^qe s^se`` (nonnegative exponents)."""
        if qe < 0 or se < 0:
            raise SeriesError("negative shift; use div_q_power for exact division")
        out = _zeros(self.c.shape)
        if not self.bivariate:
            if se:
                raise SeriesError("univariate series cannot carry s")
            if qe <= self.N:
                out[qe:] = self.c[: self.N + 1 - qe]
        elif qe <= self.N and se <= self.S:
            out[qe:, se:] = self.c[: self.N + 1 - qe, : self.S + 1 - se]
        return TruncatedSeries(out)

    def mul_one_minus(self, qe: int, se: int = 0, coeff: int = 1) -> "TruncatedSeries":
        """Multiply by ``1 - coeff * q^qe s^se``."""
        return self - self.shift(qe, se) * coeff

    def div_one_minus(self, qe: int, se: int = 0, coeff: int = 1) -> "TruncatedSeries":
        """Divide by ``1 - coeff * q^qe s^se``, which needs a positive exponent."""
        if qe < 0 or se < 0 or (qe == 0 and se == 0):
            raise SeriesError("non-positively-graded factor")
        if se and not self.bivariate:
            return self.lift(self.N).div_one_minus(qe, se, coeff)
        out = self.c.copy()
        if not self.bivariate:
            for k in range(qe, self.N + 1):
                out[k] += coeff * out[k - qe]
        elif qe > 0:
            for k in range(qe, self.N + 1):
                out[k, se:] += coeff * out[k - qe, : self.S + 1 - se]
        else:
            for l in range(se, self.S + 1):
                out[:, l] += coeff * out[:, l - se]
        return TruncatedSeries(out)

    def div_q_power(self, m: int) -> "TruncatedSeries":
        """Exact division by ``q^m``; the result is known only up to ``q^(N-m)``."""
        if m == 0:
            return self.copy()
        if np.any(self.c[:m] != 0):
            raise SeriesError(f"series is not divisible by q^{m}")
        return TruncatedSeries(self.c[m:].copy())

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be +1 or -1."""
        c0 = self.c[0, 0] if self.bivariate else self.c[0]
        if c0 not in (1, -1):
            raise SeriesError("constant term is not a unit over the integers")
        N = self.N
        if not self.bivariate:
            out = _zeros(N + 1)
            out[0] = c0
            a = self.c
            for k in range(1, N + 1):
                acc = 0
                for t in range(1, k + 1):
                    if a[t]:
                        acc += a[t] * out[k - t]
                out[k] = -c0 * acc
            return TruncatedSeries(out)
        # Bivariate: invert as a series in q with coefficients series in s.
        S = self.S
        rows = [TruncatedSeries(self.c[k].copy()) for k in range(N + 1)]
        inv0 = rows[0].inverse()
        res = [inv0]
        for k in range(1, N + 1):
            acc = TruncatedSeries.zero(S)
            for t in range(1, k + 1):
                if np.any(rows[t].c != 0):
                    acc = acc + rows[t] * res[k - t]
            res.append(-(acc * inv0))
        return TruncatedSeries(np.array([r.c for r in res], dtype=object))

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return NotImplemented

    # -- substitutions for s ----------------------------------------------
    def subs_s(self, qe: int, se: int, S: int | None = None) -> "TruncatedSeries":
        """Replace ``s`` by ``q^qe s^se`` (se >= 1); result truncated at s^S."""
        if not self.bivariate:
            return self.copy()
        if se < 1 or qe < 0:
            raise SeriesError("substitution must keep s with a positive power")
        S = self.S if S is None else S
        if S > self.S * se:
            raise SeriesError("not enough s-terms for this substitution")
        out = _zeros((self.N + 1, S + 1))
        for b in range(0, S // se + 1):
            shift = qe * b
            if shift > self.N:
                break
            out[shift:, b * se] += self.c[: self.N + 1 - shift, b]
        return TruncatedSeries(out)

    def at_s(self, qe: int) -> "TruncatedSeries":
        """Set ``s = q^qe`` (qe >= 1).

        The result is exact up to ``q^min(N, qe*(S+1)-1)`` and truncated there.
        """
        if not self.bivariate:
            return self.copy()
        if qe < 1:
            raise SeriesError("s = q^0 does not give a convergent series")
        N = min(self.N, qe * (self.S + 1) - 1)
        out = _zeros(N + 1)
        for b in range(0, min(self.S, N // qe) + 1):
            shift = qe * b
            out[shift:] += self.c[: N + 1 - shift, b]
        return TruncatedSeries(out)

    def div_qpower_minus_s(self, m: int, S_out: int) -> "TruncatedSeries":
        """Exact quotient by ``(q^m - s)`` of a bivariate series known to be divisible.

        Uses ``d_k = -sum_{j>=1} q^{m(j-1)} c_{k+j}``; the divisibility is
        checked through ``c_0 == q^m d_0``.
        """
        if m < 1:
            raise SeriesError("need m >= 1")
        need = S_out + self.N // m + 1
        if self.S < need:
            raise SeriesError(f"need s-terms up to {need}, have {self.S}")
        N = self.N
        out = _zeros((N + 1, S_out + 1))
        for k in range(S_out + 1):
            col = _zeros(N + 1)
            for j in range(1, N // m + 2):
                shift = m * (j - 1)
                if shift > N:
                    break
                col[shift:] += self.c[: N + 1 - shift, k + j]
            out[:, k] = -col
        check = _zeros(N + 1)
        check[m:] = out[: N + 1 - m, 0]
        if np.any(check != self.c[:, 0]):
            raise SeriesError(f"series is not divisible by (q^{m} - s)")
        return TruncatedSeries(out)

    # -- printing -------------------------------------------------------
    def __repr__(self):
        return f"TruncatedSeries({self.coeffs()!r})"

    def __str__(self):
        return format_series(self)


def _mono_str(coeff, a, b):
    body = []
    if a:
        body.append("q" if a == 1 else f"q^{a}")
    if b:
        body.append("s" if b == 1 else f"s^{b}")
    if not body:
        return str(coeff)
    mono = "*".join(body)
    if coeff == 1:
        return mono
    if coeff == -1:
        return f"-{mono}"
    return f"{coeff}*{mono}"


def format_series(f: TruncatedSeries) -> str:
    """``c0 + c1*q + ...``; zero coefficients omitted, ends with the order term."""
    parts = []
    if f.bivariate:
        for a in range(f.N + 1):
            for b in range(f.S + 1):
                if f.c[a, b]:
                    parts.append(_mono_str(f.c[a, b], a, b))
    else:
        for a in range(f.N + 1):
            if f.c[a]:
                parts.append(_mono_str(f.c[a], a, 0))
    text = " + ".join(parts) if parts else "0"
    text = text.replace("+ -", "- ")
    if f.bivariate:
        return f"{text} + O(q^{f.N + 1}, s^{f.S + 1})"
    return f"{text} + O(q^{f.N + 1})"


def format_coeff_lines(f: TruncatedSeries) -> str:
    """One integer per line (q-degree order); bivariate rows are space separated."""
    if f.bivariate:
        return "\n".join(" ".join(str(v) for v in row) for row in f.c.tolist()) + "\n"
    return "\n".join(str(v) for v in f.c.tolist()) + "\n"


# --- specialization of generating functions --------------------------------

@dataclass(frozen=True)
class SpecializationMap:
    """Per variable weight pair (q-weight, s-weight)."""

    weights: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for w, u in self.weights:
            if w < 0 or u < 0:
                raise SeriesError("specialization weights must be nonnegative")

    @classmethod
    def all_q(cls, n: int) -> "SpecializationMap":
        return cls(((1, 0),) * n)

    @classmethod
    def from_mapping(cls, names: Sequence[str], mapping: Mapping[str, tuple[int, int]], default=(1, 0)):
        return cls(tuple(mapping.get(nm, default) for nm in names))

    @property
    def uses_s(self) -> bool:
        return any(u for _, u in self.weights)

    def grade(self, mono) -> tuple[int, int]:
        a = sum(w * e for (w, _), e in zip(self.weights, mono))
        b = sum(u * e for (_, u), e in zip(self.weights, mono))
        return a, b


def specialize(f: RationalGF, m: SpecializationMap, N: int, S: int | None = None) -> TruncatedSeries:
    """Expand ``f`` with ``x_i -> q^{w_i} s^{u_i}`` up to q^N (and s^S)."""
    if len(m.weights) != f.n:
        raise SeriesError("specialization map does not cover the variables")
    if m.uses_s and S is None:
        S = N
    total = TruncatedSeries.zero(N, S)
    for t in f.terms:
        a, b = m.grade(t.num)
        if a < 0 or b < 0:
            raise SeriesError("non-positively-graded factor in a numerator")
        grades = []
        for d in t.den:
            da, db = m.grade(d)
            if da < 0 or db < 0 or (da == 0 and db == 0) or (da == 0 and S is None):
                raise SeriesError("non-positively-graded factor")
            grades.append((da, db))
        if a > N or (S is not None and b > S):
            continue
        term = TruncatedSeries.monomial(N, a, b, S, coeff=t.coeff)
        for da, db in grades:
            term = term.div_one_minus(da, db)
        total = total + term
    return total


# --- q-series primitives ----------------------------------------------------

def poch(sign: int, a: int, n: int, N: int) -> TruncatedSeries:
    """``prod_{i<n} (1 - sign*q^(a+i))``: sign=+1 gives (q^a;q)_n, sign=-1 gives (-q^a;q)_n."""
    if sign not in (1, -1):
        raise SeriesError("sign must be +1 or -1")
    if n < 0 or a < 0:
        raise SeriesError("need n >= 0 and a >= 0")
    out = TruncatedSeries.one(N)
    for i in range(n):
        out = out.mul_one_minus(a + i, 0, sign)
    return out


@lru_cache(maxsize=None)
def _qbinomial_poly(n: int, k: int) -> tuple[int, ...]:
    if k == 0 or k == n:
        return (1,)
    left = _qbinomial_poly(n - 1, k - 1)
    right = _qbinomial_poly(n - 1, k)
    out = [0] * (k * (n - k) + 1)
    for i, v in enumerate(left):
        out[i] += v
    for i, v in enumerate(right):
        out[i + k] += v
    return tuple(out)


def qbinomial(n: int, k: int, N: int) -> TruncatedSeries:
    """Gaussian binomial [n; k]_q by the q-Pascal recurrence."""
    if not 0 <= k <= n:
        raise SeriesError(f"q-binomial index out of range: [{n}; {k}]")
    return TruncatedSeries.from_poly(_qbinomial_poly(n, k), N)


def check_identity(lhs: TruncatedSeries, rhs: TruncatedSeries) -> bool:
    if lhs.c.shape != rhs.c.shape:
        raise SeriesError("identity sides have different truncation bounds")
    return lhs == rhs
