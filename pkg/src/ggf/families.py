"""Four solved families: recurrences and closed forms as truncated series.

* ``minc``   compositions whose parts at most double (first part free);
* ``tworow`` two-rowed plane partitions with n columns;
* ``alhc``   anti-lecture hall compositions ``l1/1 >= l2/2 >= ... >= ln/n >= 0``;
* ``tlhp``   truncated lecture hall partitions with positive parts,
  ``l1/n >= l2/(n-1) >= ... >= lk/(n-k+1) > 0``;
* ``lhp``    lecture hall partitions ``l1/n >= ... >= ln/1 >= 0``.

Bivariate series use ``s`` for the last variable and ``q`` for the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .core import ConstraintSystem, normalize
from .series import TruncatedSeries, poch, qbinomial

FAMILIES = ("minc", "tworow", "alhc", "tlhp", "lhp")


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    name: str
    n: int
    k: int | None = None

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise FamilyError(f"unknown family {self.name!r}")
        if self.n < 1:
            raise FamilyError("need n >= 1")
        if self.name == "tlhp":
            if self.k is None or not 1 <= self.k <= self.n:
                raise FamilyError("tlhp needs 1 <= k <= n")
        elif self.k is not None:
            raise FamilyError(f"{self.name} takes no k")


def _ratio_chain(names, dens, strict_last: bool):
    """Raw constraints ``names[t]/dens[t] >= names[t+1]/dens[t+1]``, last ``> 0`` or ``>= 0``."""
    raw = []
    for t in range(len(names) - 1):
        raw.append(
            ({names[t]: Fraction(1, dens[t]), names[t + 1]: Fraction(-1, dens[t + 1])}, 0, ">=")
        )
    raw.append(({names[-1]: Fraction(1, dens[-1])}, 0, ">" if strict_last else ">="))
    return raw


def family_system(fam: FamilySpec) -> ConstraintSystem:
    n = fam.n
    if fam.name == "minc":
        names = [f"l{i}" for i in range(1, n + 1)]
        raw = [({names[i]: 2, names[i + 1]: -1}, 0, ">=") for i in range(n - 1)]
        raw.append(({names[-1]: 1}, 0, ">"))
        return normalize(raw, names)
    if fam.name == "tworow":
        names = [v for i in range(1, n + 1) for v in (f"a{i}", f"b{i}")]
        raw = [({f"a{i}": 1, f"b{i}": -1}, 0, ">=") for i in range(1, n + 1)]
        for i in range(1, n):
            raw.append(({f"a{i}": 1, f"a{i + 1}": -1}, 0, ">="))
            raw.append(({f"b{i}": 1, f"b{i + 1}": -1}, 0, ">="))
        return normalize(raw, names)
    if fam.name == "alhc":
        names = [f"l{i}" for i in range(1, n + 1)]
        return normalize(_ratio_chain(names, list(range(1, n + 1)), False), names)
    if fam.name == "lhp":
        names = [f"l{i}" for i in range(1, n + 1)]
        return normalize(_ratio_chain(names, list(range(n, 0, -1)), False), names)
    k = fam.k
    names = [f"l{i}" for i in range(1, k + 1)]
    return normalize(_ratio_chain(names, [n - i for i in range(k)], True), names)


# -- Minc / Cayley -----------------------------------------------------------

def minc_cn(n: int, N: int) -> TruncatedSeries:
    """``C_n(q, s)``: n-part compositions, last part tracked by s."""
    C = TruncatedSeries.one(N, N).shift(0, 1).div_one_minus(0, 1)
    for _ in range(2, n + 1):
        C = (C.at_s(1) - C.subs_s(1, 2)).shift(0, 1).div_one_minus(0, 1)
    return C


def minc_nu_series(N: int) -> TruncatedSeries:
    """``1 + sum_n C_n(q, q)`` by the bivariate recurrence."""
    if N < 1:
        raise FamilyError("need N >= 1")
    total = TruncatedSeries.one(N)
    C = TruncatedSeries.one(N, N).shift(0, 1).div_one_minus(0, 1)
    total = total + C.at_s(1)
    # an n-part composition weighs at least n
    for _ in range(2, N + 1):
        C = (C.at_s(1) - C.subs_s(1, 2)).shift(0, 1).div_one_minus(0, 1)
        total = total + C.at_s(1)
    return total


def minc_closed_series(N: int) -> TruncatedSeries:
    """Reciprocal of ``1 + sum_i (-1)^i q^(2^(i+1)-i-2) / ((1-q)(1-q^3)...(1-q^(2^i-1)))``."""
    if N < 1:
        raise FamilyError("need N >= 1")
    den = TruncatedSeries.one(N)
    i = 1
    while 2 ** (i + 1) - i - 2 <= N:
        term = TruncatedSeries.monomial(N, 2 ** (i + 1) - i - 2, coeff=(-1) ** i)
        for t in range(1, i + 1):
            term = term.div_one_minus(2**t - 1)
        den = den + term
        i += 1
    return den.inverse()


# -- two-rowed plane partitions ----------------------------------------------

def tworow_gstar(n: int, N: int, S: int | None = None) -> TruncatedSeries:
    """``G*_n(q, s)`` to q^N, s^S by the recurrence in the last column.

    The division by ``1 - s/q^(n-1)`` is carried out as an exact division by
    ``q^(n-1) - s`` after clearing the Laurent factor.
    """
    if n < 1:
        raise FamilyError("need n >= 1")
    S = N if S is None else S
    if n == 1:
        return TruncatedSeries.one(N, S).div_one_minus(0, 1).div_one_minus(1, 1)
    m = n - 1
    prev = tworow_gstar(m, N, S + N // m + 1)
    numer = prev.at_s(m).shift(m).lift(prev.S) - prev.shift(0, 1)
    return numer.div_qpower_minus_s(m, S).div_one_minus(n, 1)


def tworow_gstar_closed(n: int, N: int, S: int | None = None) -> TruncatedSeries:
    """``1 / ((1-s)(1-sq)(q;q)_{n-1}(q^2;q)_{n-1})``."""
    S = N if S is None else S
    out = TruncatedSeries.one(N, S).div_one_minus(0, 1).div_one_minus(1, 1)
    for i in range(1, n):
        out = out.div_one_minus(i).div_one_minus(i + 1)
    return out


def tworow_series(n: int, N: int) -> TruncatedSeries:
    """``P_n(q) = G*_n(q, q^n)``."""
    return tworow_gstar(n, N, N // n + 1).at_s(n)


def tworow_closed(n: int, N: int) -> TruncatedSeries:
    """``1 / ((q;q)_n (q^2;q)_n)``."""
    return (poch(1, 1, n, N) * poch(1, 2, n, N)).inverse()


# -- anti-lecture hall compositions -----------------------------------------

ALHC_MODES = ("recurrence12", "iterated14", "rec15")


def alhc_bivariate(n: int, N: int) -> TruncatedSeries:
    """``A_n(q, s)`` to q^N, s^N by the one-step recurrence from ``A_0 = 1``."""
    if n < 0:
        raise FamilyError("need n >= 0")
    A = TruncatedSeries.one(N, N)
    for k in range(1, n + 1):
        e = comb(k, 2)
        first = A.at_s(1).lift(N).div_one_minus(0, 1)
        second = (
            A.subs_s(1, 1)
            .shift(0, 1)
            .mul_one_minus(e, k - 1)
            .div_one_minus(0, 1)
            .div_one_minus(e, k)
        )
        A = first - second
    return A


def _alhc_iterated_bivariate(n: int, N: int, lower: list[TruncatedSeries]) -> TruncatedSeries:
    """``A_n(q, s)`` as the sum over i, given ``A_t(q, q)`` for t < n."""
    out = TruncatedSeries.zero(N, N)
    cn = comb(n, 2)
    for i in range(n):
        term = lower[n - 1 - i].lift(N).shift(comb(i, 2), i)
        term = term.mul_one_minus(cn - comb(i, 2), n - i)
        for t in range(i + 1):
            term = term.div_one_minus(t, 1)
        term = term.div_one_minus(cn, n)
        out = out + (term if i % 2 == 0 else -term)
    return out


def alhc_iterated(n: int, N: int) -> TruncatedSeries:
    vals = [TruncatedSeries.one(N)]
    for k in range(1, n + 1):
        vals.append(_alhc_iterated_bivariate(k, N, vals).at_s(1))
    return vals[n]


def alhc_rec15(n: int, N: int) -> TruncatedSeries:
    """Univariate recurrence obtained by setting s = q in the iterated form."""
    vals = [TruncatedSeries.one(N)]
    for k in range(1, n + 1):
        top = comb(k + 1, 2)
        acc = TruncatedSeries.zero(N)
        for i in range(k):
            num = TruncatedSeries.monomial(N, comb(i + 1, 2)) - TruncatedSeries.monomial(N, top)
            term = vals[k - 1 - i] * num * poch(1, 1, i + 1, N).inverse()
            acc = acc + (term if i % 2 == 0 else -term)
        vals.append(acc.div_one_minus(top))
    return vals[n]


def alhc_closed(n: int, N: int) -> TruncatedSeries:
    """``(-q;q)_n / (q^2;q)_n``."""
    return poch(-1, 1, n, N) * poch(1, 2, n, N).inverse()


def alhc_series(n: int, N: int, mode: str = "recurrence12") -> TruncatedSeries:
    if mode == "recurrence12":
        return alhc_bivariate(n, N).at_s(1)
    if mode == "iterated14":
        return alhc_iterated(n, N)
    if mode == "rec15":
        return alhc_rec15(n, N)
    raise FamilyError(f"unknown alhc mode {mode!r}; choose from {', '.join(ALHC_MODES)}")


# -- truncated lecture hall partitions --------------------------------------

TLHP_MODES = ("recurrence20", "iterated_jsum", "closed16")


def _check_nk(n: int, k: int):
    if not 1 <= k <= n:
        raise FamilyError("need 1 <= k <= n")


def tlhp_bivariate(n: int, k: int, N: int) -> TruncatedSeries:
    """``Lbar_{n,k}(q, s)`` by the recurrence in k from ``Lbar_{n,1} = s/(1-s)``."""
    _check_nk(n, k)
    L = TruncatedSeries.one(N, N).shift(0, 1).div_one_minus(0, 1)
    for t in range(2, k + 1):
        zq = comb(n + 1, 2) - comb(n - t + 2, 2)
        zs = n - t + 1
        first = L.at_s(1).lift(N).shift(0, 1).div_one_minus(0, 1)
        X = L.subs_s(1, 1)
        second = X.div_one_minus(0, 1) + X.shift(zq, zs).div_one_minus(zq, zs)
        L = first - second
    return L


def tlhp_jsum_bivariate(n: int, k: int, N: int) -> TruncatedSeries:
    """``Lbar_{n,k}(q, s)`` as the sum over j of univariate ``Lbar_{n,k-j}(q)``."""
    _check_nk(n, k)
    top = comb(n + 1, 2)
    zq, zs = top - comb(n - k + 2, 2), n - k + 1
    out = TruncatedSeries.zero(N, N)
    for j in range(1, k + 1):
        lower = tlhp_jsum(n, k - j, N)
        e = (n - k + j) * (j - 2) + top - comb(n - k + j, 2)
        term = lower.lift(N).shift(j - 1, 1).mul_one_minus(e, n - k + j)
        for t in range(j):
            term = term.div_one_minus(t, 1)
        term = term.div_one_minus(zq, zs)
        out = out + (term if j % 2 == 1 else -term)
    return out


def tlhp_jsum(n: int, k: int, N: int) -> TruncatedSeries:
    """Univariate iterated recurrence in k with ``Lbar_{n,0} = 1``."""
    if k == 0:
        return TruncatedSeries.one(N)
    _check_nk(n, k)
    vals = [TruncatedSeries.one(N)]
    for t in range(1, k + 1):
        den = comb(n + 1, 2) - comb(n - t + 1, 2)
        acc = TruncatedSeries.zero(N)
        for j in range(1, t + 1):
            top = t * (n - t + j) + comb(t - j + 1, 2)
            term = TruncatedSeries.monomial(N, j).mul_one_minus(top) * poch(1, 1, j, N).inverse()
            term = term * vals[t - j]
            acc = acc + (term if j % 2 == 1 else -term)
        vals.append(acc.div_one_minus(den))
    return vals[k]


def tlhp_closed(n: int, k: int, N: int) -> TruncatedSeries:
    """``q^C(k+1,2) [n;k]_q (-q^(n-k+1);q)_k / (q^(2n-k+1);q)_k``."""
    _check_nk(n, k)
    out = qbinomial(n, k, N).shift(comb(k + 1, 2))
    return out * poch(-1, n - k + 1, k, N) * poch(1, 2 * n - k + 1, k, N).inverse()


def tlhp_series(n: int, k: int, N: int, mode: str = "recurrence20") -> TruncatedSeries:
    if mode == "recurrence20":
        return tlhp_bivariate(n, k, N).at_s(1)
    if mode == "iterated_jsum":
        return tlhp_jsum(n, k, N)
    if mode == "closed16":
        return tlhp_closed(n, k, N)
    raise FamilyError(f"unknown tlhp mode {mode!r}; choose from {', '.join(TLHP_MODES)}")


def lhp_closed(n: int, N: int) -> TruncatedSeries:
    """``prod_{i=1}^n 1/(1 - q^(2i-1))``."""
    if n < 1:
        raise FamilyError("need n >= 1")
    out = TruncatedSeries.one(N)
    for i in range(1, n + 1):
        out = out.div_one_minus(2 * i - 1)
    return out


def family_series(fam: FamilySpec, N: int, mode: str | None = None) -> TruncatedSeries:
    """Weight series of a family by its default (recurrence) route."""
    if fam.name == "minc":
        raise FamilyError("minc is a sum over all lengths; use minc_nu_series")
    if fam.name == "tworow":
        return tworow_series(fam.n, N)
    if fam.name == "alhc":
        return alhc_series(fam.n, N, mode or "recurrence12")
    if fam.name == "tlhp":
        return tlhp_series(fam.n, fam.k, N, mode or "recurrence20")
    return lhp_closed(fam.n, N)
