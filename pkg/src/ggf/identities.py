"""q-series identities behind the anti-lecture hall closed form.

The four sums ``C_m`` (no q-power in the summand) and ``B_m`` (summand
weighted by ``q^C(i+1,2)``) are checked as truncated series; the two
binomial identities as exact polynomials; the two q-Chu-Vandermonde
summations as rational functions in sympy, both in general and at the
substitutions that yield the binomial identities.
"""

from __future__ import annotations

from math import comb

from .series import TruncatedSeries, _qbinomial_poly, poch, qbinomial


def _summand(m: int, i: int, N: int, weighted: bool) -> TruncatedSeries:
    top = poch(-1, 1, m - 1 - i, N)
    den = poch(1, 2, m - 1 - i, N) * poch(1, 1, i + 1, N)
    term = top * den.inverse()
    if weighted:
        term = term.shift(comb(i + 1, 2))
    return term if i % 2 == 0 else -term


def c_sum(m: int, N: int) -> TruncatedSeries:
    """``sum_{i<m} (-1)^i (-q)_{m-1-i} / ((q^2)_{m-1-i} (q)_{i+1})``."""
    out = TruncatedSeries.zero(N)
    for i in range(m):
        out = out + _summand(m, i, N, False)
    return out


def b_sum(m: int, N: int) -> TruncatedSeries:
    """As :func:`c_sum` with the extra factor ``q^C(i+1,2)``."""
    out = TruncatedSeries.zero(N)
    for i in range(m):
        out = out + _summand(m, i, N, True)
    return out


def _ratio(m: int, N: int) -> TruncatedSeries:
    return poch(-1, 1, m, N) * poch(1, 2, m, N).inverse()


def odd1(n: int, N: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    return c_sum(2 * n + 1, N), _ratio(2 * n + 1, N)


def even1(n: int, N: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    m = 2 * n
    return c_sum(m, N), _ratio(m, N) - poch(1, 2, m, N).inverse()


def odd2(n: int, N: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    return b_sum(2 * n + 1, N), _ratio(2 * n + 1, N)


def even2(n: int, N: int, sign: int = -1) -> tuple[TruncatedSeries, TruncatedSeries]:
    """``B_{2n} = (-q)_{2n}/(q^2)_{2n} + sign * q^C(2n+1,2)/(q^2)_{2n}``.

    The identity holds with ``sign = -1``; ``sign = +1`` is kept so the
    opposite sign can be shown to fail.
    """
    m = 2 * n
    extra = poch(1, 2, m, N).inverse().shift(comb(m + 1, 2))
    return b_sum(m, N), _ratio(m, N) + (extra if sign > 0 else -extra)


IDENTITIES = {"odd1": odd1, "even1": even1, "odd2": odd2, "even2": even2}


# -- exact polynomial identities --------------------------------------------

def _poly_bound(n: int) -> int:
    return n * n + n + 1


def binomial_sum1(n: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """``sum_j (-1)^j (-1;q)_j [n;j]`` and ``(-1)^n`` as exact polynomials."""
    N = _poly_bound(n)
    lhs = TruncatedSeries.zero(N)
    for j in range(n + 1):
        t = poch(-1, 0, j, N) * qbinomial(n, j, N)
        lhs = lhs + (t if j % 2 == 0 else -t)
    return lhs, TruncatedSeries.monomial(N, 0, coeff=(-1) ** n)


def binomial_sum2(n: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """``sum_j (-1)^j (-1;q)_j [n;j] q^C(n-j,2)`` and ``(-1)^n q^C(n,2)``."""
    N = _poly_bound(n)
    lhs = TruncatedSeries.zero(N)
    for j in range(n + 1):
        t = (poch(-1, 0, j, N) * qbinomial(n, j, N)).shift(comb(n - j, 2))
        lhs = lhs + (t if j % 2 == 0 else -t)
    return lhs, TruncatedSeries.monomial(N, comb(n, 2), coeff=(-1) ** n)


# -- q-Chu-Vandermonde --------------------------------------------------------

def _sym():
    import sympy

    return sympy, sympy.symbols("q a c t")


def _spoly(coeffs, q):
    return sum(c * q**e for e, c in enumerate(coeffs))


def _spoch(x, n, q):
    out = 1
    for i in range(n):
        out *= 1 - x * q**i
    return out


def qchu1_general(n: int) -> bool:
    """``sum_j (a)_j (q^-n)_j (c q^n/a)^j / ((c)_j (q)_j) = (c/a)_n / (c)_n``."""
    sp, (q, a, c, _) = _sym()
    lhs = sum(
        _spoch(a, j, q) * _spoch(q**-n, j, q) * (c * q**n / a) ** j / (_spoch(c, j, q) * _spoch(q, j, q))
        for j in range(n + 1)
    )
    rhs = _spoch(c / a, n, q) / _spoch(c, n, q)
    return sp.cancel(sp.together(lhs - rhs)) == 0


def qchu2_general(n: int) -> bool:
    """``sum_j (a)_j (q^-n)_j q^j / ((c)_j (q)_j) = a^n (c/a)_n / (c)_n``."""
    sp, (q, a, c, _) = _sym()
    lhs = sum(
        _spoch(a, j, q) * _spoch(q**-n, j, q) * q**j / (_spoch(c, j, q) * _spoch(q, j, q))
        for j in range(n + 1)
    )
    rhs = a**n * _spoch(c / a, n, q) / _spoch(c, n, q)
    return sp.cancel(sp.together(lhs - rhs)) == 0


def qchu1_specialized(n: int) -> bool:
    """At ``a = -1`` and ``c -> oo`` (c = 1/t, t -> 0) each summand is
    ``(-1)^j (-1;q)_j [n;j]`` and the sum is ``(-1)^n``."""
    sp, (q, a, c, t) = _sym()
    total = 0
    for j in range(n + 1):
        s = _spoch(a, j, q) * _spoch(q**-n, j, q) * (c * q**n / a) ** j / (_spoch(c, j, q) * _spoch(q, j, q))
        s = sp.cancel(sp.together(s.subs(a, -1).subs(c, 1 / t)))
        s = sp.cancel(s.subs(t, 0))
        want = (-1) ** j * _spoch(-1, j, q) * _spoly(_qbinomial_poly(n, j), q)
        if sp.cancel(s - want) != 0:
            return False
        total += s
    return sp.cancel(total - (-1) ** n) == 0


def qchu2_specialized(n: int) -> bool:
    """At ``a = -1``, ``c = 0`` the sum times ``q^C(n,2)`` is the second binomial sum."""
    sp, (q, a, c, _) = _sym()
    total = 0
    for j in range(n + 1):
        s = _spoch(a, j, q) * _spoch(q**-n, j, q) * q**j / (_spoch(c, j, q) * _spoch(q, j, q))
        s = sp.cancel(sp.together(s.subs({a: -1, c: 0}) * q ** comb(n, 2)))
        want = (-1) ** j * _spoch(-1, j, q) * _spoly(_qbinomial_poly(n, j), q) * q ** comb(n - j, 2)
        if sp.cancel(s - want) != 0:
            return False
        total += s
    return sp.cancel(total - (-1) ** n * q ** comb(n, 2)) == 0
