import pytest

from ggf.series import (
    SeriesError,
    TruncatedSeries,
    format_series,
    poch,
    qbinomial,
    check_identity,
)

T = TruncatedSeries


def test_geometric_and_inverse():
    g = T.one(6).div_one_minus(1)
    assert g.coeffs() == [1] * 7
    assert (g * T.one(6).mul_one_minus(1)) == T.one(6)
    assert g.inverse() == T.one(6).mul_one_minus(1)


def test_inverse_needs_unit_constant():
    with pytest.raises(SeriesError):
        T.from_poly([2, 1], 4).inverse()


def test_division_by_zero_graded_factor():
    with pytest.raises(SeriesError):
        T.one(4).div_one_minus(0)


def test_mixed_truncation_takes_minimum():
    a = T.one(8).div_one_minus(1)
    b = T.one(3).div_one_minus(2)
    assert (a * b).N == 3
    assert (a + b).coeffs() == [2, 1, 2, 1]


def test_qbinomial_values():
    assert qbinomial(4, 2, 10).coeffs()[:5] == [1, 1, 2, 1, 1]
    assert qbinomial(5, 0, 3).coeffs() == [1, 0, 0, 0]
    with pytest.raises(SeriesError):
        qbinomial(2, 3, 4)


def test_qbinomial_at_one_is_binomial():
    from math import comb

    for n in range(8):
        for k in range(n + 1):
            assert sum(qbinomial(n, k, 60).coeffs()) == comb(n, k)


def test_poch_signs():
    assert poch(1, 1, 2, 4).coeffs() == [1, -1, -1, 1, 0]  # (1-q)(1-q^2)
    assert poch(-1, 1, 2, 4).coeffs() == [1, 1, 1, 1, 0]  # (1+q)(1+q^2)
    assert poch(-1, 0, 1, 3).coeffs() == [2, 0, 0, 0]  # (-1;q)_1 = 2


def test_bivariate_substitution_and_evaluation():
    # f(q, s) = 1/(1 - s q)
    f = T.one(6, 6).div_one_minus(1, 1)
    # s -> q s gives 1/(1 - s q^2)
    assert f.subs_s(1, 1) == T.one(6, 6).div_one_minus(2, 1)
    # s = q gives 1/(1 - q^2)
    assert f.at_s(1).coeffs() == [1, 0, 1, 0, 1, 0, 1]


def test_div_qpower_minus_s_is_exact():
    # (q^2 - s) * g recovered for g = 1/(1-s)(1-q)
    g = T.one(10, 12).div_one_minus(0, 1).div_one_minus(1)
    num = g.shift(2) - g.shift(0, 1)
    back = num.div_qpower_minus_s(2, 6)
    assert back == g.truncate(10, 6)


def test_div_qpower_minus_s_detects_non_multiple():
    with pytest.raises(SeriesError):
        T.one(6, 10).div_qpower_minus_s(1, 2)


def test_format():
    assert format_series(T.from_poly([1, 0, -2], 3)) == "1 - 2*q^2 + O(q^4)"
    assert format_series(T.zero(2)) == "0 + O(q^3)"


def test_check_identity_shapes():
    with pytest.raises(SeriesError):
        check_identity(T.one(3), T.one(4))
