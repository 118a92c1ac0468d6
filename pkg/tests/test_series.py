from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from dt4vertex.errors import BadConstantTerm
from dt4vertex.polys import Poly
from dt4vertex.series import TruncatedSeries, macmahon, series_exp, series_log, series_pow_scalar

q = sp.Symbol("q")
T = Poly.var("t")


def sympy_coeffs(expr, order):
    ser = sp.series(expr, q, 0, order + 1).removeO()
    return [sp.Rational(ser.coeff(q, n)) for n in range(order + 1)]


def as_rationals(s: TruncatedSeries):
    return [sp.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in s.coeffs]


def test_macmahon_examples():
    assert macmahon(0).coeffs == [1]
    assert macmahon(6).coeffs == [1, 1, 3, 6, 13, 24, 48]
    assert macmahon(3, -1).coeffs == [1, -1, 3, -6]


def product_oracle(order, sign=1):
    """prod (1 - (sign q)^n)^(-n) as a product of truncated geometric polynomials."""
    x = sign * q
    out = sp.Poly(1, q)
    for n in range(1, order + 1):
        geo = sp.Poly(sum(x ** (n * k) for k in range(order // n + 1)), q)
        for _ in range(n):
            out = sp.Poly(sum(c * q ** m[0] for m, c in (out * geo).terms() if m[0] <= order), q)
    return [out.coeff_monomial(q ** m) for m in range(order + 1)]


def test_macmahon_against_product_oracle():
    assert as_rationals(macmahon(10)) == product_oracle(10)
    assert as_rationals(macmahon(8, -1)) == product_oracle(8, -1)


def test_log_examples():
    assert series_log(TruncatedSeries.one(4)).coeffs == [0] * 5
    assert series_log(TruncatedSeries([1, 1], 3)).coeffs == [0, 1, Fraction(-1, 2), Fraction(1, 3)]
    assert series_log(macmahon(3)).coeffs == [0, 1, Fraction(5, 2), Fraction(10, 3)]


def test_log_against_oracle():
    # log M(q) = sum_n n * (-log(1 - q^n)) = sum_n sum_k n q^(nk) / k
    expr = sum(n * sp.log(1 / (1 - q ** n)) for n in range(1, 6))
    assert as_rationals(series_log(macmahon(5))) == sympy_coeffs(expr, 5)


def test_exp_examples():
    assert series_exp(TruncatedSeries([0], 3)).coeffs == [1, 0, 0, 0]
    assert series_exp(TruncatedSeries.q(3)).coeffs == [1, 1, Fraction(1, 2), Fraction(1, 6)]
    got = series_exp((macmahon(2) - 1) * T)
    assert got[1] == T
    assert got[2] == T * 3 + T * T / 2


def test_pow_examples():
    f = macmahon(5)
    assert series_pow_scalar(f, 0).coeffs == [1, 0, 0, 0, 0, 0]
    c = Poly.var("c")
    assert series_pow_scalar(macmahon(3, -1), c)[1] == -c
    assert series_pow_scalar(f, 2) == f * f
    assert series_pow_scalar(f, Fraction(1, 2)) ** 2 == f


def test_bad_constant_terms():
    with pytest.raises(BadConstantTerm):
        series_log(TruncatedSeries([2, 1], 2))
    with pytest.raises(BadConstantTerm):
        series_exp(TruncatedSeries([1, 1], 2))


def test_mixed_order_truncates_to_minimum():
    a = TruncatedSeries([1, 2, 3, 4], 3)
    b = TruncatedSeries([1, 1], 1)
    assert (a * b).order == 1
    assert (a + b).order == 1


def test_json():
    assert macmahon(2).to_json() == {"order": 2, "coeffs": ["1", "1", "3"]}


coef = st.fractions(min_value=-5, max_value=5, max_denominator=6)
series_zero = st.lists(coef, min_size=6, max_size=6).map(lambda cs: TruncatedSeries([0] + cs, 6))
rational = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@settings(max_examples=40, deadline=None)
@given(series_zero)
def test_log_exp_round_trip(g):
    assert series_log(series_exp(g)) == g
    f = series_exp(g)
    assert series_exp(series_log(f)) == f


@settings(max_examples=30, deadline=None)
@given(rational, rational)
def test_macmahon_power_homomorphism(c1, c2):
    m = macmahon(6, -1)
    assert series_pow_scalar(m, c1 + c2) == series_pow_scalar(m, c1) * series_pow_scalar(m, c2)


def test_symbolic_homomorphism():
    a, b = Poly.var("a"), Poly.var("b")
    m = macmahon(5, -1)
    assert series_pow_scalar(m, a + b) == series_pow_scalar(m, a) * series_pow_scalar(m, b)
