import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from regsing.fields import QQ
from regsing.poly import Poly
from regsing.ratfun import RatFun

fractions = st.fractions(min_value=-12, max_value=12, max_denominator=7)
polys = st.lists(fractions, min_size=0, max_size=4).map(lambda cs: Poly(cs, QQ, "z"))
nonzero_polys = polys.filter(bool)


def R(num, den=(1,)):
    return RatFun(Poly([Fraction(c) for c in num], QQ, "z"), Poly([Fraction(c) for c in den], QQ, "z"))


@settings(max_examples=120)
@given(polys, nonzero_polys, nonzero_polys)
def test_canonical_form_is_representative_independent(a, b, c):
    # a/b == (a*c)/(b*c) after reduction, with identical stored data
    f = RatFun(a, b)
    g = RatFun(a * c, b * c)
    assert f.num == g.num and f.den == g.den
    assert f.den.leading() == QQ.one
    from regsing.poly import poly_gcd

    if f.num:
        assert poly_gcd(f.num, f.den).degree == 0


@settings(max_examples=100)
@given(polys, nonzero_polys, polys, nonzero_polys)
def test_field_operations(a, b, c, d):
    f = RatFun(a, b)
    g = RatFun(c, d)
    assert f + g == g + f
    assert f * g == g * f
    assert f - f == RatFun.zero(QQ, "z")
    if g:
        assert (f / g) * g == f


def test_derivative_quotient_rule_oracle():
    rng = random.Random(5)
    for _ in range(30):
        num = Poly([Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(1, 4))], QQ, "z")
        den = Poly([Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(1, 3))], QQ, "z")
        if not den:
            continue
        f = RatFun(num, den)
        # independent oracle: cross-multiplied quotient rule on the raw pair
        lhs = f.derivative() * RatFun.from_poly(den) * RatFun.from_poly(den)
        rhs = RatFun.from_poly(num.derivative() * den - num * den.derivative())
        assert lhs == rhs


def test_spec_derivative_values():
    z = RatFun.gen(QQ, "z")
    one = RatFun.one(QQ, "z")
    assert (one / z).derivative() == -(z**-2)
    assert (z**2).derivative() == 2 * z
    assert ((z + 1) / (z - 1)).derivative() == RatFun.const(-2, QQ, "z") / (z - 1) ** 2


def test_valuation_examples():
    z = RatFun.gen(QQ, "z")
    assert (z**3 / (1 + z)).valuation_at_zero() == 3
    assert RatFun.zero(QQ, "z").valuation_at_zero() == math.inf
    assert ((2 * z + z**2) / z**4).valuation_at_zero() == -3


def test_eval_and_poles():
    z = RatFun.gen(QQ, "z")
    f = (z + 1) / (z - 1)
    assert f.eval(Fraction(2)) == 3
    with pytest.raises(ZeroDivisionError):
        f.eval(Fraction(1))


def test_compose_chart_reciprocal():
    z = RatFun.gen(QQ, "z")
    f = (z**2 + 1) / z
    g = f.compose(one_over(z))
    # f(1/z) = (1/z^2 + 1)/(1/z) = (1 + z^2)/z
    assert g == (1 + z**2) / z


def one_over(z):
    return RatFun.one(QQ, "z") / z


def test_pow_negative():
    z = RatFun.gen(QQ, "z")
    assert z**-2 == RatFun.one(QQ, "z") / (z * z)
    with pytest.raises(ZeroDivisionError):
        RatFun.zero(QQ, "z") ** -1


def test_shift():
    z = RatFun.gen(QQ, "z")
    f = RatFun.one(QQ, "z") / z
    assert f.shift(Fraction(1)) == RatFun.one(QQ, "z") / (z + 1)
