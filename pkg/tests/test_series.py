import math
import random
from fractions import Fraction

import pytest

from regsing.fields import QQ
from regsing.poly import Poly
from regsing.ratfun import RatFun
from regsing.series import LaurentSeries, PrecisionError, laurent_expand


def F(c):
    return Fraction(c)


def test_geometric_series():
    z = RatFun.gen(QQ, "t")
    s = laurent_expand(RatFun.one(QQ, "t") / (1 - z), 3)
    assert s.valuation == 0
    assert s.coefficients_through(3) == [F(1), F(1), F(1), F(1)]
    assert s.prec == 3


def test_pure_pole():
    z = RatFun.gen(QQ, "t")
    s = laurent_expand(z**-2, 0)
    assert s.valuation == -2
    assert s.coefficient(-2) == 1
    assert s.coefficient(-1) == 0
    assert s.coefficient(0) == 0


def test_spec_division_example():
    # (t^2 + t)/t^3 expanded via polynomial division oracle: t^-2 + t^-1
    t = RatFun.gen(QQ, "t")
    f = (t**2 + t) / t**3
    s = laurent_expand(f, 1)
    # oracle by direct division
    assert f == t**-2 + t**-1
    assert s.valuation == -2
    assert s.coefficient(-2) == 1
    assert s.coefficient(-1) == 1
    assert s.coefficient(0) == 0
    assert s.coefficient(1) == 0


def test_valuation_matches_ratfun():
    rng = random.Random(3)
    for _ in range(30):
        num = Poly([F(rng.randint(-3, 3)) for _ in range(rng.randint(1, 4))], QQ, "t")
        den = Poly([F(rng.randint(-3, 3)) for _ in range(rng.randint(1, 4))], QQ, "t")
        if not num or not den:
            continue
        f = RatFun(num, den)
        s = laurent_expand(f, 6)
        assert s.order() == f.valuation_at_zero()


def test_product_tracks_precision_and_agrees():
    rng = random.Random(9)
    t = RatFun.gen(QQ, "t")
    for _ in range(25):
        f = _rand_ratfun(rng)
        g = _rand_ratfun(rng)
        sf = laurent_expand(f, 5)
        sg = laurent_expand(g, 5)
        prod = sf * sg
        direct = laurent_expand(f * g, prod.prec)
        assert prod.agrees_with(direct)
        # worst-case tracking from the operands
        assert prod.prec == min(sf.prec + sg.valuation, sg.prec + sf.valuation)


def _rand_ratfun(rng):
    num = Poly([Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, 3))], QQ, "t")
    den = Poly([Fraction(rng.choice([1, 2, -1])), Fraction(rng.randint(-2, 2))], QQ, "t")
    if not num:
        num = Poly([Fraction(1)], QQ, "t")
    return RatFun(num, den)


def test_sum_of_series():
    t = RatFun.gen(QQ, "t")
    a = laurent_expand(t**-1, 4)
    b = laurent_expand(1 / (1 - t), 4)
    s = a + b
    assert s.valuation == -1
    assert s.coefficient(-1) == 1
    assert s.coefficient(2) == 1


def test_reading_beyond_precision_raises():
    t = RatFun.gen(QQ, "t")
    s = laurent_expand(1 / (1 - t), 2)
    with pytest.raises(PrecisionError):
        s.coefficient(3)


def test_zero_to_precision():
    s = LaurentSeries.zero(5, QQ, "t")
    assert s.is_zero_to_precision()
    assert s.order() == math.inf
    t = laurent_expand(RatFun.zero(QQ, "t"), 5)
    assert t.is_zero_to_precision()


def test_cancellation_raises_valuation():
    t = RatFun.gen(QQ, "t")
    a = laurent_expand(1 / (1 - t), 4)
    b = laurent_expand(RatFun.one(QQ, "t"), 4)
    s = a - b  # t + t^2 + ...
    assert s.valuation == 1
