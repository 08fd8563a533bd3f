import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from regsing.fields import QQ
from regsing.poly import NEG_INF, Poly, poly_gcd, poly_lcm, poly_xgcd, resultant, squarefree_part

fractions = st.fractions(min_value=-30, max_value=30, max_denominator=9)
polys = st.lists(fractions, min_size=0, max_size=6).map(lambda cs: Poly(cs, QQ, "z"))


def P(*coeffs):
    return Poly([Fraction(c) if not isinstance(c, Fraction) else c for c in coeffs], QQ, "z")


def test_normalization_strips_trailing_zeros():
    assert P(1, 2, 0, 0).coeffs == (Fraction(1), Fraction(2))
    assert P(0, 0).degree == NEG_INF
    assert not P()


def test_degree_sentinel_behaves_additively():
    z = Poly.zero(QQ, "z")
    assert z.degree + 5 == NEG_INF
    assert max(z.degree, P(1).degree) == 0


@settings(max_examples=150)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + Poly.zero(QQ, "z") == a
    assert a * Poly.one(QQ, "z") == a


@settings(max_examples=150)
@given(polys, polys)
def test_divmod_is_exact(a, b):
    if not b:
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree or not r


@settings(max_examples=100)
@given(polys, polys)
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    if not g:
        assert not a and not b
        return
    assert not a % g
    assert not b % g
    assert g.leading() == QQ.one


@settings(max_examples=100)
@given(polys, polys)
def test_xgcd_bezout(a, b):
    g, s, t = poly_xgcd(a, b)
    assert s * a + t * b == g


def test_lcm():
    a = P(0, 1) * P(-1, 1)  # z(z-1)
    b = P(0, 1) * P(1, 1)  # z(z+1)
    assert poly_lcm(a, b) == (P(0, 1) * P(-1, 1) * P(1, 1)).monic()


def test_derivative_product_rule():
    rng = random.Random(7)
    for _ in range(25):
        a = Poly([Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, 4))], QQ, "z")
        b = Poly([Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, 4))], QQ, "z")
        assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


def test_shift_and_compose():
    p = P(1, 0, 1)  # z^2 + 1
    assert p.shift(Fraction(1)) == P(2, 2, 1)  # (z+1)^2 + 1
    q = p.compose(P(0, 0, 1))  # z^4 + 1
    assert q == P(1, 0, 0, 0, 1)


def test_eval_matches_coefficients():
    p = P(Fraction(1, 2), -2, 3)
    x = Fraction(3, 2)
    assert p.eval(x) == Fraction(1, 2) - 2 * x + 3 * x * x


def test_squarefree_part():
    p = P(0, 1) ** 3 * P(-1, 1)  # z^3 (z-1)
    assert squarefree_part(p) == (P(0, 1) * P(-1, 1)).monic()


def test_resultant_against_sylvester_determinant():
    # independent oracle: Sylvester matrix determinant over Q
    rng = random.Random(11)

    def sylvester_det(a, b):
        m, n = int(a.degree), int(b.degree)
        size = m + n
        rows = []
        ac = list(reversed(a.coeffs))
        bc = list(reversed(b.coeffs))
        for i in range(n):
            rows.append([Fraction(0)] * i + list(ac) + [Fraction(0)] * (size - m - 1 - i))
        for i in range(m):
            rows.append([Fraction(0)] * i + list(bc) + [Fraction(0)] * (size - n - 1 - i))
        from regsing.matrices import Matrix

        return Matrix(rows, QQ).det() if size else Fraction(1)

    for _ in range(20):
        a = Poly([Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(2, 4))], QQ, "z")
        b = Poly([Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(2, 4))], QQ, "z")
        if a.degree < 1 or b.degree < 1:
            continue
        assert resultant(a, b) == sylvester_det(a, b)


def test_valuation_at_zero():
    assert P(0, 0, 3, 1).valuation_at_zero() == 2
    assert P(5).valuation_at_zero() == 0
    assert Poly.zero(QQ, "z").valuation_at_zero() is None


def test_incompatible_variables_rejected():
    with pytest.raises(ValueError):
        P(1) + Poly([Fraction(1)], QQ, "w")
