"""Shared random-instance builders (deterministic, seed-driven)."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from regsing.fields import QQ, FractionField
from regsing.matrices import Matrix
from regsing.poly import Poly
from regsing.ratfun import RatFun
from regsing.systems import GLOBAL_VAR, LOCAL_VAR


def rand_fraction(rng, bound=4, dens=(1, 1, 2, 3)):
    return Fraction(rng.randint(-bound, bound), rng.choice(dens))


def rand_poly(rng, var=GLOBAL_VAR, maxdeg=2, bound=3, field=QQ):
    deg = rng.randint(0, maxdeg)
    coeffs = [rand_fraction(rng, bound) for _ in range(deg + 1)]
    return Poly(coeffs, field, var)


def rand_nonzero_poly(rng, var=GLOBAL_VAR, maxdeg=2, bound=3):
    while True:
        p = rand_poly(rng, var, maxdeg, bound)
        if p:
            return p


def linear_product(rng, var, points, max_factors=2):
    """Product of (var - a) over random small rational a, for tame poles."""
    ring_one = Poly.one(QQ, var)
    x = Poly.gen(QQ, var)
    out = ring_one
    for _ in range(rng.randint(0, max_factors)):
        a = Fraction(rng.choice(points))
        out = out * (x - Poly.const(a, QQ, var))
    return out


def rand_ratfun(rng, var=GLOBAL_VAR, maxdeg=2, pole_points=(0, 1, -1)):
    num = rand_poly(rng, var, maxdeg)
    den = linear_product(rng, var, pole_points)
    return RatFun(num, den)


def system_ring(var=GLOBAL_VAR):
    return FractionField(QQ, var)


def rand_system(rng, n, var=GLOBAL_VAR, maxdeg=1, pole_points=(0, 1, -1)):
    ring = system_ring(var)
    rows = [
        [rand_ratfun(rng, var, maxdeg, pole_points) for _ in range(n)]
        for _ in range(n)
    ]
    return Matrix(rows, ring)


def rand_invertible(rng, n, var=GLOBAL_VAR, pole_points=(0, 1, -1), tpowers=1):
    """Invertible matrix over Q(var) with rational-only pole and det factors:
    product of a unit upper and unit lower triangular matrix times a
    diagonal of monomial-like units."""
    ring = system_ring(var)
    x = RatFun.gen(QQ, var)

    def unit_entry():
        k = rng.randint(-tpowers, tpowers)
        c = Fraction(rng.choice([1, -1, 2, 1, 1]))
        e = x**k if k >= 0 else (x**-1) ** (-k)
        out = e * RatFun.const(c, QQ, var)
        a = Fraction(rng.choice(pole_points))
        if rng.random() < 0.4:
            lin = x - RatFun.const(a, QQ, var)
            out = out * lin ** rng.choice([-1, 1])
        return out

    diag = Matrix.diagonal([unit_entry() for _ in range(n)], ring)
    up = Matrix.identity(n, ring)
    lo = Matrix.identity(n, ring)
    up_rows = [list(r) for r in up.rows]
    lo_rows = [list(r) for r in lo.rows]
    for i in range(n):
        for j in range(n):
            if i < j and rng.random() < 0.7:
                up_rows[i][j] = rand_ratfun(rng, var, 1, pole_points)
            if i > j and rng.random() < 0.7:
                lo_rows[i][j] = rand_ratfun(rng, var, 1, pole_points)
    F = Matrix(up_rows, ring) * diag * Matrix(lo_rows, ring)
    assert F.det()
    return F


def rand_constant_matrix(rng, n, bound=2, field=QQ):
    return Matrix(
        [[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)],
        field,
    )


def rand_simple_pole_local(rng, n, bound=2):
    """R0/t + R1 + R2*t with small integer matrices, in the local variable."""
    ring = system_ring(LOCAL_VAR)
    t = RatFun.gen(QQ, LOCAL_VAR)
    R0 = rand_constant_matrix(rng, n, bound)
    R1 = rand_constant_matrix(rng, n, 1)
    A = R0.map(lambda c: RatFun.const(c, QQ, LOCAL_VAR) / t, ring)
    A = A + R1.map(lambda c: RatFun.const(c, QQ, LOCAL_VAR), ring)
    return A


@pytest.fixture
def rng():
    return random.Random(20260810)
