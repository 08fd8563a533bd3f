import random
from fractions import Fraction

import pytest

from regsing.fields import QQ
from regsing.matrices import Matrix
from regsing.ratfun import RatFun
from regsing.systems import (
    INFINITY,
    Point,
    SingularGaugeError,
    delocalize,
    gauge,
    gauge_residual,
    localize,
    mat_derivative,
    mobius,
    mobius_point,
    rational_system,
)

from conftest import rand_invertible, rand_system


def test_localize_identity_substitution():
    A = rational_system("[[1/z]]")
    loc = localize(A, Point.finite(0))
    assert str(loc.matrix) == "[[1/t]]"
    assert loc.chart.describe() == "z=t"


def test_localize_at_infinity_spec_example():
    # -(1/t^2) * A(1/t) with A = [[1/z]] gives [[-1/t]] (checked by hand:
    # A(1/t) = t, scaled by -(1/t^2))
    A = rational_system("[[1/z]]")
    loc = localize(A, INFINITY)
    t = RatFun.gen(QQ, "t")
    assert loc.matrix[0, 0] == -(t**-1)


def test_localize_shift():
    A = rational_system("[[z]]")
    loc = localize(A, Point.finite(1))
    t = RatFun.gen(QQ, "t")
    assert loc.matrix[0, 0] == t + 1


def test_chart_round_trip(rng):
    for _ in range(10):
        A = rand_system(rng, 2)
        for p in (Point.finite(0), Point.finite(Fraction(-1, 2)), INFINITY):
            loc = localize(A, p)
            assert delocalize(loc) == A


def test_infinity_chart_is_involutive(rng):
    # applying the reciprocal chart twice returns the original matrix
    for _ in range(8):
        A = rand_system(rng, 2)
        once = localize(A, INFINITY)
        again = localize(delocalize(once), INFINITY)
        assert delocalize(again) == delocalize(once)


def test_gauge_paper_example_corrected():
    # the identity F (1/z) F^-1 + F' F^-1 = 0 holds for F = c/z (the paper's
    # printed F = -z does not satisfy it; see the decisions ledger)
    A = rational_system("[[1/z]]")
    for c in ("-1", "1", "5"):
        F = rational_system(f"[[{c}/z]]")
        assert gauge(A, F).is_zero()
    F = rational_system("[[-z]]")
    assert gauge(A, F) == rational_system("[[2/z]]")


def test_gauge_identity_and_log_derivative():
    A = rational_system("[[1/z]]")
    I = rational_system("[[1]]")
    assert gauge(A, I) == A
    assert gauge(rational_system("[[0]]"), rational_system("[[z]]")) == rational_system("[[1/z]]")


def test_gauge_rejects_singular():
    A = rational_system("[[0,0],[0,0]]")
    F = rational_system("[[z,z],[1,1]]")
    with pytest.raises(SingularGaugeError):
        gauge(A, F)


def test_gauge_residual_is_exact(rng):
    for _ in range(6):
        A = rand_system(rng, 2)
        F = rand_invertible(rng, 2)
        Ap = gauge(A, F)
        assert gauge_residual(A, F, Ap).is_zero()


def test_localize_is_functorial_under_gauge(rng):
    # localizing then gauging with F(t+p) equals gauging with F then localizing
    for _ in range(6):
        A = rand_system(rng, 2)
        F = rand_invertible(rng, 2)
        p = Point.finite(Fraction(2))
        left = gauge(
            localize(A, p).matrix,
            localize(F, p).matrix,
        )
        right = localize(gauge(A, F), p).matrix
        assert left == right


def test_mobius_identity_and_shift():
    A = rational_system("[[1/z]]")
    assert mobius(A, 1, 0, 0, 1) == A
    shifted = mobius(A, 1, 1, 0, 1)  # z = w + 1
    assert shifted == rational_system("[[1/(z+1)]]")  # pole moved to -1


def test_mobius_reciprocal_matches_infinity_chart():
    A = rational_system("[[1/z]]")
    B = mobius(A, 0, 1, 1, 0)  # z = 1/w
    loc = localize(A, INFINITY)
    assert B == delocalize(localize(B, Point.finite(0)))  # sanity
    assert str(B[0, 0]) == str(loc.matrix[0, 0]).replace("t", "z")


def test_mobius_degenerate_rejected():
    A = rational_system("[[z]]")
    with pytest.raises(ValueError):
        mobius(A, 1, 2, 2, 4)


def test_mobius_point_transport():
    assert mobius_point(1, 1, 0, 1, Point.finite(Fraction(0))) == Point.finite(Fraction(1))
    assert mobius_point(0, 1, 1, 0, INFINITY) == Point.finite(Fraction(0))
    assert mobius_point(0, 1, 1, 0, Point.finite(Fraction(0))) == INFINITY


def test_mat_derivative():
    A = rational_system("[[z,1],[0,z^2]]")
    assert mat_derivative(A) == rational_system("[[1,0],[0,2*z]]")
