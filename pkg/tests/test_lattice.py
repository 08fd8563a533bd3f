import math
import random
from fractions import Fraction

import pytest

from regsing.fields import QQ, FractionField
from regsing.lattice import (
    GaugeCertificate,
    Lattice,
    NotRegularSingular,
    clearing_power,
    nabla_apply,
    nakayama_basis,
    reduce_to_simple_pole,
    saturate,
    scale_lattice,
    t_nabla_apply,
)
from regsing.matrices import Matrix
from regsing.ratfun import RatFun
from regsing.systems import LOCAL_VAR, gauge, localize, matrix_valuation_at_zero, Point

from conftest import rand_invertible, rand_simple_pole_local, rand_system

RING = FractionField(QQ, LOCAL_VAR)
T = RatFun.gen(QQ, LOCAL_VAR)
ONE = RatFun.one(QQ, LOCAL_VAR)


def local(text):
    """Parse a matrix literal written in z but meant in the local variable."""
    from regsing.systems import rational_system

    A = rational_system(text)
    return A.map(lambda e: e.rename(LOCAL_VAR), RING)


def vec(*entries):
    from regsing.parsing import parse_matrix_text

    doc = parse_matrix_text("[[" + ",".join(entries) + "]]", square=False)
    return tuple(e.rename(LOCAL_VAR) for e in doc.matrix.rows[0])


# -- nabla ------------------------------------------------------------------


def test_nabla_derivative_only():
    A = local("[[0]]")
    assert nabla_apply(A, vec("z")) == vec("1")


def test_nabla_paper_flat_solution():
    # the solution vector of d(y) = (1/t) y is y = t, and nabla kills it
    A = local("[[1/z]]")
    assert nabla_apply(A, vec("z")) == vec("0")


def test_nabla_on_constant():
    A = local("[[1/z]]")
    assert nabla_apply(A, vec("1")) == vec("-1/z")


# -- scale_lattice ------------------------------------------------------------


def test_scale_standard_by_t():
    L = Lattice.standard(2, RING)
    S = scale_lattice(L, T)
    assert S.contains(vec("z", "0"))
    assert not S.contains(vec("1", "0"))


def test_scale_inverse_returns_standard():
    L = Lattice(Matrix.from_columns([vec("1/z")], RING))
    S = scale_lattice(L, T)
    assert S == Lattice.standard(1, RING)
    L2 = Lattice(Matrix.from_columns([vec("1/z", "0"), vec("0", "1")], RING))
    S2 = scale_lattice(L2, T)
    assert S2 == Lattice(Matrix.from_columns([vec("1", "0"), vec("0", "z")], RING))


def test_scale_zero_rejected():
    with pytest.raises(ValueError):
        scale_lattice(Lattice.standard(1, RING), RatFun.zero(QQ, LOCAL_VAR))


def test_scaling_preserves_t_nabla_stability():
    # transport of stability under h = t^m for |m| <= 3
    A = local("[[0,1/z],[0,0]]")
    out = saturate(A)
    assert out.stable
    L = out.lattice
    for m in (-3, -2, -1, 1, 2, 3):
        S = scale_lattice(L, T**m)
        for b in S.basis_columns():
            assert S.contains(t_nabla_apply(A, b))


# -- clearing power -------------------------------------------------------------


def test_clearing_power_examples():
    std = Lattice.standard(2, RING)
    assert clearing_power([vec("1", "0")], std) == 0
    assert clearing_power([vec("1/z^2", "0")], std) == 2
    # componentwise valuation oracle: min valuation -3, so power 3
    assert clearing_power([vec("1/z", "1/z^3")], std) == 3


# -- saturation ------------------------------------------------------------------


def test_saturate_simple_pole_is_stable_immediately():
    for c in ("1", "-2", "1/2"):
        out = saturate(local(f"[[{c}/z]]"))
        assert out.stable and out.steps == 0
        assert out.lattice == Lattice.standard(1, RING)


def test_saturate_scalar_double_pole_diverges():
    # scalar oracle: a gauge changes A by F'/F, a simple pole at worst, so a
    # second-order pole cannot be removed; valuations drop by one each step
    out = saturate(local("[[1/z^2]]"))
    assert not out.stable
    assert out.min_valuation < out.cutoff


def test_saturate_nilpotent_simple_pole():
    out = saturate(local("[[0,1/z],[0,0]]"))
    assert out.stable and out.steps == 0


def test_saturate_hand_iterated_2x2():
    # A = dF0 * F0^-1 for F0 = [[1, 1/t],[0,1]] equals [[0,-1/t^2],[0,0]];
    # one saturation step reaches the lattice <e1/t, e2> (hand iteration)
    A = local("[[0,-1/z^2],[0,0]]")
    out = saturate(A)
    assert out.stable and out.steps == 1
    expected = Lattice(Matrix.from_columns([vec("1/z", "0"), vec("0", "1")], RING))
    assert out.lattice == expected


def test_saturate_verdict_is_gauge_invariant(rng):
    for _ in range(12):
        n = rng.choice([1, 2])
        A = rand_simple_pole_local(rng, n)
        F = rand_invertible(rng, n, var=LOCAL_VAR, pole_points=(0,), tpowers=1)
        B = gauge(A, F)
        assert saturate(B).stable == saturate(A).stable


def test_saturate_irregular_gauge_invariant(rng):
    A = local("[[1/z^3]]")
    for _ in range(6):
        F = rand_invertible(rng, 1, var=LOCAL_VAR, pole_points=(0, 1), tpowers=2)
        B = gauge(A, F)
        assert not saturate(B).stable


# -- nakayama ---------------------------------------------------------------------


def test_nakayama_redundant_generator():
    gens = Matrix.from_columns([vec("1", "0"), vec("0", "1"), vec("1", "z")], RING)
    L = nakayama_basis(Lattice(gens))
    assert L.normalized_basis == Matrix.from_columns([vec("1", "0"), vec("0", "1")], RING)


def test_nakayama_drops_t_multiple():
    gens = Matrix.from_columns([vec("z", "0"), vec("1", "0"), vec("0", "1")], RING)
    L = nakayama_basis(Lattice(gens))
    assert L.normalized_basis == Matrix.from_columns([vec("1", "0"), vec("0", "1")], RING)


def test_nakayama_tie_breaking_by_valuation_then_index():
    # mod-t rank oracle (exhaustive): {(1,1),(1,1+t)} is the unique valid
    # pick under lowest-valuation-first, lowest-index-first ordering
    gens = Matrix.from_columns(
        [vec("1", "1"), vec("1", "1+z"), vec("0", "z")], RING
    )
    L = nakayama_basis(Lattice(gens))
    assert L.normalized_basis == Matrix.from_columns(
        [vec("1", "1"), vec("1", "1+z")], RING
    )


def test_nakayama_requires_full_rank():
    with pytest.raises(ValueError):
        Lattice(Matrix.from_columns([vec("1", "0"), vec("2", "0")], RING))


# -- reduce_to_simple_pole -----------------------------------------------------------


def test_reduce_already_reduced_uses_identity():
    A = local("[[5/z]]")
    cert = reduce_to_simple_pole(A)
    assert cert.F == Matrix.identity(1, RING)
    assert cert.A_prime == A


def test_reduce_hand_case_and_exact_identity():
    A = local("[[0,-1/z^2],[0,0]]")
    cert = reduce_to_simple_pole(A)
    assert cert.verify(A)
    assert cert.simple_pole()
    assert cert.F == Matrix.from_columns([vec("z", "0"), vec("0", "1")], RING)


def test_reduce_double_pole_blocked():
    out = reduce_to_simple_pole(local("[[1/z^2,0],[0,0]]"))
    assert isinstance(out, NotRegularSingular)


def test_reduce_contract_on_gauged_corpus(rng):
    # lemma contract: gauging a simple-pole system by a rational F keeps it
    # regular singular, and the reduction returns an exactly verified
    # certificate with t A' having denominators prime to t
    for _ in range(10):
        n = rng.choice([2, 3])
        S = rand_simple_pole_local(rng, n)
        F = rand_invertible(rng, n, var=LOCAL_VAR, pole_points=(0, 1), tpowers=1)
        A = gauge(S, F)
        cert = reduce_to_simple_pole(A)
        assert isinstance(cert, GaugeCertificate)
        assert cert.verify(A)
        for row in cert.A_prime.rows:
            for e in row:
                assert (T * e).valuation_at_zero() >= 0


def test_reduce_idempotent_with_unimodular_change():
    rng = random.Random(99)
    for _ in range(6):
        S = rand_simple_pole_local(rng, 2)
        F = rand_invertible(rng, 2, var=LOCAL_VAR, pole_points=(0,), tpowers=1)
        A = gauge(S, F)
        cert = reduce_to_simple_pole(A)
        again = reduce_to_simple_pole(cert.A_prime)
        # second pass cannot deepen the pole, and its F is a t-unit
        assert matrix_valuation_at_zero(again.A_prime) >= matrix_valuation_at_zero(
            cert.A_prime
        )
        det = again.F.det()
        assert det.valuation_at_zero() == 0


def test_certificate_det_normalization():
    A = local("[[0,-1/z^2],[0,0]]")
    cert = reduce_to_simple_pole(A)
    det = cert.F.det()
    v = det.valuation_at_zero()
    unit = det / T ** int(v)
    assert unit.eval_at_zero() == 1


def test_intersection_model_membership():
    # every generator reduces to a combination of the selected basis with
    # denominators prime to t, and conversely
    A = local("[[0,-1/z^2],[0,0]]")
    out = saturate(A)
    L = nakayama_basis(out.lattice)
    B = Lattice(L.normalized_basis)
    for g in L.generators.columns():
        assert B.contains(g)
    for b in L.normalized_basis.columns():
        assert out.lattice.contains(b)
