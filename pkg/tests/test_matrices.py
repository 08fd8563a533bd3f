import random
from fractions import Fraction

import pytest

from regsing.fields import QQ
from regsing.matrices import Matrix
from regsing.poly import Poly


def M(rows):
    return Matrix([[Fraction(e) for e in r] for r in rows], QQ)


def test_shape_validation():
    with pytest.raises(ValueError):
        Matrix([[Fraction(1)], [Fraction(1), Fraction(2)]], QQ)


def test_det_and_inverse():
    A = M([[2, 1], [1, 1]])
    assert A.det() == 1
    assert A.inverse() == M([[1, -1], [-1, 2]])
    assert A * A.inverse() == Matrix.identity(2, QQ)


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        M([[1, 2], [2, 4]]).inverse()


def test_rank_and_kernel():
    A = M([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert A.rank() == 2
    ker = A.kernel_basis()
    assert len(ker) == 1
    v = ker[0]
    assert A.matvec(v) == (Fraction(0),) * 3


def _charpoly_oracle(A):
    """Independent oracle: cofactor expansion of det(xI - A) over Q[x]."""
    n = A.n
    x = Poly.gen(QQ, "x")
    entries = [
        [
            (x if i == j else Poly.zero(QQ, "x")) - Poly.const(A[i, j], QQ, "x")
            for j in range(n)
        ]
        for i in range(n)
    ]

    def det(rows):
        if len(rows) == 1:
            return rows[0][0]
        out = Poly.zero(QQ, "x")
        for j in range(len(rows)):
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            term = rows[0][j] * det(minor)
            out = out + (term if j % 2 == 0 else -term)
        return out

    return det(entries)


def test_charpoly_against_cofactor_oracle():
    rng = random.Random(13)
    for n in (1, 2, 3):
        for _ in range(12):
            A = Matrix(
                [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)],
                QQ,
            )
            assert A.charpoly("x") == _charpoly_oracle(A)


def test_charpoly_known():
    A = M([[0, 2], [1, 0]])
    assert A.charpoly("x") == Poly([Fraction(-2), Fraction(0), Fraction(1)], QQ, "x")


def test_trace_and_arith():
    A = M([[1, 2], [3, 4]])
    B = M([[0, 1], [1, 0]])
    assert (A + B - B) == A
    assert A.trace() == 5
    assert (A * B) == M([[2, 1], [4, 3]])
    assert A.matvec((Fraction(1), Fraction(1))) == (Fraction(3), Fraction(7))


def test_rref_pivots():
    A = M([[0, 1], [0, 0]])
    R, pivots = A.rref()
    assert pivots == [1]
    assert R == M([[0, 1], [0, 0]])
