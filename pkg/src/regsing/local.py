"""Local classification at t=0: regular, regular singular, or irregular.

The pipeline is saturation (divergence means irregular), then the residue of
the simple-pole form for exponents, then a shearing loop deciding whether the
pole can be removed entirely.  Shearing conjugates the residue into blocks
split by a chosen integer eigenvalue and scales one block by t^(+-1), shifting
that part of the spectrum by one; a point is regular exactly when all
exponents are integers and the spectrum can be driven to zero with vanishing
residue.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .factor import factor_poly, integer_resonances, integer_roots, linear_roots
from .fields import NumberField, RationalField, QQ
from .lattice import (
    GaugeCertificate,
    NotRegularSingular,
    SaturationOutcome,
    reduce_to_simple_pole,
)
from .matrices import Matrix
from .poly import Poly
from .ratfun import RatFun
from .series import laurent_expand
from .systems import (
    LOCAL_VAR,
    LocalSystem,
    gauge,
    matrix_valuation_at_zero,
)

EXPONENT_VAR = "x"


@dataclass
class ResidueData:
    residue: Matrix  # constant matrix over the analysis field
    char_poly: Poly
    exponent_roots: list  # [(field element, multiplicity)]
    exponent_factors: list  # [(irreducible Poly of degree >= 2, multiplicity)]


def residue_matrix(A_prime: Matrix) -> Matrix:
    """(t * A')(0); requires t*A' to have denominators prime to t."""
    if matrix_valuation_at_zero(A_prime) < -1:
        raise ValueError("matrix does not have a simple pole")
    field = A_prime.ring.base
    t = RatFun.gen(field, LOCAL_VAR)
    return A_prime.map(lambda e: (t * e).eval_at_zero(), field)


def _rational_view(chi: Poly):
    """chi over Q when its extension-field coefficients are all rational."""
    f = chi.field
    if isinstance(f, RationalField):
        return chi
    if isinstance(f, NumberField) and f.base == QQ:
        if all(c.is_rational() for c in chi.coeffs):
            return chi.map_coeffs(lambda c: c.rational_value(), QQ)
    return None


def exponent_factorization(chi: Poly):
    """Roots and residual irreducible factors of a characteristic polynomial.

    Polynomials with rational coefficients are factored over Q even when the
    ambient field is an extension: reports must not depend on generators the
    input never used.
    """
    over_q = _rational_view(chi)
    work = over_q if over_q is not None else chi
    _, factors = factor_poly(work)
    roots = linear_roots(factors)
    higher = [(f, m) for f, m in factors if f.degree >= 2]
    if over_q is not None and not isinstance(chi.field, RationalField):
        K = chi.field
        roots = [(K.coerce(r), m) for r, m in roots]
        higher = [(f.map_coeffs(K.coerce, K), m) for f, m in higher]
    return roots, higher


def residue_data(cert: GaugeCertificate, with_factors: bool = True) -> ResidueData:
    R = residue_matrix(cert.A_prime)
    chi = R.charpoly(EXPONENT_VAR)
    if with_factors:
        roots, higher = exponent_factorization(chi)
    else:
        roots, higher = [], []
    return ResidueData(R, chi, roots, higher)


# -- shearing ---------------------------------------------------------------


def _split_by_eigenvalue(R: Matrix, mu):
    """Invertible P with P^-1 R P block-split as (generalized mu-space, rest)."""
    field = R.ring
    n = R.n
    M = R - Matrix.identity(n, field) * mu
    Mn = Matrix.identity(n, field)
    for _ in range(n):
        Mn = Mn * M
    ker = Mn.kernel_basis()
    _, pivots = Mn.rref()
    image = [Mn.column(j) for j in pivots]
    cols = list(ker) + list(image)
    if len(cols) != n:
        raise AssertionError("generalized eigenspace split failed")
    return Matrix.from_columns(cols, field), len(ker)


def _shear_gauge(A1: Matrix, mu, block: int, n: int) -> Matrix:
    """Constant split then t^(+-1) scaling of the mu-block."""
    field = A1.ring.base
    t = RatFun.gen(field, LOCAL_VAR)
    tpow = t ** (-1 if mu > 0 else 1)
    entries = [tpow if i < block else RatFun.one(field, LOCAL_VAR) for i in range(n)]
    return Matrix.diagonal(entries, A1.ring)


MAX_SHEAR_STEPS_SLACK = 4


def is_regular_point(cert: GaugeCertificate, A: Matrix | None = None):
    """Decide whether a simple-pole certificate upgrades to a pole-free one.

    Returns (True, composed certificate with A'' holomorphic) or (False, None).
    The point is regular iff every exponent is an integer and the shearing
    loop ends with zero residue; a nonzero nilpotent residue means the formal
    solutions need a logarithm, so the point is only regular singular.
    """
    if not cert.simple_pole():
        raise ValueError("is_regular_point expects a simple-pole certificate")
    A1 = cert.A_prime
    F = cert.F
    n = A1.n
    field = A1.ring.base
    R = residue_matrix(A1)
    chi = R.charpoly(EXPONENT_VAR)
    roots, cofactor = integer_roots(chi)
    if cofactor.degree > 0:
        return False, None
    budget = sum(abs(r) * m for r, m in roots) + MAX_SHEAR_STEPS_SLACK
    for _ in range(budget):
        nonzero = [r for r, _ in roots if r != 0]
        if not nonzero:
            if R.is_zero():
                out = GaugeCertificate(F, A1)
                if A is not None and not out.verify(A):
                    raise AssertionError("composed certificate failed verification")
                return True, out
            return False, None
        mx = max(nonzero)
        mu = mx if mx > 0 else min(nonzero)
        P, block = _split_by_eigenvalue(R, field.coerce(mu))
        ring = A1.ring
        P_rat = P.map(lambda c: RatFun.const(c, field, LOCAL_VAR), ring)
        step = _shear_gauge(A1, mu, block, n) * P_rat.inverse()
        A1 = gauge(A1, step)
        F = step * F
        if matrix_valuation_at_zero(A1) < -1:
            raise AssertionError("shearing broke the simple-pole form")
        R = residue_matrix(A1)
        chi = R.charpoly(EXPONENT_VAR)
        roots, cofactor = integer_roots(chi)
        if cofactor.degree > 0:
            raise AssertionError("shearing produced non-integer exponents")
    raise AssertionError("shearing did not terminate within its budget")


# -- classification -----------------------------------------------------------


REGULAR = "regular"
REGULAR_SINGULAR = "regular_singular"
IRREGULAR = "irregular"
INDETERMINATE = "indeterminate"


@dataclass
class LocalClassification:
    kind: str
    system: LocalSystem | None = None
    residue: ResidueData | None = None
    certificate: GaugeCertificate | None = None  # simple-pole form
    regular_certificate: GaugeCertificate | None = None  # pole-free form
    evidence: SaturationOutcome | None = None
    notes: list = dc_field(default_factory=list)

    @property
    def exponents(self):
        return self.residue.exponent_roots if self.residue else []

    @property
    def exponent_factors(self):
        return self.residue.exponent_factors if self.residue else []

    def is_regular(self):
        return self.kind == REGULAR

    def is_regular_singular(self):
        return self.kind in (REGULAR, REGULAR_SINGULAR)


def classify_local(sys: LocalSystem, with_factors: bool = True) -> LocalClassification:
    """Full local pipeline: saturate, take residue data, attempt the upgrade."""
    out = reduce_to_simple_pole(sys.matrix)
    if isinstance(out, NotRegularSingular):
        return LocalClassification(IRREGULAR, system=sys, evidence=out.outcome)
    rd = residue_data(out, with_factors=with_factors)
    ok, upgraded = is_regular_point(out, A=sys.matrix)
    if ok:
        return LocalClassification(
            REGULAR,
            system=sys,
            residue=rd,
            certificate=out,
            regular_certificate=upgraded,
        )
    return LocalClassification(
        REGULAR_SINGULAR, system=sys, residue=rd, certificate=out
    )


def resonances(chi: Poly):
    return integer_resonances(chi)


def power_series_fundamental(A: Matrix, order: int):
    """Taylor coefficients Y_0..Y_order of the fundamental solution of a
    pole-free system, from m*Y_m = sum A_i Y_{m-1-i} with Y_0 = I."""
    if matrix_valuation_at_zero(A) < 0:
        raise ValueError("matrix must be holomorphic at the origin")
    field = A.ring.base
    n = A.n
    coeff_mats = []
    for i in range(order):
        coeff_mats.append(
            A.map(lambda e, i=i: laurent_expand(e, order).coefficient(i), field)
        )
    Y = [Matrix.identity(n, field)]
    for m in range(1, order + 1):
        acc = Matrix.zeros(n, n, field)
        for i in range(m):
            acc = acc + coeff_mats[i] * Y[m - 1 - i]
        inv_m = field.one / field.coerce(m)
        Y.append(acc * inv_m)
    return Y
