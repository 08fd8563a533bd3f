"""Points of the projective line, local charts, and the gauge action.

A system is a square matrix of rational functions in the global variable z.
Localizing at a finite point p rewrites it in t with z = t + p; at infinity
the chart z = 1/t turns d/dz into -t^2 d/dt, so the local matrix becomes
-(1/t^2) A(1/t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .fields import QQ, FractionField, NumberField
from .matrices import Matrix
from .poly import Poly
from .ratfun import RatFun

GLOBAL_VAR = "z"
LOCAL_VAR = "t"


class Point:
    """A point of P^1: finite with a coefficient-field coordinate, or infinity."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    @classmethod
    def finite(cls, value):
        return cls(value)

    @classmethod
    def infinity(cls):
        return cls(None)

    @property
    def is_infinity(self):
        return self.value is None

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.value == other.value

    def __hash__(self):
        return hash(("inf",)) if self.is_infinity else hash(self.value)

    def __str__(self):
        return "inf" if self.is_infinity else str(self.value)

    def __repr__(self):
        return f"Point({self})"


INFINITY = Point.infinity()


@dataclass(frozen=True)
class Chart:
    """Substitution taking the global variable to the local one."""

    kind: str  # "shift" or "reciprocal"
    point: Point

    def describe(self):
        if self.kind == "shift":
            if not self.point.value:
                return f"{GLOBAL_VAR}={LOCAL_VAR}"
            ps = str(self.point)
            sep = "" if ps.startswith("-") else "+"
            if any(op in ps[1:] for op in "+-"):
                ps, sep = "(" + ps + ")", "+"
            return f"{GLOBAL_VAR}={LOCAL_VAR}{sep}{ps}"
        return f"{GLOBAL_VAR}=1/{LOCAL_VAR}"


@dataclass(frozen=True)
class LocalSystem:
    """A system rewritten in the local variable at a point."""

    matrix: Matrix  # entries RatFun in LOCAL_VAR
    point: Point
    chart: Chart

    @property
    def n(self):
        return self.matrix.n


def system_ring(field, var=GLOBAL_VAR):
    return FractionField(field, var)


def entry_field(A: Matrix):
    return A.ring.base


def localize(A: Matrix, p: Point) -> LocalSystem:
    """Rewrite the system in the local variable at p."""
    field = entry_field(A)
    local_ring = FractionField(field, LOCAL_VAR)
    if p.is_infinity:
        t = RatFun.gen(field, LOCAL_VAR)
        recip = RatFun.one(field, LOCAL_VAR) / t
        factor = -(t ** -2)
        B = A.map(lambda e: factor * e.rename(LOCAL_VAR).compose(recip), local_ring)
        return LocalSystem(B, p, Chart("reciprocal", p))
    c = field.coerce(p.value)
    B = A.map(lambda e: e.rename(LOCAL_VAR).shift(c), local_ring)
    return LocalSystem(B, p, Chart("shift", p))


def delocalize(sys: LocalSystem) -> Matrix:
    """Invert the chart substitution, recovering the global matrix."""
    field = entry_field(sys.matrix)
    ring = FractionField(field, GLOBAL_VAR)
    if sys.chart.kind == "shift":
        c = field.coerce(sys.point.value)
        return sys.matrix.map(lambda e: e.rename(GLOBAL_VAR).shift(-c), ring)
    z = RatFun.gen(field, GLOBAL_VAR)
    recip = RatFun.one(field, GLOBAL_VAR) / z
    factor = -(z ** -2)
    return sys.matrix.map(lambda e: factor * e.rename(GLOBAL_VAR).compose(recip), ring)


def mat_derivative(A: Matrix) -> Matrix:
    return A.map(lambda e: e.derivative())


class SingularGaugeError(ZeroDivisionError):
    pass


def gauge(A: Matrix, F: Matrix) -> Matrix:
    """F A F^-1 + F' F^-1, the change of system under y -> F y."""
    if not F.det():
        raise SingularGaugeError("gauge matrix is singular")
    Finv = F.inverse()
    return F * A * Finv + mat_derivative(F) * Finv


def gauge_residual(A: Matrix, F: Matrix, A_prime: Matrix) -> Matrix:
    """Cross-multiplied gauge identity: A'F - FA - F' (zero iff exact)."""
    return A_prime * F - F * A - mat_derivative(F)


def mobius(A: Matrix, a, b, c, d) -> Matrix:
    """Pull the system back along z = (a*w + b)/(c*w + d), ad - bc != 0.

    Classification at a point q of the result matches the original at
    (a*q + b)/(c*q + d).
    """
    field = entry_field(A)
    a, b, c, d = (field.coerce(x) for x in (a, b, c, d))
    det = a * d - b * c
    if not det:
        raise ValueError("degenerate Moebius map")
    w = RatFun.gen(field, GLOBAL_VAR)
    num = w * a + b
    den = w * c + d
    phi = num / den
    dphi = (den * den) ** -1 * det
    ring = FractionField(field, GLOBAL_VAR)
    return A.map(lambda e: dphi * e.compose(phi), ring)


def mobius_point(a, b, c, d, p: Point, field=QQ) -> Point:
    """Image of a point under w -> (a*w + b)/(c*w + d)."""
    a, b, c, d = (field.coerce(x) for x in (a, b, c, d))
    if p.is_infinity:
        if not c:
            return INFINITY
        return Point.finite(a / c)
    v = field.coerce(p.value)
    den = c * v + d
    if not den:
        return INFINITY
    return Point.finite((a * v + b) / den)


def matrix_valuation_at_zero(A: Matrix):
    """min over entries of ord_0; math.inf for the zero matrix."""
    return min((e.valuation_at_zero() for r in A.rows for e in r), default=math.inf)


def pole_order_at_zero(A: Matrix) -> int:
    v = matrix_valuation_at_zero(A)
    if v is math.inf or v >= 0:
        return 0
    return -int(v)


def lift_matrix(A: Matrix, target_field) -> Matrix:
    """Re-coerce a matrix of rational functions into a larger coefficient field."""
    src = entry_field(A)
    if src == target_field:
        return A
    ring = FractionField(target_field, A.ring.var)

    def lift_entry(e: RatFun) -> RatFun:
        num = e.num.map_coeffs(target_field.coerce, target_field)
        den = e.den.map_coeffs(target_field.coerce, target_field)
        return RatFun(num, den, reduce=False)

    return A.map(lift_entry, ring)


def downcast_rational(A: Matrix) -> Matrix:
    """Project a matrix with rational-valued extension coefficients onto Q."""
    src = entry_field(A)
    if src == QQ:
        return A
    if not isinstance(src, NumberField) or src.base != QQ:
        raise ValueError("matrix does not live over an extension of Q")
    ring = FractionField(QQ, A.ring.var)

    def down(e: RatFun) -> RatFun:
        num = e.num.map_coeffs(lambda c: c.rational_value(), QQ)
        den = e.den.map_coeffs(lambda c: c.rational_value(), QQ)
        return RatFun(num, den)

    return A.map(down, ring)


def matrix_is_rational(A: Matrix) -> bool:
    src = entry_field(A)
    if src == QQ:
        return True
    if isinstance(src, NumberField) and src.base == QQ:
        return all(
            c.is_rational()
            for r in A.rows
            for e in r
            for p in (e.num, e.den)
            for c in p.coeffs
        )
    return False


def rational_system(rows) -> Matrix:
    """Convenience constructor: matrix of RatFun in z over Q from strings/values."""
    from .parsing import parse_matrix_text  # local import to avoid a cycle

    if isinstance(rows, str):
        doc = parse_matrix_text(rows)
        return doc.matrix
    ring = FractionField(QQ, GLOBAL_VAR)
    out = []
    for r in rows:
        row = []
        for e in r:
            if isinstance(e, RatFun):
                row.append(e)
            elif isinstance(e, Poly):
                row.append(RatFun.from_poly(e))
            else:
                row.append(RatFun.const(Fraction(e), QQ, GLOBAL_VAR))
        out.append(row)
    return Matrix(out, ring)
