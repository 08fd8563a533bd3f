"""Coefficient field contexts: Q, simple algebraic extensions, and towers
of rational function fields for parameters.

A field context provides `zero`, `one`, `coerce`, equality, and printing.
Elements themselves carry the arithmetic through operator overloading, so
polynomials and matrices stay generic over the coefficient field.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, poly_xgcd
from .ratfun import RatFun

DEFAULT_DEGREE_CAP = 6


class FieldError(ValueError):
    pass


class RationalField:
    """The rationals, with fractions.Fraction elements."""

    zero = Fraction(0)
    one = Fraction(1)
    name = "QQ"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, NFElem) and x.is_rational():
            return x.rational_value()
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def is_element(self, x):
        return isinstance(x, (Fraction, int))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class NFElem:
    """Element of a simple extension, stored as a residue mod the minimal
    polynomial: a tuple of base-field coefficients of length deg(m)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)
        assert len(self.coeffs) == field.degree

    def _poly(self):
        return Poly(self.coeffs, self.field.base, self.field.gen_name)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise FieldError(f"{self} is not in the base field")
        return self.coeffs[0]

    def __bool__(self):
        return any(self.coeffs)

    def _coerce_other(self, other):
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise FieldError("elements of different number fields")
            return other
        try:
            return self.field.coerce(other)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return NFElem(self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return NFElem(self.field, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        prod = self._poly() * other._poly()
        return self.field._reduce(prod)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = poly_xgcd(self._poly(), self.field.minpoly)
        if g.degree != 0:
            raise FieldError("minimal polynomial is not irreducible")
        inv = s.scale(self.field.base.one / g.constant_term())
        return self.field._reduce(inv)

    def __truediv__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            raise ValueError("powers must be integers")
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce_other(other)
        if other is None or other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __str__(self):
        from .poly import format_poly

        return format_poly(self._poly())

    def __repr__(self):
        return f"NFElem({self}, {self.field.name})"


class NumberField:
    """Simple extension base[x]/(m) for a monic irreducible m of degree >= 2.

    Irreducibility is the caller's duty to establish (the factorization
    module provides the check); arithmetic here only assumes it.
    """

    def __init__(self, minpoly: Poly, gen_name: str = "a"):
        if minpoly.degree < 2:
            raise FieldError("minimal polynomial must have degree >= 2")
        if minpoly.leading() != minpoly.field.one:
            raise FieldError("minimal polynomial must be monic")
        self.base = minpoly.field
        self.minpoly = minpoly.rename(gen_name)
        self.gen_name = gen_name
        self.degree = int(minpoly.degree)
        self.name = f"{self.base}[{gen_name}]/({self.minpoly})"
        bz, bo = self.base.zero, self.base.one
        self.zero = NFElem(self, (bz,) * self.degree)
        self.one = NFElem(self, (bo,) + (bz,) * (self.degree - 1))

    def gen(self):
        bz, bo = self.base.zero, self.base.one
        return NFElem(self, (bz, bo) + (bz,) * (self.degree - 2))

    def _reduce(self, p: Poly) -> NFElem:
        r = p % self.minpoly.rename(p.var) if p.degree >= self.degree else p
        coeffs = list(r.coeffs) + [self.base.zero] * (self.degree - len(r.coeffs))
        return NFElem(self, coeffs)

    def from_base(self, c) -> NFElem:
        c = self.base.coerce(c)
        return NFElem(self, (c,) + (self.base.zero,) * (self.degree - 1))

    def coerce(self, x):
        if isinstance(x, NFElem):
            if x.field != self:
                raise TypeError("element of a different number field")
            return x
        return self.from_base(x)

    def embed_poly(self, p: Poly) -> NFElem:
        """Value of a base-coefficient polynomial at the generator."""
        return self._reduce(p.rename(self.gen_name).map_coeffs(self.base.coerce, self.base))

    def __eq__(self, other):
        return (
            isinstance(other, NumberField)
            and other.base == self.base
            and other.gen_name == self.gen_name
            and other.minpoly.coeffs == self.minpoly.coeffs
        )

    def __hash__(self):
        return hash((self.gen_name, self.minpoly.coeffs))

    def __repr__(self):
        return self.name


class FractionField:
    """Rational functions in one variable over a base field context.

    Elements are RatFun instances; stacking these builds parameter fields
    Q(a)(b)... one variable at a time.
    """

    def __init__(self, base, var: str):
        self.base = base
        self.var = var
        self.zero = RatFun.zero(base, var)
        self.one = RatFun.one(base, var)
        self.name = f"{base}({var})"

    def gen(self):
        return RatFun.gen(self.base, self.var)

    def coerce(self, x):
        if isinstance(x, RatFun) and x.var == self.var and x.num.field == self.base:
            return x
        if isinstance(x, Poly) and x.var == self.var and x.field == self.base:
            return RatFun.from_poly(x)
        # anything else must embed through the base (lower tower levels, ints)
        return RatFun.const(self.base.coerce(x), self.base, self.var)

    def __eq__(self, other):
        return (
            isinstance(other, FractionField)
            and other.var == self.var
            and other.base == self.base
        )

    def __hash__(self):
        return hash((self.var, self.base))

    def __repr__(self):
        return self.name


def parameter_field(names):
    """Q(names[0])(names[1])... as a tower of fraction fields."""
    field = QQ
    for name in names:
        field = FractionField(field, name)
    return field


def embed_rational(field, value):
    """Image of a rational number in an arbitrary tower field."""
    return field.coerce(Fraction(value)) if not isinstance(field, RationalField) else Fraction(value)
