"""Reduced rational functions num/den over an arbitrary coefficient field.

Canonical form: denominator monic and coprime to the numerator, so equality
is literal comparison of coefficient tuples.  Instances double as elements
of a fraction field, which is how parameter fields Q(a, b, ...) are built.
"""

from __future__ import annotations

import math

from .poly import Poly, poly_gcd, format_poly


class RatFun:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly, reduce: bool = True):
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            if num:
                if den.degree > 0:
                    g = poly_gcd(num, den)
                    if g.degree > 0:
                        num = num.exact_div(g)
                        den = den.exact_div(g)
                lead = den.leading()
                if lead != den.field.one:
                    inv = den.field.one / lead
                    num = num.scale(inv)
                    den = den.scale(inv)
            else:
                den = Poly.one(den.field, den.var)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_poly(cls, p: Poly):
        return cls(p, Poly.one(p.field, p.var), reduce=False)

    @classmethod
    def const(cls, c, field, var):
        return cls.from_poly(Poly.const(field.coerce(c), field, var))

    @classmethod
    def zero(cls, field, var):
        return cls.from_poly(Poly.zero(field, var))

    @classmethod
    def one(cls, field, var):
        return cls.from_poly(Poly.one(field, var))

    @classmethod
    def gen(cls, field, var):
        return cls.from_poly(Poly.gen(field, var))

    # -- structure -------------------------------------------------------

    @property
    def field(self):
        return self.num.field

    @property
    def var(self):
        return self.num.var

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_one()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_term()

    def _coerce_other(self, other):
        if isinstance(other, RatFun):
            if other.var != self.var or other.field != self.field:
                raise ValueError(
                    f"incompatible rational functions in {self.var} vs {other.var}"
                )
            return other
        if isinstance(other, Poly):
            if other.var == self.var and other.field == self.field:
                return RatFun.from_poly(other)
            other = None
        if other is None:
            return None
        try:
            c = self.field.coerce(other)
        except (TypeError, ValueError):
            return None
        return RatFun.const(c, self.field, self.var)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return RatFun(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, e):
        if not isinstance(e, int):
            raise ValueError("rational function powers must be integers")
        if e < 0:
            if not self:
                raise ZeroDivisionError("negative power of zero")
            return RatFun(self.den**-e, self.num**-e)
        return RatFun(self.num**e, self.den**e, reduce=False)

    def __eq__(self, other):
        other = self._coerce_other(other)
        if other is None or other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- calculus, valuations, substitution --------------------------------

    def derivative(self):
        return RatFun(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def valuation_at_zero(self):
        """Order at the origin; math.inf for the zero function."""
        if not self.num:
            return math.inf
        return self.num.valuation_at_zero() - self.den.valuation_at_zero()

    def valuation_at(self, a):
        """Order at a finite point of the coefficient field."""
        if not self.num:
            return math.inf
        return self.shift(a).valuation_at_zero()

    def eval(self, a):
        d = self.den.eval(a)
        if not d:
            raise ZeroDivisionError(f"pole at {a}")
        return self.num.eval(a) / d

    def eval_at_zero(self):
        return self.eval(self.field.zero)

    def shift(self, a):
        return RatFun(self.num.shift(a), self.den.shift(a))

    def compose(self, g: "RatFun") -> "RatFun":
        """Substitute the rational function g for the variable."""
        n, d = self.num, self.den
        deg = max(len(n.coeffs), len(d.coeffs)) - 1
        if deg < 0:
            return RatFun.zero(g.field, g.var)
        gn, gd = g.num, g.den
        # num(g) and den(g), both scaled by gd**deg
        num_acc = Poly.zero(g.field, g.var)
        den_acc = Poly.zero(g.field, g.var)
        gd_pow = Poly.one(g.field, g.var)
        gn_pows = [Poly.one(g.field, g.var)]
        for _ in range(deg):
            gn_pows.append(gn_pows[-1] * gn)
        for i in range(deg, -1, -1):
            if i < len(n.coeffs) and n.coeffs[i]:
                num_acc = num_acc + gn_pows[i].scale(n.coeffs[i]) * gd_pow
            if i < len(d.coeffs) and d.coeffs[i]:
                den_acc = den_acc + gn_pows[i].scale(d.coeffs[i]) * gd_pow
            if i:
                gd_pow = gd_pow * gd
        return RatFun(num_acc, den_acc)

    def rename(self, var):
        return RatFun(self.num.rename(var), self.den.rename(var), reduce=False)

    def map_coeffs(self, fn, field):
        return RatFun(self.num.map_coeffs(fn, field), self.den.map_coeffs(fn, field))

    def __str__(self):
        ns = format_poly(self.num)
        if self.den.is_one():
            return ns
        if len([c for c in self.num.coeffs if c]) > 1:
            ns = "(" + ns + ")"
        ds = format_poly(self.den)
        if len([c for c in self.den.coeffs if c]) > 1:
            ds = "(" + ds + ")"
        return ns + "/" + ds

    def __repr__(self):
        return f"RatFun({self})"
