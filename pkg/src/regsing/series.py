"""Truncated Laurent series with explicit precision tracking.

A series stores its valuation, the coefficients from that order upward, and
the absolute order `prec` through which the coefficients are exact.  The
zero-to-precision series keeps an empty coefficient tuple.  Arithmetic
propagates the worst-case precision of the operands; reading a coefficient
beyond the tracked precision raises instead of guessing.
"""

from __future__ import annotations

import math

from .ratfun import RatFun


class PrecisionError(ArithmeticError):
    """A coefficient beyond the tracked precision was requested."""


class LaurentSeries:
    __slots__ = ("valuation", "coeffs", "prec", "field", "var")

    def __init__(self, valuation, coeffs, prec, field, var):
        coeffs = [field.coerce(c) for c in coeffs]
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            valuation += 1
        while coeffs and valuation + len(coeffs) - 1 > prec:
            coeffs.pop()
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            valuation = prec + 1
        self.valuation = valuation
        self.coeffs = tuple(coeffs)
        self.prec = prec
        self.field = field
        self.var = var

    @classmethod
    def zero(cls, prec, field, var):
        return cls(prec + 1, (), prec, field, var)

    def is_zero_to_precision(self):
        return not self.coeffs

    def order(self):
        """Valuation, or math.inf when zero to precision."""
        return self.valuation if self.coeffs else math.inf

    def coefficient(self, k):
        if k > self.prec:
            raise PrecisionError(
                f"coefficient of {self.var}^{k} requested, known only through {self.var}^{self.prec}"
            )
        if k < self.valuation or k >= self.valuation + len(self.coeffs):
            return self.field.zero
        return self.coeffs[k - self.valuation]

    def coefficients_through(self, k):
        return [self.coefficient(i) for i in range(self.valuation, k + 1)]

    # -- arithmetic -----------------------------------------------------

    def _check(self, other):
        if self.field != other.field or self.var != other.var:
            raise ValueError("incompatible series")

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        self._check(other)
        prec = min(self.prec, other.prec)
        lo = min(self.valuation, other.valuation, prec + 1)
        out = []
        for k in range(lo, prec + 1):
            a = self.coefficient(k) if k >= self.valuation else self.field.zero
            b = other.coefficient(k) if k >= other.valuation else other.field.zero
            out.append(a + b)
        return LaurentSeries(lo, out, prec, self.field, self.var)

    def __neg__(self):
        return LaurentSeries(self.valuation, [-c for c in self.coeffs], self.prec, self.field, self.var)

    def __sub__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        self._check(other)
        prec = min(self.prec + other.valuation, other.prec + self.valuation)
        lo = self.valuation + other.valuation
        if lo > prec:
            return LaurentSeries.zero(prec, self.field, self.var)
        zero = self.field.zero
        out = [zero] * (prec - lo + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= len(out):
                    break
                if b:
                    out[k] = out[k] + a * b
        return LaurentSeries(lo, out, prec, self.field, self.var)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.var == other.var
            and self.field == other.field
            and self.valuation == other.valuation
            and self.coeffs == other.coeffs
            and self.prec == other.prec
        )

    def __hash__(self):
        return hash((self.valuation, self.coeffs, self.prec))

    def agrees_with(self, other):
        """Equality of all coefficients through the common precision."""
        prec = min(self.prec, other.prec)
        lo = min(self.valuation, other.valuation, prec + 1)
        return all(self.coefficient(k) == other.coefficient(k) for k in range(lo, prec + 1))

    def __str__(self):
        if not self.coeffs:
            return f"O({self.var}^{self.prec + 1})"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            k = self.valuation + i
            if k == 0:
                term = str(c)
            else:
                pw = self.var if k == 1 else f"{self.var}^{k}"
                term = pw if c == self.field.one else f"{c}*{pw}"
            parts.append(term)
        return " + ".join(parts) + f" + O({self.var}^{self.prec + 1})"

    def __repr__(self):
        return f"LaurentSeries({self})"


def laurent_expand(f: RatFun, prec: int) -> LaurentSeries:
    """Expansion of a rational function at the origin, exact through order prec."""
    field, var = f.field, f.var
    if not f:
        return LaurentSeries.zero(prec, field, var)
    vn = f.num.valuation_at_zero()
    vd = f.den.valuation_at_zero()
    val = vn - vd
    # unit parts of numerator and denominator
    ncs = list(f.num.coeffs[vn:])
    dcs = list(f.den.coeffs[vd:])
    length = prec - val + 1
    if length <= 0:
        return LaurentSeries.zero(prec, field, var)
    inv_d0 = field.one / dcs[0]
    out = []
    for k in range(length):
        acc = ncs[k] if k < len(ncs) else field.zero
        for j in range(1, min(k, len(dcs) - 1) + 1):
            acc = acc - dcs[j] * out[k - j]
        out.append(acc * inv_d0)
    return LaurentSeries(val, out, prec, field, var)
