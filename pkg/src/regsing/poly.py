"""Dense univariate polynomials over an arbitrary coefficient field.

A polynomial is a tuple of coefficients in ascending degree order with no
trailing zeros; the zero polynomial has an empty tuple and degree -inf.
Coefficients may be anything the attached field context accepts: rationals,
algebraic numbers, or rational functions in parameters.  All arithmetic is
exact.
"""

from __future__ import annotations

from fractions import Fraction

NEG_INF = float("-inf")


class Poly:
    """sum(coeffs[i] * var**i) with coefficients in a field context."""

    __slots__ = ("coeffs", "field", "var", "_hash")

    def __init__(self, coeffs, field, var):
        cs = [field.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.field = field
        self.var = var
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field, var):
        return cls((), field, var)

    @classmethod
    def one(cls, field, var):
        return cls((field.one,), field, var)

    @classmethod
    def const(cls, c, field, var):
        return cls((c,), field, var)

    @classmethod
    def gen(cls, field, var):
        return cls((field.zero, field.one), field, var)

    @classmethod
    def from_roots(cls, roots, field, var):
        p = cls.one(field, var)
        x = cls.gen(field, var)
        for r in roots:
            p = p * (x - cls.const(r, field, var))
        return p

    # -- basic structure ----------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __bool__(self):
        return bool(self.coeffs)

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def is_constant(self):
        return len(self.coeffs) <= 1

    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else self.field.zero

    def coefficient(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def valuation_at_zero(self):
        """Order of vanishing at 0; None for the zero polynomial."""
        if not self.coeffs:
            return None
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise AssertionError("unnormalized polynomial")

    def _same(self, other):
        return self.field == other.field and self.var == other.var

    # -- arithmetic ----------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, Poly):
            if not self._same(other):
                raise ValueError(
                    f"incompatible polynomials: {self.var} over {self.field} "
                    f"vs {other.var} over {other.field}"
                )
            return other
        try:
            c = self.field.coerce(other)
        except (TypeError, ValueError):
            return None
        return Poly((c,), self.field, self.var)

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out, self.field, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.field, self.var)

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.field, self.var)
        if isinstance(a[0], Fraction) and isinstance(b[0], Fraction):
            return self._mul_rational(other)
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] = out[i + j] + ca * cb
        return Poly(out, self.field, self.var)

    def _mul_rational(self, other):
        """Integer convolution over a common denominator (fast path)."""
        import math

        da = 1
        for c in self.coeffs:
            da = da * (c.denominator // math.gcd(da, c.denominator))
        db = 1
        for c in other.coeffs:
            db = db * (c.denominator // math.gcd(db, c.denominator))
        A = [int(c * da) for c in self.coeffs]
        B = [int(c * db) for c in other.coeffs]
        out = [0] * (len(A) + len(B) - 1)
        for i, ca in enumerate(A):
            if ca:
                for j, cb in enumerate(B):
                    if cb:
                        out[i + j] += ca * cb
        d = da * db
        return Poly([Fraction(c, d) for c in out], self.field, self.var)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Poly.one(self.field, self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c):
        c = self.field.coerce(c)
        return Poly([a * c for a in self.coeffs], self.field, self.var)

    def __divmod__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        field, var = self.field, self.var
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(field, var), self
        if self.coeffs and isinstance(self.coeffs[0], Fraction) and isinstance(other.coeffs[0], Fraction):
            return self._divmod_rational(other)
        inv_lead = field.one / other.leading()
        quo = [field.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * inv_lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Poly(quo, field, var), Poly(rem[: len(other.coeffs) - 1], field, var)

    def _divmod_rational(self, other):
        """Integer pseudo-division over a common denominator (fast path)."""
        import math

        field, var = self.field, self.var
        da = 1
        for c in self.coeffs:
            da = da * (c.denominator // math.gcd(da, c.denominator))
        db = 1
        for c in other.coeffs:
            db = db * (c.denominator // math.gcd(db, c.denominator))
        A = [int(c * da) for c in self.coeffs]
        B = [int(c * db) for c in other.coeffs]
        nb = len(B)
        lb = B[-1]
        e = len(A) - nb + 1
        R = list(A)
        Q = [0] * e
        while R and len(R) >= nb:
            la = R[-1]
            off = len(R) - nb
            if lb != 1:
                R = [c * lb for c in R]
                for i in range(e):
                    Q[i] *= lb
                la = R[-1]
            Q[off] += la
            for j in range(nb):
                R[off + j] -= la * B[j]
            while R and R[-1] == 0:
                R.pop()
            e -= 1
        # remaining factor lb^e to reach lb^(dA-dB+1) overall
        scale_pow = lb**e if e > 0 else 1
        denom_q = da * (lb ** (len(A) - nb + 1)) // 1
        quo = [Fraction(c * scale_pow * db, denom_q) for c in Q]
        rem = [Fraction(c * scale_pow, denom_q) for c in R]
        return Poly(quo, field, var), Poly(rem, field, var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ValueError("division is not exact")
        return q

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = self._coerce_other(other)
            if other is None or other is NotImplemented:
                return NotImplemented
        return (
            self.var == other.var
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.var, self.coeffs))
        return self._hash

    # -- calculus and substitution --------------------------------------

    def derivative(self):
        if len(self.coeffs) <= 1:
            return Poly.zero(self.field, self.var)
        out = [self.field.coerce(i) * c for i, c in enumerate(self.coeffs) if i]
        return Poly(out, self.field, self.var)

    def monic(self):
        if not self.coeffs:
            return self
        lead = self.leading()
        if lead == self.field.one:
            return self
        inv = self.field.one / lead
        return self.scale(inv)

    def eval(self, x):
        """Horner evaluation at a field element (or anything + and * accept)."""
        if not self.coeffs:
            zero = self.field.zero
            return zero * x if not isinstance(x, (int, Fraction)) else zero
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, other):
        """Substitute another polynomial for the variable."""
        out = Poly.zero(other.field, other.var)
        for c in reversed(self.coeffs):
            out = out * other + Poly.const(c, other.field, other.var)
        return out

    def shift(self, a):
        """Substitute var + a for var."""
        a = self.field.coerce(a)
        x = Poly((a, self.field.one), self.field, self.var)
        return self.compose(x)

    def rename(self, var):
        return Poly(self.coeffs, self.field, var)

    def reverse(self):
        """Coefficient reversal: x^deg * p(1/x)."""
        return Poly(tuple(reversed(self.coeffs)), self.field, self.var)

    def map_coeffs(self, fn, field):
        """Apply fn to every coefficient, landing in the given field."""
        return Poly([fn(c) for c in self.coeffs], field, self.var)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self})"


# -- module-level algorithms ------------------------------------------


def _int_content(cs):
    import math

    g = 0
    for c in cs:
        g = math.gcd(g, c)
    return g or 1


def _to_primitive_int(p: Poly):
    import math

    den = 1
    for c in p.coeffs:
        den = den * (c.denominator // math.gcd(den, c.denominator))
    ints = [int(c * den) for c in p.coeffs]
    g = _int_content(ints)
    return [c // g for c in ints]


def _int_pseudo_rem(a, b):
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while a and len(a) - 1 >= db:
        la = a[-1]
        a = [c * lb for c in a]
        off = len(a) - 1 - db
        for j, bc in enumerate(b):
            a[off + j] -= la * bc
        while a and a[-1] == 0:
            a.pop()
    return a


def _poly_gcd_rational(a: Poly, b: Poly) -> Poly:
    """Primitive pseudo-remainder sequence over Z; avoids the coefficient
    blowup of the naive Euclidean algorithm on Fraction coefficients."""
    A = _to_primitive_int(a)
    B = _to_primitive_int(b)
    if len(A) < len(B):
        A, B = B, A
    while B:
        R = _int_pseudo_rem(A, B)
        if R:
            g = _int_content(R)
            R = [c // g for c in R]
        A, B = B, R
    return Poly([Fraction(c) for c in A], a.field, a.var).monic()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; integer primitive-PRS over Q, Euclid over other fields."""
    if not a:
        return b.monic() if b else b
    if not b:
        return a.monic()
    if isinstance(a.coeffs[0], Fraction):
        return _poly_gcd_rational(a, b)
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with g = s*a + t*b and g monic (or zero)."""
    field, var = a.field, a.var
    r0, r1 = a, b
    s0, s1 = Poly.one(field, var), Poly.zero(field, var)
    t0, t1 = Poly.zero(field, var), Poly.one(field, var)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0:
        lead = r0.leading()
        inv = field.one / lead
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)
    return r0, s0, t0


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return Poly.zero(a.field, a.var)
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def squarefree_part(p: Poly) -> Poly:
    """p divided by gcd(p, p'), monic."""
    if not p or p.degree == 0:
        return p.monic() if p else p
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).monic()


def resultant(a: Poly, b: Poly):
    """Resultant via the Euclidean remainder sequence (exact over a field)."""
    field = a.field
    one = field.one
    if not a or not b:
        return field.zero
    res = one
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return res * b.coeffs[0] ** da
        r = a % b
        if not r:
            return field.zero
        dr = r.degree
        sign = -one if (da % 2 == 1 and db % 2 == 1) else one
        res = res * sign * b.leading() ** (da - dr)
        a, b = b, r


# -- printing ----------------------------------------------------------


def format_coeff(c) -> str:
    """Render a coefficient, parenthesized when it is a sum."""
    s = str(c)
    if any(op in s[1:] for op in "+-"):
        return "(" + s + ")"
    return s


def format_poly(p: Poly) -> str:
    """Canonical string, terms in descending degree, no spaces."""
    if not p.coeffs:
        return "0"
    field = p.field
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        if i == 0:
            term = format_coeff(c)
        else:
            xpow = p.var if i == 1 else f"{p.var}^{i}"
            if c == field.one:
                term = xpow
            elif c == -field.one:
                term = "-" + xpow
            else:
                term = format_coeff(c) + "*" + xpow
        if not parts:
            parts.append(term)
        elif term.startswith("-"):
            parts.append("-" + term[1:])
        else:
            parts.append("+" + term)
    return "".join(parts)
