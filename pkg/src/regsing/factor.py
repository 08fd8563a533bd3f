"""Polynomial factorization over the coefficient fields used here.

Rational roots and quadratics are handled directly; anything harder over Q
is delegated to sympy.  Factorization over a simple extension reduces to the
base field by Trager's norm method, and parameter-field polynomials go
through sympy's multivariate factorizer after clearing denominators.
sympy is imported lazily so the exact core stays import-light.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .fields import QQ, FractionField, NumberField, RationalField
from .poly import Poly, poly_gcd, resultant, squarefree_part
from .ratfun import RatFun


# -- generic helpers -----------------------------------------------------


def squarefree_decomposition(p: Poly):
    """[(a_i, i)] with p = lead * prod a_i^i, a_i monic squarefree coprime."""
    p = p.monic()
    out = []
    g = poly_gcd(p, p.derivative())
    w = p.exact_div(g)
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, g)
        fac = w.exact_div(y)
        if fac.degree > 0:
            out.append((fac.monic(), i))
        w = y
        g = g.exact_div(y)
        i += 1
    return out


def _factor_key(p: Poly):
    return (p.degree, tuple(str(c) for c in reversed(p.coeffs)))


def factor_poly(p: Poly):
    """(unit, [(monic irreducible, mult)]) over the polynomial's field."""
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    field = p.field
    if isinstance(field, RationalField):
        unit, factors = _factor_rational(p)
    elif isinstance(field, NumberField):
        unit, factors = _factor_number_field(p)
    elif isinstance(field, FractionField):
        unit, factors = _factor_parameter(p)
    else:
        raise TypeError(f"no factorization over {field!r}")
    factors.sort(key=lambda fm: _factor_key(fm[0]))
    return unit, factors


def is_irreducible(p: Poly) -> bool:
    if p.degree < 1:
        return False
    _, factors = factor_poly(p)
    return len(factors) == 1 and factors[0][1] == 1


def linear_roots(factors):
    """Roots coming from the degree-one factors of a factorization list."""
    out = []
    for f, mult in factors:
        if f.degree == 1:
            out.append((-f.coeffs[0], mult))
    return out


# -- rationals -----------------------------------------------------------


def _fraction_sqrt(c: Fraction):
    if c < 0:
        return None
    rn = math.isqrt(c.numerator)
    rd = math.isqrt(c.denominator)
    if rn * rn == c.numerator and rd * rd == c.denominator:
        return Fraction(rn, rd)
    return None


def _divisors(n: int):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_roots(p: Poly):
    """All rational roots with multiplicity (p over Q), plus the root-free cofactor."""
    assert isinstance(p.field, RationalField)
    roots = []
    x = Poly.gen(QQ, p.var)
    v = p.valuation_at_zero()
    if v:
        roots.append((Fraction(0), v))
        p = p.exact_div(x**v)
    if p.degree >= 1:
        den_lcm = 1
        for c in p.coeffs:
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        ints = [int(c * den_lcm) for c in p.coeffs]
        g = 0
        for c in ints:
            g = math.gcd(g, c)
        ints = [c // g for c in ints]
        c0, cl = ints[0], ints[-1]
        cands = set()
        for dn in _divisors(c0):
            for dd in _divisors(cl):
                cands.add(Fraction(dn, dd))
                cands.add(Fraction(-dn, dd))
        for r in sorted(cands):
            mult = 0
            lin = x - Poly.const(r, QQ, p.var)
            while p.degree >= 1 and not p.eval(r):
                p = p.exact_div(lin)
                mult += 1
            if mult:
                roots.append((r, mult))
    return roots, p


def _factor_rational(p: Poly):
    unit = p.leading()
    p = p.monic()
    var = p.var
    roots, cofactor = rational_roots(p)
    x = Poly.gen(QQ, var)
    factors = [(x - Poly.const(r, QQ, var), m) for r, m in roots]
    for q, mult in squarefree_decomposition(cofactor) if cofactor.degree > 0 else []:
        factors.extend((f, mult) for f in _factor_rational_rootfree(q))
    return unit, factors


def _factor_rational_rootfree(q: Poly):
    """Irreducible factors of a monic squarefree rational poly with no rational roots."""
    if q.degree == 1:
        return [q]
    if q.degree == 2:
        return [q]  # no rational roots means irreducible for quadratics
    return _factor_rational_sympy(q)


def _sympy():
    import sympy

    return sympy


def _factor_rational_sympy(q: Poly):
    sympy = _sympy()
    x = sympy.Symbol(q.var)
    expr = sympy.Add(
        *[sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(q.coeffs)]
    )
    _, factors = sympy.factor_list(expr, x)
    out = []
    for fac, mult in factors:
        sp = sympy.Poly(fac, x)
        coeffs = [Fraction(str(c)) for c in reversed(sp.all_coeffs())]
        f = Poly(coeffs, QQ, q.var).monic()
        out.extend([f] * mult)
    return out


# -- number fields (Trager) ----------------------------------------------


def norm_poly(g: Poly) -> Poly:
    """Res_y(m(y), g(x) with its coefficients written as polynomials in y)."""
    K = g.field
    base = K.base
    Fx = FractionField(base, g.var)
    m_y = Poly([Fx.coerce(Poly.const(c, base, g.var)) for c in K.minpoly.coeffs], Fx, "__y")
    cols = []
    for j in range(K.degree):
        cj = Poly([g.coeffs[i].coeffs[j] for i in range(len(g.coeffs))], base, g.var)
        cols.append(Fx.coerce(cj))
    while cols and not cols[-1]:
        cols.pop()
    G_y = Poly(cols, Fx, "__y")
    if not G_y:
        raise ValueError("cannot take the norm of zero")
    r = resultant(m_y, G_y)
    if not r.den.is_one():
        raise AssertionError("norm resultant is not polynomial")
    return r.num


def _factor_number_field(p: Poly):
    K = p.field
    unit = p.leading()
    p = p.monic()
    factors = []
    for q, mult in squarefree_decomposition(p):
        for f in _trager_squarefree(q):
            factors.append((f, mult))
    return unit, factors


def _trager_squarefree(f: Poly):
    if f.degree <= 1:
        return [f.monic()]
    K = f.field
    alpha = K.gen()
    for s in range(0, 8 * K.degree + 8):
        shift = K.coerce(-s) * alpha if s else K.zero
        g = f.shift(shift) if s else f
        N = norm_poly(g)
        if poly_gcd(N, N.derivative()).degree == 0:
            break
    else:
        raise AssertionError("no squarefree norm found")
    _, base_factors = factor_poly(N)
    out = []
    rem = g
    back = K.coerce(s) * alpha
    for Ni, _ in base_factors:
        if rem.degree <= 0:
            break
        lifted = Ni.map_coeffs(K.coerce, K)
        h = poly_gcd(rem, lifted)
        if h.degree > 0:
            out.append(h.shift(back).monic() if s else h.monic())
            rem = rem.exact_div(h)
    if rem.degree > 0:
        raise AssertionError("norm factorization did not exhaust the polynomial")
    return out


# -- parameter towers ------------------------------------------------------


def tower_vars(field):
    out = []
    while isinstance(field, FractionField):
        out.append(field.var)
        field = field.base
    if not isinstance(field, RationalField):
        raise TypeError("parameter factorization expects a tower over Q")
    return list(reversed(out))


def elem_to_sympy(x, syms, sympy):
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    if isinstance(x, int):
        return sympy.Integer(x)
    if isinstance(x, RatFun):
        num = poly_to_sympy(x.num, syms, sympy)
        den = poly_to_sympy(x.den, syms, sympy)
        return num / den
    raise TypeError(f"cannot convert {x!r} to sympy")


def poly_to_sympy(p: Poly, syms, sympy):
    v = syms[p.var]
    return sympy.Add(*[elem_to_sympy(c, syms, sympy) * v**i for i, c in enumerate(p.coeffs)])


def sympy_to_elem(expr, field, syms, sympy):
    if isinstance(field, RationalField):
        q = sympy.Rational(expr)
        return Fraction(int(q.p), int(q.q))
    if isinstance(field, FractionField):
        num, den = sympy.fraction(sympy.together(expr))
        return RatFun(
            sympy_to_poly(num, field.base, field.var, syms, sympy),
            sympy_to_poly(den, field.base, field.var, syms, sympy),
        )
    raise TypeError(f"cannot convert sympy expression into {field!r}")


def sympy_to_poly(expr, base, var, syms, sympy):
    sp = sympy.Poly(sympy.expand(expr), syms[var])
    coeffs = [sympy_to_elem(c, base, syms, sympy) for c in reversed(sp.all_coeffs())]
    return Poly(coeffs, base, var)


def _tower_constant(x):
    """Fraction value of a tower element that is constant, else None."""
    while isinstance(x, RatFun):
        if not x.is_constant():
            return None
        x = x.constant_value()
    return x if isinstance(x, Fraction) else Fraction(x)


def _factor_parameter(p: Poly):
    field = p.field
    unit = p.leading()
    p = p.monic()
    consts = [_tower_constant(c) for c in p.coeffs]
    if all(c is not None for c in consts):
        qp = Poly(consts, QQ, p.var)
        u, facs = _factor_rational(qp)
        lift = [(f.map_coeffs(field.coerce, field), m) for f, m in facs]
        return unit * field.coerce(u), lift
    if p.degree == 1:
        return unit, [(p, 1)]
    sympy = _sympy()
    names = tower_vars(field)
    syms = {p.var: sympy.Symbol(p.var)}
    for nm in names:
        syms[nm] = sympy.Symbol(nm)
    expr = poly_to_sympy(p, syms, sympy)
    num, _den = sympy.fraction(sympy.together(expr))
    _, sfactors = sympy.factor_list(sympy.expand(num))
    factors = []
    for fac, mult in sfactors:
        sp = sympy.Poly(fac, syms[p.var])
        if sp.degree() == 0:
            continue
        coeffs = [sympy_to_elem(c, field, syms, sympy) for c in reversed(sp.all_coeffs())]
        factors.append((Poly(coeffs, field, p.var).monic(), mult))
    return unit, factors


# -- integer roots and resonances -----------------------------------------


def _candidate_sample(field, avoid):
    """A specialization of a parameter tower onto Q avoiding denominators."""
    from itertools import count

    names = tower_vars(field)
    for k in count(1):
        assignment = {nm: Fraction(k + 1 + i * 3) for i, nm in enumerate(names)}
        try:
            vals = [specialize_tower_elem(c, assignment, field) for c in avoid]
        except ZeroDivisionError:
            continue
        if all(vals):
            return assignment
        if k > 64:
            raise AssertionError("no admissible sample assignment found")


def specialize_tower_elem(x, assignment, field):
    if isinstance(field, RationalField):
        return Fraction(x)
    base = field.base
    val = assignment[field.var]
    num = _eval_tower_poly(x.num, val, assignment, base)
    den = _eval_tower_poly(x.den, val, assignment, base)
    if not den:
        raise ZeroDivisionError(f"denominator {x.den} vanishes")
    return num / den


def _eval_tower_poly(p: Poly, val, assignment, base):
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * val + specialize_tower_elem(c, assignment, base)
    return acc


def integer_roots(p: Poly):
    """All integer roots with multiplicity and the deflated cofactor."""
    field = p.field
    if isinstance(field, RationalField):
        roots, cof = rational_roots(p)
        int_roots = [(int(r), m) for r, m in roots if r.denominator == 1]
        x = Poly.gen(QQ, p.var)
        for r, m in roots:
            if r.denominator != 1:
                cof = cof * (x - Poly.const(r, QQ, p.var)) ** m
        return int_roots, cof
    if isinstance(field, NumberField):
        N = norm_poly(p.monic())
        cands = sorted({int(r) for r, _ in rational_roots(N)[0] if r.denominator == 1})
    elif isinstance(field, FractionField):
        assignment = _candidate_sample(field, [c for c in p.coeffs if c])
        sample = Poly(
            [specialize_tower_elem(c, assignment, field) for c in p.coeffs], QQ, p.var
        )
        cands = sorted({int(r) for r, _ in rational_roots(sample)[0] if r.denominator == 1})
    else:
        raise TypeError(f"no integer root extraction over {field!r}")
    out = []
    x = Poly.gen(field, p.var)
    for r in cands:
        lin = x - Poly.const(field.coerce(r), field, p.var)
        mult = 0
        while p.degree >= 1 and not p.eval(field.coerce(r)):
            p = p.exact_div(lin)
            mult += 1
        if mult:
            out.append((r, mult))
    return out, p


def _root_magnitude_bound(chi: Poly) -> int:
    """Cauchy bound on |roots| for a monic polynomial, over any tower field."""
    field = chi.field
    if isinstance(field, RationalField):
        coeffs = chi.monic().coeffs
        mx = max((abs(c) for c in coeffs[:-1]), default=Fraction(0))
        return math.ceil(1 + mx)
    if isinstance(field, NumberField):
        return _root_magnitude_bound(norm_poly(chi.monic()))
    if isinstance(field, FractionField):
        assignment = _candidate_sample(field, [c for c in chi.coeffs if c])
        sample = Poly(
            [specialize_tower_elem(c, assignment, field) for c in chi.coeffs], QQ, chi.var
        )
        return _root_magnitude_bound(sample)
    raise TypeError(f"no root bound over {field!r}")


def integer_resonances(chi: Poly):
    """Integer shifts m with gcd(chi(x), chi(x+m)) nonconstant, |m| bounded
    by twice the Cauchy root bound."""
    if chi.degree < 1:
        return set()
    chi = chi.monic()
    bound = 2 * _root_magnitude_bound(chi)
    out = set()
    for m in range(-bound, bound + 1):
        shifted = chi.shift(chi.field.coerce(m))
        if poly_gcd(chi, shifted).degree > 0:
            out.add(m)
    return out
