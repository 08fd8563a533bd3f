"""Lattices over the local ring at t=0 and the rational simple-pole reduction.

The engine decides whether a local system d(y)/dt = A y can be gauged to a
matrix with at most a first-order pole.  It runs the saturation iteration
M_{i+1} = M_i + t*nabla(M_i) starting from the standard lattice, where
nabla(v) = v' - A v.  For a regular singular system the iteration stabilizes
inside a fixed bounding lattice; otherwise generator valuations sink without
bound and a conservative cutoff reports divergence.  A stabilized lattice
yields, through Nakayama basis selection, an invertible F over k(t) whose
gauge transform has simple-pole form.  Everything is exact; every stability
or identity claim returned here is re-verified, not assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fields import FractionField
from .matrices import Matrix
from .poly import Poly
from .ratfun import RatFun
from .systems import (
    LOCAL_VAR,
    gauge,
    gauge_residual,
    mat_derivative,
    matrix_valuation_at_zero,
    pole_order_at_zero,
)

# Hard iteration guard; the valuation cutoff fires long before this.
MAX_SATURATION_STEPS = 512


def _val(f: RatFun):
    return f.valuation_at_zero()


def vector_valuation(v):
    return min((_val(e) for e in v), default=math.inf)


def nabla_apply(A: Matrix, v):
    """nabla(v) = v' - A v, exact."""
    Av = A.matvec(v)
    return tuple(e.derivative() - a for e, a in zip(v, Av))


def t_nabla_apply(A: Matrix, v):
    t = RatFun.gen(A.ring.base, LOCAL_VAR)
    return tuple(t * e for e in nabla_apply(A, v))


class _Echelon:
    """Deterministic column echelon basis of a lattice over k[t]_(t).

    Pivots are chosen row by row with minimal t-valuation (ties to the
    earliest column); pivot entries are normalized to exact powers of t by
    unit column scalings, which leave the spanned module unchanged.
    """

    __slots__ = ("n", "pivots", "ring")

    def __init__(self, columns, ring, n):
        self.n = n
        self.ring = ring
        cols = [list(c) for c in columns if any(c)]
        pivots = []  # (row, val, column) in increasing row order
        for row in range(n):
            best = None
            for idx, c in enumerate(cols):
                v = _val(c[row])
                if v is not math.inf and (best is None or v < cols_val):
                    best, cols_val = idx, v
            if best is None:
                continue
            piv = cols.pop(best)
            pv = _val(piv[row])
            # normalize the pivot entry to t^pv
            t_pow = RatFun.gen(ring.base, LOCAL_VAR) ** pv
            unit = piv[row] / t_pow
            piv = [e / unit for e in piv]
            for c in cols:
                if c[row]:
                    q = c[row] / piv[row]
                    for i in range(n):
                        if piv[i]:
                            c[i] = c[i] - q * piv[i]
            pivots.append((row, pv, tuple(piv)))
            cols = [c for c in cols if any(c)]
        self.pivots = pivots

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, v):
        """(remainder, min coefficient valuation) of v against the basis."""
        v = list(v)
        worst = math.inf
        for row, pv, col in self.pivots:
            e = v[row]
            if not e:
                continue
            q = e / col[row]
            worst = min(worst, _val(q))
            for i in range(self.n):
                if col[i]:
                    v[i] = v[i] - q * col[i]
        return tuple(v), worst

    def contains(self, v):
        rem, worst = self.reduce(v)
        return not any(rem) and worst >= 0

    def columns(self):
        return [col for _, _, col in self.pivots]

    def basis_matrix(self):
        return Matrix.from_columns(self.columns(), self.ring)

    def min_valuation(self):
        return min(
            (vector_valuation(col) for _, _, col in self.pivots), default=math.inf
        )


class Lattice:
    """Full-rank k[t]_(t)-module given by column generators over k(t)."""

    def __init__(self, generators: Matrix, normalized_basis: Matrix | None = None):
        self.generators = generators
        self.n = generators.nrows
        self.ring = generators.ring
        self._echelon = None
        self.normalized_basis = normalized_basis
        if self.echelon.rank != self.n:
            raise ValueError("generators do not span a full-rank lattice")

    @classmethod
    def standard(cls, n, ring):
        return cls(Matrix.identity(n, ring))

    @property
    def echelon(self) -> _Echelon:
        if self._echelon is None:
            self._echelon = _Echelon(self.generators.columns(), self.ring, self.n)
        return self._echelon

    def contains(self, v) -> bool:
        return self.echelon.contains(v)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(c) for c in other.generators.columns())

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.contains_lattice(other) and other.contains_lattice(self)

    def __hash__(self):
        raise TypeError("lattices are unhashable")

    def basis_columns(self):
        return self.echelon.columns()

    def __repr__(self):
        return f"Lattice({self.generators})"


def scale_lattice(L: Lattice, h: RatFun) -> Lattice:
    """The lattice h*L; h must be nonzero (units leave the span unchanged)."""
    if isinstance(h, (int,)):
        h = RatFun.const(h, L.ring.base, LOCAL_VAR)
    if not h:
        raise ValueError("cannot scale a lattice by zero")
    gens = L.generators.map(lambda e: h * e)
    basis = L.normalized_basis.map(lambda e: h * e) if L.normalized_basis else None
    return Lattice(gens, basis)


def clearing_power(vectors, L: Lattice) -> int:
    """Minimal m >= 0 with t^m * v in L for every v; the paper's h = t^m."""
    t = RatFun.gen(L.ring.base, LOCAL_VAR)
    worst = 0
    for v in vectors:
        if not any(v):
            raise ValueError("clearing power of the zero vector is undefined")
        m = 0
        w = tuple(v)
        while m < 1024:
            if L.contains(w):
                break
            w = tuple(t * e for e in w)
            m += 1
        else:
            raise AssertionError("clearing power exceeded guard bound")
        worst = max(worst, m)
    return worst


@dataclass
class SaturationOutcome:
    stable: bool
    lattice: Lattice | None
    steps: int
    min_valuation: int | float
    cutoff: int
    # on divergence, magnitude of the valuation drop that fired the cutoff
    valuation_drop: int | None = None

    def __bool__(self):
        return self.stable


def saturate(A: Matrix, initial: Lattice | None = None) -> SaturationOutcome:
    """Iterate M_{i+1} = M_i + t*nabla(M_i) from the standard lattice.

    Stable(L, s): t*nabla maps L into itself, first reached at step s.
    Diverged: the minimal generator valuation fell below -(n*(q+1) + v0),
    where q is the pole order of t*A at the origin and v0 the clearing
    power of the starting generators; regular singular systems stay inside
    a fixed bounding lattice, so their valuations cannot sink that far.
    """
    n = A.n
    ring = A.ring
    t = RatFun.gen(ring.base, LOCAL_VAR)
    tA = A.map(lambda e: t * e)
    q = pole_order_at_zero(tA)
    L = initial if initial is not None else Lattice.standard(n, ring)
    v0 = max(0, -int(min(matrix_valuation_at_zero(L.generators), 0)))
    cutoff = -(n * (q + 1) + v0)
    steps = 0
    while steps < MAX_SATURATION_STEPS:
        basis = L.basis_columns()
        images = [t_nabla_apply(A, b) for b in basis]
        new = [w for w in images if not L.contains(w)]
        if not new:
            return SaturationOutcome(True, L, steps, L.echelon.min_valuation(), cutoff)
        cols = basis + new
        L = Lattice(Matrix.from_columns(cols, ring))
        steps += 1
        mv = L.echelon.min_valuation()
        if mv < cutoff:
            return SaturationOutcome(
                False, None, steps, mv, cutoff, valuation_drop=-int(mv)
            )
    raise AssertionError("saturation exceeded the hard step guard")


def nakayama_basis(L: Lattice) -> Lattice:
    """Select n generators whose images form a basis of L/tL.

    Generators are scanned by (t-valuation, column index); a candidate is
    kept when its coordinate vector mod t is independent of those already
    chosen.  The result carries the selection as normalized_basis.
    """
    n = L.n
    ech = L.echelon
    field = L.ring.base
    gens = L.generators.columns()
    order = sorted(range(len(gens)), key=lambda j: (vector_valuation(gens[j]), j))
    chosen = []
    resid_rows = []
    for j in order:
        coords = _coordinates(ech, gens[j])
        if coords is None:
            raise ValueError("generator outside its own lattice span")
        resid = [c.eval_at_zero() if _val(c) == 0 else field.zero for c in coords]
        if not any(resid):
            continue
        trial = resid_rows + [resid]
        M = Matrix(trial, field)
        if M.rank() == len(trial):
            resid_rows.append(resid)
            chosen.append(j)
        if len(chosen) == n:
            break
    if len(chosen) != n:
        raise ValueError("generators do not span the lattice modulo t")
    basis = Matrix.from_columns([gens[j] for j in chosen], L.ring)
    return Lattice(L.generators, normalized_basis=basis)


def _coordinates(ech: _Echelon, v):
    """Coefficients of v in the echelon basis, or None if not a member."""
    v = list(v)
    coords = [None] * len(ech.pivots)
    for k, (row, pv, col) in enumerate(ech.pivots):
        e = v[row]
        q = e / col[row] if e else None
        if q is not None and _val(q) < 0:
            return None
        coords[k] = q if q is not None else ech.ring.base.coerce(0) * RatFun.one(
            ech.ring.base, LOCAL_VAR
        )
        if q is not None:
            for i in range(ech.n):
                if col[i]:
                    v[i] = v[i] - q * col[i]
    if any(v):
        return None
    return coords


@dataclass
class GaugeCertificate:
    """(F, A') with A' = F A F^-1 + F' F^-1 holding exactly."""

    F: Matrix
    A_prime: Matrix

    def verify(self, A: Matrix) -> bool:
        return gauge_residual(A, self.F, self.A_prime).is_zero()

    def simple_pole(self) -> bool:
        return matrix_valuation_at_zero(self.A_prime) >= -1

    def pole_free(self) -> bool:
        return matrix_valuation_at_zero(self.A_prime) >= 0


@dataclass
class NotRegularSingular:
    """Divergence evidence from the saturation iteration."""

    outcome: SaturationOutcome

    def __bool__(self):
        return False


def identity_certificate(A: Matrix) -> GaugeCertificate:
    return GaugeCertificate(Matrix.identity(A.n, A.ring), A)


def compose_certificates(first: GaugeCertificate, second: GaugeCertificate) -> GaugeCertificate:
    """Certificate for applying `second` after `first`."""
    return GaugeCertificate(second.F * first.F, second.A_prime)


def _normalize_det(F: Matrix) -> Matrix:
    """Scale the first row so det(F) = t^m * u with u(0) = 1."""
    det = F.det()
    v = _val(det)
    t_pow = RatFun.gen(F.ring.base, LOCAL_VAR) ** int(v)
    u = det / t_pow
    c = u.eval_at_zero()
    if c == F.ring.base.one:
        return F
    cinv = F.ring.base.one / c
    rows = [list(r) for r in F.rows]
    rows[0] = [e * cinv for e in rows[0]]
    return Matrix(rows, F.ring)


def reduce_to_simple_pole(A: Matrix):
    """Rational gauge to simple-pole form, or divergence evidence.

    On success the returned F is assembled from the Nakayama basis of the
    saturated lattice: with E the basis matrix, F = E^-1 and A' the gauge
    transform of A, so that t*A' has denominators prime to t.  Stability of
    the lattice and the gauge identity are verified before returning.
    """
    out = saturate(A)
    if not out.stable:
        return NotRegularSingular(out)
    L = nakayama_basis(out.lattice)
    E = L.normalized_basis
    F = _normalize_det(E.inverse())
    A_prime = gauge(A, F)
    cert = GaugeCertificate(F, A_prime)
    if not cert.verify(A):
        raise AssertionError("gauge identity failed on a certificate")
    if not cert.simple_pole():
        raise AssertionError("saturated lattice did not yield a simple pole")
    for b in L.basis_columns():
        if not L.contains(t_nabla_apply(A, b)):
            raise AssertionError("stability verification failed")
    return cert
