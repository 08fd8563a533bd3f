"""Numerical transfer matrices and local monodromy at desk scale.

Integration solves Y' = A(z) Y along polyline paths with a fixed-order
Taylor method: the exact rational entries are Taylor-shifted to the current
point in complex double precision, the solution coefficients follow from the
series recurrence, and the step size is chosen so the local truncation stays
below the requested tolerance per unit arclength.  Circles are traversed as
inscribed polygons, which are homotopic to the circle inside the pole-free
annulus and therefore give the same monodromy.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .analysis import pole_specs
from .matrices import Matrix
from .systems import entry_field, localize, INFINITY

TAYLOR_ORDER = 20
CIRCLE_SEGMENTS = 16
MIN_STEP = 1e-13


class PathError(ValueError):
    pass


class StepUnderflow(ArithmeticError):
    pass


# -- numeric views of exact data ----------------------------------------------


def _poly_to_array(p) -> np.ndarray:
    if not p.coeffs:
        return np.zeros(1, dtype=complex)
    return np.array([complex(c) for c in p.coeffs], dtype=complex)


def entry_arrays(A: Matrix):
    """Ascending numerator/denominator coefficient arrays per entry."""
    out = []
    for row in A.rows:
        out.append([(_poly_to_array(e.num), _poly_to_array(e.den)) for e in row])
    return out


def numeric_poles(A: Matrix) -> np.ndarray:
    """All denominator roots of the entries, as complex numbers."""
    roots = []
    for row in A.rows:
        for e in row:
            if e.den.degree >= 1:
                roots.extend(np.roots(_poly_to_array(e.den.monic())[::-1]))
    if not roots:
        return np.zeros(0, dtype=complex)
    return np.array(roots, dtype=complex)


def _taylor_shift(coeffs: np.ndarray, z0: complex) -> np.ndarray:
    out = coeffs.astype(complex).copy()
    n = len(out)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] += z0 * out[j + 1]
    return out


def _series_inverse(d: np.ndarray, order: int) -> np.ndarray:
    inv = np.zeros(order + 1, dtype=complex)
    inv[0] = 1.0 / d[0]
    for k in range(1, order + 1):
        acc = 0.0j
        for j in range(1, min(k, len(d) - 1) + 1):
            acc += d[j] * inv[k - j]
        inv[k] = -acc * inv[0]
    return inv


def _series_mul(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    out = np.zeros(order + 1, dtype=complex)
    for i in range(min(len(a), order + 1)):
        if a[i] == 0:
            continue
        top = min(len(b), order + 1 - i)
        out[i : i + top] += a[i] * b[:top]
    return out


def local_series(arrays, z0: complex, order: int) -> np.ndarray:
    """n x n x (order+1) Taylor coefficients of A at z0."""
    n = len(arrays)
    out = np.zeros((n, n, order + 1), dtype=complex)
    for i in range(n):
        for j in range(n):
            num, den = arrays[i][j]
            ns = _taylor_shift(num, z0)
            ds = _taylor_shift(den, z0)
            if abs(ds[0]) < 1e-300:
                raise PathError(f"path touches a pole near {z0}")
            inv = _series_inverse(ds, order)
            full = _series_mul(ns, inv, order)
            out[i, j, :] = full
    return out


# -- path geometry --------------------------------------------------------------


def segment_point_distance(a: complex, b: complex, p: complex) -> float:
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(p - a)
    t = ((p - a) * ab.conjugate()).real / denom
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * ab))


def path_clearance(nodes, poles) -> float:
    if len(poles) == 0:
        return math.inf
    best = math.inf
    for a, b in zip(nodes[:-1], nodes[1:]):
        for p in poles:
            best = min(best, segment_point_distance(a, b, complex(p)))
    return best


def circle_polygon(center: complex, radius: float, segments: int = CIRCLE_SEGMENTS):
    """Closed inscribed polygon of the positively oriented circle."""
    return [
        center + radius * cmath.exp(2j * cmath.pi * k / segments)
        for k in range(segments + 1)
    ]


def reverse_path(nodes):
    return list(reversed(nodes))


def compose_paths(first_nodes, then_nodes):
    """Concatenation: traverse first_nodes, then then_nodes."""
    if abs(first_nodes[-1] - then_nodes[0]) > 1e-12:
        raise PathError("paths do not connect")
    return list(first_nodes) + list(then_nodes[1:])


# -- transfer along a path --------------------------------------------------------


@dataclass
class ComplexMatrixPath:
    system: Matrix
    nodes: list
    result: np.ndarray
    error_estimate: float
    clearance: float
    steps: int = 0


def _step_coefficients(B: np.ndarray, order: int):
    """C_0..C_order for Y' = B(s) Y with Y(0) = I, B given as series."""
    n = B.shape[0]
    C = [np.eye(n, dtype=complex)]
    for k in range(order):
        acc = np.zeros((n, n), dtype=complex)
        for i in range(k + 1):
            acc += B[:, :, i] @ C[k - i]
        C.append(acc / (k + 1))
    return C


def transfer(A: Matrix, nodes, tol: float = 1e-10, clearance: float = 0.0) -> ComplexMatrixPath:
    """Transfer matrix Y(end) Y(start)^-1 along a polyline, adaptively."""
    if len(nodes) < 2:
        raise PathError("path needs at least two nodes")
    arrays = entry_arrays(A)
    poles = numeric_poles(A)
    clear = path_clearance(nodes, poles)
    if clear <= clearance:
        raise PathError(f"path clearance {clear:.3g} below the configured {clearance:.3g}")
    n = A.n
    Y = np.eye(n, dtype=complex)
    err = 0.0
    order = TAYLOR_ORDER
    steps = 0
    for za, zb in zip(nodes[:-1], nodes[1:]):
        length = abs(zb - za)
        if length == 0.0:
            continue
        e = (zb - za) / length
        s = 0.0
        while s < length - 1e-15:
            z0 = za + s * e
            base = local_series(arrays, z0, order)
            # direction chain rule: B_i = e^(i+1) A_i
            B = base.copy()
            fac = e
            for i in range(order + 1):
                B[:, :, i] *= fac
                fac *= e
            C = _step_coefficients(B, order)
            bK = np.linalg.norm(C[order], ord=2)
            hmax = length - s
            if len(poles):
                dist = float(np.min(np.abs(poles - z0)))
                hmax = min(hmax, 0.35 * dist)
            if bK > 0.0:
                h = min(hmax, (tol / bK) ** (1.0 / (order - 1)))
            else:
                h = hmax
            if h < MIN_STEP:
                raise StepUnderflow(f"step size collapsed near {z0}")
            T = np.zeros((n, n), dtype=complex)
            hp = 1.0
            for k in range(order + 1):
                T += C[k] * hp
                hp *= h
            tail = np.linalg.norm(C[order], 2) * (h**order)
            prev = np.linalg.norm(C[order - 1], 2) * (h ** (order - 1))
            ratio = tail / prev if prev > 0 else 0.0
            err += tail / (1.0 - ratio) if ratio < 0.9 else 10 * tail
            Y = T @ Y
            s += h
            steps += 1
    return ComplexMatrixPath(
        system=A, nodes=list(nodes), result=Y, error_estimate=err, clearance=clear, steps=steps
    )


# -- loops and local monodromy ------------------------------------------------------


def rational_finite_poles(A: Matrix):
    specs, _ = pole_specs(A)
    out = []
    for s in specs:
        if s.kind == "rational":
            if not isinstance(s.value, Fraction):
                raise PathError("numeric loops support rational-coordinate poles only")
            out.append(s.value)
        elif s.kind == "algebraic":
            raise PathError("numeric loops support rational-coordinate poles only")
    return sorted(out)


def default_basepoint(A: Matrix) -> Fraction:
    poles = rational_finite_poles(A)
    if not poles:
        return Fraction(1)
    return max(poles) + 1


def loop_radius(p: Fraction, poles) -> float:
    others = [q for q in poles if q != p]
    if not others:
        return 1.0
    return float(min(abs(q - p) for q in others)) / 2.0


def loop_nodes(p: Fraction, radius: float, basepoint: Fraction):
    """Circle-plus-spoke loop: rails through the upper half plane down to the
    circle entry point, the inscribed polygon, and the way back."""
    b = complex(Fraction(basepoint))
    entry = complex(p) + radius
    height = radius * 1.0j
    out_rail = [b, b + height, entry + height, entry]
    circle = circle_polygon(complex(p), radius)
    back_rail = [entry, entry + height, b + height, b]
    nodes = compose_paths(out_rail, circle)
    nodes = compose_paths(nodes, back_rail)
    return nodes


def local_monodromy(
    A: Matrix,
    p,
    basepoint=None,
    tol: float = 1e-10,
    radius: float | None = None,
) -> ComplexMatrixPath:
    """Transfer around the positively oriented loop at a finite rational pole,
    conjugated to the basepoint by the connecting spoke."""
    p = Fraction(p)
    poles = rational_finite_poles(A)
    if p not in poles:
        raise PathError(f"{p} is not a rational pole of the system")
    if basepoint is None:
        basepoint = default_basepoint(A)
    if radius is None:
        radius = loop_radius(p, poles)
    nodes = loop_nodes(p, radius, basepoint)
    return transfer(A, nodes, tol=tol)


def monodromy_generators(A: Matrix, tol: float = 1e-10):
    """Local monodromies at every finite rational pole, shared basepoint,
    ordered left to right; [(pole, ComplexMatrixPath)]."""
    poles = rational_finite_poles(A)
    b = default_basepoint(A)
    return [(p, local_monodromy(A, p, basepoint=b, tol=tol)) for p in poles]


def total_monodromy_product(gens):
    """Product of the generators as the composite loop around all poles:
    rightmost traversed first."""
    out = None
    for _, path in gens:  # left-to-right pole order; compose right-to-left
        out = path.result if out is None else out @ path.result
    return out


# -- oracles and consistency -----------------------------------------------------


def abel_determinant_check(A: Matrix, nodes, tol: float = 1e-12):
    """det(transfer) against exp of the independently integrated trace."""
    tpath = transfer(A, nodes, tol=tol)
    arrays = entry_arrays(A)
    poles = numeric_poles(A)
    order = TAYLOR_ORDER + 4
    total = 0.0j
    for za, zb in zip(nodes[:-1], nodes[1:]):
        length = abs(zb - za)
        if length == 0.0:
            continue
        e = (zb - za) / length
        s = 0.0
        while s < length - 1e-15:
            z0 = za + s * e
            dist = float(np.min(np.abs(poles - z0))) if len(poles) else math.inf
            h = min(length - s, 0.25 * dist) if dist < math.inf else length - s
            series = local_series(arrays, z0, order)
            tr = np.array([np.trace(series[:, :, k]) for k in range(order + 1)])
            # antiderivative of trace(A(z0 + s e)) * e with respect to arclength
            hp = h
            for k in range(order + 1):
                total += tr[k] * (e ** (k + 1)) * hp / (k + 1)
                hp *= h
            s += h
    det = np.linalg.det(tpath.result)
    return det, cmath.exp(total), abs(det - cmath.exp(total))


@dataclass
class ExponentReport:
    skipped: bool
    reason: str = ""
    matched: bool = False
    max_error: float = math.inf
    pairs: list = dc_field(default_factory=list)


def _permutations(items):
    if len(items) <= 1:
        yield list(items)
        return
    for i in range(len(items)):
        rest = items[:i] + items[i + 1 :]
        for tail in _permutations(rest):
            yield [items[i]] + tail


def exponent_consistency(A: Matrix, p, tol: float = 1e-6, integration_tol: float = 1e-10) -> ExponentReport:
    """Eigenvalues of the numeric local monodromy against e^(2 pi i rho) for
    the exact exponents rho; skipped when exponents are resonant (the
    prediction then only holds for eigenvalues with lower multiplicity) or
    not rational."""
    from .local import classify_local
    from .systems import Point

    p = Fraction(p)
    cls = classify_local(localize(A, Point.finite(entry_field(A).coerce(p))))
    if cls.kind == "irregular":
        return ExponentReport(True, reason="point is irregular")
    if cls.exponent_factors:
        return ExponentReport(True, reason="exponents are not rational")
    exps = []
    for r, m in cls.exponents:
        if not isinstance(r, Fraction):
            return ExponentReport(True, reason="exponents are not rational")
        exps.extend([r] * m)
    for i in range(len(exps)):
        for j in range(i + 1, len(exps)):
            d = exps[i] - exps[j]
            if d != 0 and d.denominator == 1:
                return ExponentReport(True, reason="resonant exponents")
    mono = local_monodromy(A, p, tol=integration_tol)
    eigs = list(np.linalg.eigvals(mono.result))
    preds = [cmath.exp(2j * cmath.pi * complex(r)) for r in exps]
    best = math.inf
    best_pairs = []
    for perm in _permutations(list(range(len(eigs)))):
        mx = max(abs(eigs[perm[i]] - preds[i]) for i in range(len(preds)))
        if mx < best:
            best = mx
            best_pairs = [(preds[i], eigs[perm[i]]) for i in range(len(preds))]
    return ExponentReport(False, matched=best <= tol, max_error=best, pairs=best_pairs)
