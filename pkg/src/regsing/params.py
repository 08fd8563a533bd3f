"""Parameter-dependent systems over Q(l1,...,lr)(z) and their specialization.

The generic fiber is analyzed over the parameter tower exactly like a
rational system.  Specialization evaluates parameters at rational points; a
bad locus of parameter polynomials is collected from every denominator that
the generic certificates rely on, so that any assignment avoiding its zero
set inherits regular singularity, the pole containment, and exact
certificate transport.  The set is a union of all collected denominators and
is not minimized.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .analysis import SingularityReport, classify_all
from .factor import specialize_tower_elem, tower_vars
from .fields import QQ, FractionField, RationalField
from .matrices import Matrix
from .poly import Poly
from .ratfun import RatFun
from .systems import INFINITY, LOCAL_VAR, Point, entry_field, localize


class InadmissibleSpecialization(ValueError):
    def __init__(self, message, offender=None):
        super().__init__(message)
        self.offender = offender


class GenericFiberError(ValueError):
    pass


@dataclass
class BadLocus:
    """Nonzero parameter polynomials whose non-vanishing keeps every
    generic certificate valid after specialization."""

    members: list = dc_field(default_factory=list)
    _seen: set = dc_field(default_factory=set)

    def add(self, elem):
        if _is_tower_constant(elem):
            return
        key = str(elem)
        if key in self._seen:
            return
        self._seen.add(key)
        self.members.append(elem)

    def labels(self):
        return sorted(str(m) for m in self.members)

    def admits(self, field, assignment) -> bool:
        try:
            return all(
                specialize_tower_elem(m, assignment, field) != 0 for m in self.members
            )
        except ZeroDivisionError:
            return False


def _is_tower_constant(x):
    while isinstance(x, RatFun):
        if not x.is_constant():
            return False
        x = x.constant_value()
    return True


# -- specialization ----------------------------------------------------------


def specialize_ratfun(f: RatFun, assignment, tower) -> RatFun:
    def ev(c):
        return specialize_tower_elem(c, assignment, tower)

    try:
        num = f.num.map_coeffs(ev, QQ)
        den = f.den.map_coeffs(ev, QQ)
    except ZeroDivisionError as e:
        raise InadmissibleSpecialization(str(e), offender=str(e)) from None
    if not den:
        raise InadmissibleSpecialization(
            f"denominator {f.den} vanishes identically under the assignment",
            offender=str(f.den),
        )
    return RatFun(num, den)


def specialize_matrix(M: Matrix, assignment) -> Matrix:
    """Entrywise evaluation of the parameters; exact.

    Raises InadmissibleSpecialization when a parameter denominator vanishes,
    reporting the offending polynomial.
    """
    tower = entry_field(M)
    if isinstance(tower, RationalField):
        return M
    ring = FractionField(QQ, M.ring.var)
    return M.map(lambda e: specialize_ratfun(e, assignment, tower), ring)


def check_assignment(M: Matrix, assignment):
    tower = entry_field(M)
    names = tower_vars(tower)
    missing = [n for n in names if n not in assignment]
    if missing:
        raise InadmissibleSpecialization(f"missing parameter values for {missing}")
    return {n: Fraction(assignment[n]) for n in names}


# -- bad locus collection -----------------------------------------------------


def _collect_elem_denominators(x, tower, locus: BadLocus, also_numerator=False):
    """Denominator data of a tower element, recursively at every level."""
    if isinstance(x, Fraction):
        return
    if isinstance(x, RatFun):
        if also_numerator:
            locus.add(tower.coerce(RatFun.from_poly(x.num)))
        locus.add(tower.coerce(RatFun.from_poly(x.den)))
        for c in list(x.num.coeffs) + list(x.den.coeffs):
            _collect_elem_denominators(c, tower, locus)


def _collect_ratfun(f: RatFun, tower, locus: BadLocus):
    """Coefficient denominators of a rational function in z or t."""
    for c in list(f.num.coeffs) + list(f.den.coeffs):
        _collect_elem_denominators(c, tower, locus, also_numerator=False)


def _collect_nonvanishing(elem, tower, locus: BadLocus):
    """Constrain a tower element to stay nonzero: numerators and denominators."""
    if isinstance(elem, Fraction):
        return
    _collect_elem_denominators(elem, tower, locus, also_numerator=True)


@dataclass
class GenericAnalysis:
    report: SingularityReport
    bad_locus: BadLocus
    # [(spec, point value or None for infinity, localized matrix, certificate)]
    local_data: list


def bad_locus_regsing(M: Matrix) -> GenericAnalysis:
    """Certificates for the generic fiber and the parameter locus to avoid.

    Requires the generic fiber to be regular singular; collects, per pole
    point, every denominator the certificate data relies on, the constant
    terms of the denominators of t*A' (simple-pole persistence), and the
    leading unit of det(F) (invertibility persistence).
    """
    tower = entry_field(M)
    if isinstance(tower, RationalField):
        raise GenericFiberError("system has no parameters")
    report = classify_all(M, want_certificates=True)
    if not report.is_regular_singular_system:
        raise GenericFiberError("generic fiber is not regular singular")
    locus = BadLocus()
    for row in M.rows:
        for e in row:
            _collect_ratfun(e, tower, locus)
    local_data = []
    t = RatFun.gen(tower, LOCAL_VAR)
    for entry in report.entries:
        spec = entry.spec
        cls = entry.classification
        if spec.kind == "algebraic":
            raise GenericFiberError(
                "algebraic generic pole locations are outside the supported corpus"
            )
        cert = cls.certificate
        if cert is None:
            continue
        if spec.kind == "infinity":
            value = None
            local = localize(M, INFINITY).matrix
        else:
            value = spec.value if not isinstance(spec.value, Fraction) else tower.coerce(spec.value)
            local = localize(M, Point.finite(value)).matrix
            if isinstance(value, RatFun):
                locus.add(RatFun.from_poly(value.den))
        for mat in (cert.F, cert.A_prime):
            for r in mat.rows:
                for e in r:
                    _collect_ratfun(e, tower, locus)
        # t*A' keeps denominators prime to t after specialization
        for r in cert.A_prime.rows:
            for e in r:
                d = (t * e).den
                _collect_nonvanishing(d.eval(tower.zero), tower, locus)
        det = cert.F.det()
        v = det.valuation_at_zero()
        unit = det / RatFun.gen(tower, LOCAL_VAR) ** int(v)
        _collect_nonvanishing(unit.eval_at_zero(), tower, locus)
        local_data.append((spec, value, local, cert))
    return GenericAnalysis(report=report, bad_locus=locus, local_data=local_data)


# -- sweeps ---------------------------------------------------------------------


@dataclass
class SweepFailure:
    assignment: dict
    reason: str


@dataclass
class SweepReport:
    samples: int
    seed: int
    passes: int
    failures: list
    bad_locus_labels: list
    generic_pole_labels: list

    @property
    def ok(self):
        return not self.failures


def _transport_certificate(local: Matrix, cert, assignment, tower):
    """Specialized gauge identity, checked exactly (cross-multiplied)."""
    from .systems import gauge_residual

    A_s = specialize_matrix(local, assignment)
    F_s = specialize_matrix(cert.F, assignment)
    Ap_s = specialize_matrix(cert.A_prime, assignment)
    if not F_s.det():
        return "specialized gauge matrix is singular"
    if not gauge_residual(A_s, F_s, Ap_s).is_zero():
        return "specialized gauge identity failed"
    t = RatFun.gen(QQ, LOCAL_VAR)
    for r in Ap_s.rows:
        for e in r:
            if (t * e).valuation_at_zero() < 0:
                return "specialized reduced matrix lost its simple pole"
    return None


def _pole_containment(spec_report: SingularityReport, generic: GenericAnalysis, assignment, tower):
    """Specialized poles must sit inside the specialized generic pole set."""
    allowed_values = []
    allowed_infinity = False
    for spec in generic.report.pole_specs:
        if spec.kind == "infinity":
            allowed_infinity = True
        elif spec.kind == "rational":
            v = spec.value
            if isinstance(v, RatFun) or not isinstance(v, Fraction):
                allowed_values.append(specialize_tower_elem(v, assignment, tower))
            else:
                allowed_values.append(v)
    for spec in spec_report.pole_specs:
        if spec.kind == "infinity":
            if not allowed_infinity:
                return f"specialized pole at infinity escaped the generic pole set"
        elif spec.kind == "rational":
            if spec.value not in allowed_values:
                return f"specialized pole {spec.label()} escaped the generic pole set"
        else:
            return f"unexpected algebraic specialized pole {spec.label()}"
    return None


def preservation_sweep(M: Matrix, samples: int, seed: int = 0) -> SweepReport:
    """Random admissible specializations, each checked for regular
    singularity, pole containment, and exact certificate transport."""
    tower = entry_field(M)
    generic = bad_locus_regsing(M)
    names = tower_vars(tower)
    rng = random.Random(seed)
    failures = []
    passes = 0
    done = 0
    attempts = 0
    while done < samples:
        attempts += 1
        if attempts > 200 * samples + 200:
            raise GenericFiberError("could not find enough admissible samples")
        assignment = {n: Fraction(rng.randint(-10, 10)) for n in names}
        if not generic.bad_locus.admits(tower, assignment):
            continue
        try:
            A_s = specialize_matrix(M, assignment)
        except InadmissibleSpecialization:
            continue
        done += 1
        label = {n: str(v) for n, v in assignment.items()}
        rep = classify_all(A_s)
        if not rep.is_regular_singular_system:
            failures.append(SweepFailure(label, "specialized system is not regular singular"))
            continue
        reason = _pole_containment(rep, generic, assignment, tower)
        if reason:
            failures.append(SweepFailure(label, reason))
            continue
        bad = None
        for _, _, local, cert in generic.local_data:
            bad = _transport_certificate(local, cert, assignment, tower)
            if bad:
                break
        if bad:
            failures.append(SweepFailure(label, bad))
            continue
        passes += 1
    return SweepReport(
        samples=samples,
        seed=seed,
        passes=passes,
        failures=failures,
        bad_locus_labels=generic.bad_locus.labels(),
        generic_pole_labels=[s.label() for s in generic.report.pole_specs],
    )
