"""JSON report documents with canonical exact-value serialization.

All exact values appear as canonical strings (rationals like "-3/2",
rational functions with monic sorted-factor denominators); floats occur only
in monodromy sections.  Field ordering is fixed by construction so reports
are byte-identical across runs, except for the timing field, which consumers
must ignore when comparing.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import __version__
from .analysis import SingularityReport
from .fields import NumberField, QQ, RationalField
from .local import INDETERMINATE, IRREGULAR, REGULAR, REGULAR_SINGULAR
from .matrices import Matrix
from .parsing import ratfun_str
from .poly import Poly, format_poly
from .ratfun import RatFun

SCHEMA_VERSION = "1.0"


def elem_str(x) -> str:
    """Canonical string of a field element; rational values of an extension
    print as plain rationals so unused generators leave no trace."""
    from .fields import NFElem

    if isinstance(x, NFElem) and x.is_rational():
        return str(x.rational_value())
    return str(x)


def _ratfun_canonical(e: RatFun) -> str:
    field = e.field
    if isinstance(field, NumberField) and field.base == QQ:
        if all(c.is_rational() for p in (e.num, e.den) for c in p.coeffs):
            num = e.num.map_coeffs(lambda c: c.rational_value(), QQ)
            den = e.den.map_coeffs(lambda c: c.rational_value(), QQ)
            return ratfun_str(RatFun(num, den, reduce=False))
    return ratfun_str(e)


def matrix_strings(A: Matrix):
    return [[_ratfun_canonical(e) for e in row] for row in A.rows]


def constant_matrix_strings(A: Matrix):
    return [[elem_str(e) for e in row] for row in A.rows]


def poly_str_canonical(p: Poly) -> str:
    from .fields import NFElem

    if p.coeffs and isinstance(p.coeffs[0], NFElem):
        if all(c.is_rational() for c in p.coeffs):
            return format_poly(p.map_coeffs(lambda c: c.rational_value(), QQ))
    return format_poly(p)


def certificate_dict(cert, chart) -> dict:
    return {
        "variable": "t",
        "chart": chart.describe(),
        "F": matrix_strings(cert.F),
        "A_prime": matrix_strings(cert.A_prime),
    }


def _exponent_strings(cls):
    out = []
    for r, m in cls.exponents:
        out.extend([elem_str(r)] * m)
    return out


def _factor_dicts(cls):
    return [
        {"factor": poly_str_canonical(f), "multiplicity": m}
        for f, m in cls.exponent_factors
    ]


def point_entry_dict(entry, want_certificates: bool) -> dict:
    spec = entry.spec
    cls = entry.classification
    d = {
        "point": spec.label(),
        "kind": spec.kind,
        "class": cls.kind,
    }
    if cls.kind == REGULAR_SINGULAR:
        d["exponents"] = _exponent_strings(cls)
        if cls.exponent_factors:
            d["exponent_factors"] = _factor_dicts(cls)
    if cls.kind == IRREGULAR and cls.evidence is not None:
        ev = cls.evidence
        d["evidence"] = {
            "saturation_steps": ev.steps,
            "min_valuation": int(ev.min_valuation),
            "cutoff": ev.cutoff,
        }
    if want_certificates and cls.kind in (REGULAR, REGULAR_SINGULAR):
        cert = cls.regular_certificate if cls.kind == REGULAR else cls.certificate
        if cert is not None and cls.system is not None:
            d["certificate"] = certificate_dict(cert, cls.system.chart)
    if cls.notes:
        d["notes"] = list(cls.notes)
    return d


def classification_report(
    report: SingularityReport,
    input_text: str,
    want_certificates: bool = False,
    timing_ms: float | None = None,
) -> dict:
    # no extension echo: reports are identical whether or not an unused
    # generator was declared, so golden comparisons stay byte-stable
    doc = {
        "schema_version": SCHEMA_VERSION,
        "generator": {"name": "regsing", "version": __version__},
        "input": input_text,
        "dimension": report.dimension,
        "points": [point_entry_dict(e, want_certificates) for e in report.entries],
        "pole_points": [s.label() for s in report.pole_specs],
        "singular_points": [s.label() for s in report.singular_specs],
        "is_regular_singular_system": report.is_regular_singular_system,
        "has_indeterminate": report.has_indeterminate,
    }
    if timing_ms is not None:
        doc["timing_ms"] = round(timing_ms, 3)
    return doc


def reduce_report(
    point_label: str,
    cls,
    input_text: str,
    timing_ms: float | None = None,
) -> dict:
    cert = cls.regular_certificate if cls.kind == REGULAR else cls.certificate
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "reduce",
        "input": input_text,
        "point": point_label,
        "class": cls.kind,
    }
    if cls.system is not None:
        doc["chart"] = cls.system.chart.describe()
    if cert is not None:
        doc["certificate"] = certificate_dict(cert, cls.system.chart)
    if cls.kind == IRREGULAR and cls.evidence is not None:
        doc["evidence"] = {
            "saturation_steps": cls.evidence.steps,
            "min_valuation": int(cls.evidence.min_valuation),
            "cutoff": cls.evidence.cutoff,
        }
    if timing_ms is not None:
        doc["timing_ms"] = round(timing_ms, 3)
    return doc


def exponents_report(point_label: str, cls, input_text: str) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "exponents",
        "input": input_text,
        "point": point_label,
        "class": cls.kind,
    }
    if cls.residue is not None:
        doc["residue"] = constant_matrix_strings(cls.residue.residue)
        doc["char_poly"] = poly_str_canonical(cls.residue.char_poly)
        doc["exponents"] = _exponent_strings(cls)
        doc["exponent_factors"] = _factor_dicts(cls)
    return doc


def sweep_report_dict(rep, input_text: str, timing_ms: float | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "sweep",
        "input": input_text,
        "samples": rep.samples,
        "seed": rep.seed,
        "passes": rep.passes,
        "failures": [
            {"assignment": f.assignment, "reason": f.reason} for f in rep.failures
        ],
        "ok": rep.ok,
        "bad_locus": rep.bad_locus_labels,
        "generic_pole_points": rep.generic_pole_labels,
    }
    if timing_ms is not None:
        doc["timing_ms"] = round(timing_ms, 3)
    return doc


def complex_matrix_strings(M):
    return [
        [[f"{v.real:.12e}", f"{v.imag:.12e}"] for v in row] for row in M.tolist()
    ]


def monodromy_report(entries, input_text: str, tol: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "monodromy",
        "input": input_text,
        "tolerance": tol,
        "loops": entries,
    }


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def strip_timing(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if k != "timing_ms"}
