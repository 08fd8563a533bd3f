"""Command line interface.

Exit codes: 0 on success, 1 when an analysis is indeterminate (degree cap),
2 on input errors.  Output is plain JSON or matrix text on stdout; no color
is ever emitted.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction

import click

from .analysis import classify_all, fuchsian_from_residues
from .factor import tower_vars
from .fields import DEFAULT_DEGREE_CAP, QQ, NumberField, RationalField
from .local import classify_local
from .matrices import Matrix
from .monodromy import (
    PathError,
    exponent_consistency,
    local_monodromy,
    rational_finite_poles,
)
from .params import (
    GenericFiberError,
    InadmissibleSpecialization,
    preservation_sweep,
    specialize_matrix,
)
from .parsing import (
    InputDocument,
    ParseError,
    matrix_str,
    parse_constant_matrices,
    parse_matrix_text,
    parse_minimal_poly,
    parse_scalar_list,
)
from .report import (
    classification_report,
    complex_matrix_strings,
    exponents_report,
    monodromy_report,
    reduce_report,
    render_json,
    sweep_report_dict,
)
from .systems import INFINITY, Point, entry_field, lift_matrix, localize

EXIT_OK = 0
EXIT_INDETERMINATE = 1
EXIT_INPUT = 2


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise click.ClickException(str(e))


def _parse_document(text: str) -> InputDocument:
    try:
        return parse_matrix_text(text)
    except ParseError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INPUT)


def _apply_field_ext(doc: InputDocument, field_ext: str | None):
    if field_ext is None:
        return doc.matrix
    if doc.params:
        click.echo("error: --field-ext cannot be combined with parameters", err=True)
        sys.exit(EXIT_INPUT)
    try:
        m = parse_minimal_poly(field_ext)
    except ParseError as e:
        click.echo(f"error: invalid --field-ext: {e}", err=True)
        sys.exit(EXIT_INPUT)
    if m.degree > DEFAULT_DEGREE_CAP:
        click.echo(
            f"error: --field-ext degree {int(m.degree)} exceeds the cap {DEFAULT_DEGREE_CAP}",
            err=True,
        )
        sys.exit(EXIT_INPUT)
    return lift_matrix(doc.matrix, NumberField(m, "a"))


def _emit(doc: dict, json_out: str | None):
    text = render_json(doc)
    click.echo(text, nl=False)
    if json_out and json_out != "-":
        with open(json_out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_point(text: str):
    if text.strip() in ("inf", "infinity", "oo"):
        return INFINITY
    try:
        vals = parse_scalar_list(text)
    except ParseError as e:
        click.echo(f"error: invalid point {text!r}: {e}", err=True)
        sys.exit(EXIT_INPUT)
    if len(vals) != 1:
        click.echo(f"error: expected one point, got {text!r}", err=True)
        sys.exit(EXIT_INPUT)
    return Point.finite(vals[0])


@click.group()
def main():
    """Exact singular point analysis of linear ODE systems d(y)=A(z)y."""


@main.command()
@click.argument("file")
@click.option("--certificates", is_flag=True, help="Include gauge certificates.")
@click.option("--json", "json_out", default=None, help="Also write the JSON report to a file.")
@click.option("--field-ext", default=None, help="Declare an algebraic generator, e.g. x^2-2.")
def classify(file, certificates, json_out, field_ext):
    """Classify every pole point and infinity."""
    text = _read_input(file)
    doc = _parse_document(text)
    A = _apply_field_ext(doc, field_ext)
    t0 = time.perf_counter()
    rep = classify_all(A, want_certificates=certificates)
    ms = (time.perf_counter() - t0) * 1000.0
    out = classification_report(rep, text, want_certificates=certificates, timing_ms=ms)
    _emit(out, json_out)
    sys.exit(EXIT_INDETERMINATE if rep.has_indeterminate else EXIT_OK)


@main.command()
@click.argument("file")
@click.option("--point", required=True, help="A rational point or 'inf'.")
@click.option("--json", "json_out", default=None)
@click.option("--field-ext", default=None)
def reduce(file, point, json_out, field_ext):
    """Exact gauge certificate at one point (simple-pole form, upgraded to a
    pole-free form when the point is regular)."""
    text = _read_input(file)
    doc = _parse_document(text)
    A = _apply_field_ext(doc, field_ext)
    p = _parse_point(point)
    t0 = time.perf_counter()
    sys_local = localize(A, p)
    cls = classify_local(sys_local)
    ms = (time.perf_counter() - t0) * 1000.0
    out = reduce_report(str(p), cls, text, timing_ms=ms)
    _emit(out, json_out)
    sys.exit(EXIT_OK)


@main.command()
@click.argument("file")
@click.option("--point", required=True, help="A rational point or 'inf'.")
@click.option("--json", "json_out", default=None)
@click.option("--field-ext", default=None)
def exponents(file, point, json_out, field_ext):
    """Residue matrix, characteristic polynomial, and exponents at a point."""
    text = _read_input(file)
    doc = _parse_document(text)
    A = _apply_field_ext(doc, field_ext)
    p = _parse_point(point)
    cls = classify_local(localize(A, p))
    out = exponents_report(str(p), cls, text)
    _emit(out, json_out)
    sys.exit(EXIT_OK)


@main.command()
@click.option("--points", required=True, help="Comma-separated distinct rational points.")
@click.option("--residues", "residue_file", required=True, help="File with one constant matrix literal per residue.")
@click.option("--json", "json_out", default=None)
def fuchsian(points, residue_file, json_out):
    """Emit the Fuchsian matrix sum A_i/(z - a_i)."""
    try:
        pts = parse_scalar_list(points)
        mats = parse_constant_matrices(_read_input(residue_file))
    except ParseError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INPUT)
    try:
        A = fuchsian_from_residues(pts, mats)
    except ValueError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INPUT)
    text = matrix_str(A)
    click.echo(text)
    if json_out:
        _emit({"schema_version": "1.0", "command": "fuchsian", "matrix": text}, json_out)
    sys.exit(EXIT_OK)


@main.command()
@click.argument("file")
@click.option("--set", "assignments", multiple=True, help="Parameter value, e.g. --set a=2.")
@click.option("--json", "json_out", default=None)
def specialize(file, assignments, json_out):
    """Evaluate declared parameters at rational values."""
    text = _read_input(file)
    doc = _parse_document(text)
    if not doc.params:
        click.echo("error: input declares no parameters", err=True)
        sys.exit(EXIT_INPUT)
    mapping = {}
    for item in assignments:
        if "=" not in item:
            click.echo(f"error: malformed --set {item!r}", err=True)
            sys.exit(EXIT_INPUT)
        name, _, val = item.partition("=")
        try:
            mapping[name.strip()] = Fraction(val.strip())
        except (ValueError, ZeroDivisionError):
            click.echo(f"error: malformed value in --set {item!r}", err=True)
            sys.exit(EXIT_INPUT)
    missing = [n for n in doc.params if n not in mapping]
    if missing:
        click.echo(f"error: missing values for parameters {missing}", err=True)
        sys.exit(EXIT_INPUT)
    try:
        B = specialize_matrix(doc.matrix, mapping)
    except InadmissibleSpecialization as e:
        click.echo(f"error: inadmissible specialization: {e}", err=True)
        sys.exit(EXIT_INPUT)
    text_out = matrix_str(B)
    click.echo(text_out)
    if json_out:
        _emit({"schema_version": "1.0", "command": "specialize", "matrix": text_out}, json_out)
    sys.exit(EXIT_OK)


@main.command()
@click.argument("file")
@click.option("--samples", default=50, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--json", "json_out", default=None)
def sweep(file, samples, seed, json_out):
    """Random admissible specializations with preservation checks."""
    text = _read_input(file)
    doc = _parse_document(text)
    if not doc.params:
        click.echo("error: input declares no parameters", err=True)
        sys.exit(EXIT_INPUT)
    t0 = time.perf_counter()
    try:
        rep = preservation_sweep(doc.matrix, samples, seed=seed)
    except GenericFiberError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INPUT)
    ms = (time.perf_counter() - t0) * 1000.0
    _emit(sweep_report_dict(rep, text, timing_ms=ms), json_out)
    sys.exit(EXIT_OK)


@main.command()
@click.argument("file")
@click.option("--point", default=None, help="Loop only around this rational pole.")
@click.option("--tol", default=1e-8, show_default=True, type=float)
@click.option("--json", "json_out", default=None)
def monodromy(file, point, tol, json_out):
    """Numeric local monodromy matrices around rational poles."""
    text = _read_input(file)
    doc = _parse_document(text)
    if doc.params:
        click.echo("error: monodromy needs a parameter-free system", err=True)
        sys.exit(EXIT_INPUT)
    A = doc.matrix
    try:
        poles = rational_finite_poles(A)
    except PathError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INPUT)
    if point is not None:
        p = _parse_point(point)
        if p.is_infinity or p.value not in poles:
            click.echo(f"error: {point} is not a finite rational pole", err=True)
            sys.exit(EXIT_INPUT)
        poles = [p.value]
    if not poles:
        click.echo("error: the system has no finite rational poles", err=True)
        sys.exit(EXIT_INPUT)
    loops = []
    for p in poles:
        path = local_monodromy(A, p, tol=tol)
        cons = exponent_consistency(A, p, tol=max(tol, 1e-6), integration_tol=tol)
        entry = {
            "point": str(p),
            "matrix": complex_matrix_strings(path.result),
            "error_estimate": float(path.error_estimate),
            "clearance": float(path.clearance),
        }
        if cons.skipped:
            entry["exponent_check"] = {"skipped": True, "reason": cons.reason}
        else:
            entry["exponent_check"] = {
                "skipped": False,
                "matched": bool(cons.matched),
                "max_error": float(cons.max_error),
            }
        loops.append(entry)
    _emit(monodromy_report(loops, text, tol), json_out)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
