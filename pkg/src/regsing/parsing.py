"""Text grammar for matrices of rational functions, and canonical printers.

Grammar (entries are expressions in z and any declared parameters):

    document := [ "params:" name { "," name } NEWLINE ] matrix
    matrix   := "[" row { "," row } "]"
    row      := "[" expr { "," expr } "]"
    expr     := term { ("+" | "-") term }
    term     := unary { ("*" | "/") unary }
    unary    := ("+" | "-") unary | power
    power    := atom [ "^" [ "-" ] integer ]
    atom     := integer | identifier | "(" expr ")"

Parsing is total with positioned errors; printing canonical values and
re-parsing is a fixed point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .factor import factor_poly
from .fields import QQ, FractionField, RationalField, parameter_field
from .matrices import Matrix
from .poly import Poly, format_poly
from .ratfun import RatFun
from .systems import GLOBAL_VAR


class ParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass
class Token:
    kind: str  # "int" | "ident" | "punct" | "end"
    text: str
    line: int
    col: int


_PUNCT = set("[],()+-*/^")


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch == ":":
            tokens.append(Token("punct", ":", line, col))
            col += 1
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token("punct", ch, line, col))
            col += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text, var=GLOBAL_VAR):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.var = var
        self.field = QQ
        self.params = []
        self.param_values = {}

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect(self, text):
        t = self.next()
        if t.kind == "end" or t.text != text:
            found = repr(t.text) if t.text else "end of input"
            self.error(f"expected {text!r}, found {found}", t)
        return t

    # -- header ------------------------------------------------------------

    def parse_header(self):
        t = self.peek()
        if t.kind == "ident" and t.text == "params":
            nxt = self.tokens[self.pos + 1]
            if nxt.kind == "punct" and nxt.text == ":":
                self.next()
                self.next()
                names = []
                while True:
                    nt = self.next()
                    if nt.kind != "ident":
                        self.error("expected a parameter name", nt)
                    if nt.text == self.var:
                        self.error(f"{self.var!r} cannot be a parameter", nt)
                    if nt.text in names:
                        self.error(f"duplicate parameter {nt.text!r}", nt)
                    names.append(nt.text)
                    if self.peek().kind == "punct" and self.peek().text == ",":
                        self.next()
                        continue
                    break
                self.params = names
                self.field = parameter_field(names)
                self.param_values = _param_generators(self.field, self.var)

    # -- expressions ---------------------------------------------------------

    def parse_expr(self):
        acc = self.parse_term()
        while True:
            t = self.peek()
            if t.kind == "punct" and t.text in "+-":
                self.next()
                rhs = self.parse_term()
                acc = acc + rhs if t.text == "+" else acc - rhs
            else:
                return acc

    def parse_term(self):
        acc = self.parse_unary()
        while True:
            t = self.peek()
            if t.kind == "punct" and t.text in "*/":
                self.next()
                rhs = self.parse_unary()
                if t.text == "*":
                    acc = acc * rhs
                else:
                    if not rhs:
                        self.error("division by zero", t)
                    acc = acc / rhs
            else:
                return acc

    def parse_unary(self):
        t = self.peek()
        if t.kind == "punct" and t.text in "+-":
            self.next()
            v = self.parse_unary()
            return v if t.text == "+" else -v
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        t = self.peek()
        if t.kind == "punct" and t.text == "^":
            self.next()
            sign = 1
            if self.peek().kind == "punct" and self.peek().text == "-":
                self.next()
                sign = -1
            et = self.next()
            if et.kind != "int":
                self.error("expected an integer exponent", et)
            e = sign * int(et.text)
            if e < 0 and not base:
                self.error("negative power of zero", et)
            return base**e
        return base

    def parse_atom(self):
        t = self.next()
        if t.kind == "int":
            return RatFun.const(Fraction(int(t.text)), self.field, self.var)
        if t.kind == "ident":
            if t.text == self.var:
                return RatFun.gen(self.field, self.var)
            if t.text in self.param_values:
                return self.param_values[t.text]
            self.error(f"undeclared identifier {t.text!r}", t)
        if t.kind == "punct" and t.text == "(":
            v = self.parse_expr()
            self.expect(")")
            return v
        found = repr(t.text) if t.text else "end of input"
        self.error(f"unexpected token {found}", t)

    # -- matrices -------------------------------------------------------------

    def parse_matrix(self, square=True):
        self.expect("[")
        rows = []
        while True:
            rows.append(self.parse_row())
            t = self.peek()
            if t.kind == "punct" and t.text == ",":
                self.next()
                continue
            break
        self.expect("]")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                self.error("ragged matrix rows")
        if square and len(rows) != width:
            self.error(f"matrix must be square, got {len(rows)}x{width}")
        ring = FractionField(self.field, self.var)
        return Matrix(rows, ring)

    def parse_row(self):
        self.expect("[")
        out = [self.parse_expr()]
        while self.peek().kind == "punct" and self.peek().text == ",":
            self.next()
            out.append(self.parse_expr())
        self.expect("]")
        return out


def _param_generators(field, main_var):
    """Map each parameter name to its constant image in RatFun(main_var)."""
    levels = []
    f = field
    while isinstance(f, FractionField):
        levels.append(f)
        f = f.base
    out = {}
    for i, level in enumerate(levels):  # levels[0] is the outermost
        gen = RatFun.gen(level.base, level.var)
        for outer in reversed(levels[:i]):
            gen = RatFun.const(gen, outer.base, outer.var)
        out[level.var] = RatFun.const(gen, field, main_var)
    return out


@dataclass
class InputDocument:
    text: str
    params: list
    matrix: Matrix

    @property
    def field(self):
        return self.matrix.ring.base


def parse_matrix_text(text: str, square: bool = True) -> InputDocument:
    p = _Parser(text)
    p.parse_header()
    m = p.parse_matrix(square=square)
    t = p.peek()
    if t.kind != "end":
        p.error(f"unexpected trailing input {t.text!r}", t)
    return InputDocument(text=text, params=p.params, matrix=m)


def parse_constant_matrices(text: str):
    """Matrix literals with constant rational entries, separated by blank
    lines (or simply juxtaposed); used for residue input files."""
    chunks = []
    p = _Parser(text)
    while p.peek().kind != "end":
        M = p.parse_matrix(square=True)
        chunks.append(M.map(lambda e: _require_const(e, p), QQ))
    return chunks


def _require_const(e: RatFun, parser):
    if not e.is_constant():
        parser.error("residue entries must be constant")
    return e.constant_value()


def parse_scalar_list(text: str):
    """Comma-separated rational scalars like "0,1,-1/2"."""
    p = _Parser(text)
    out = []
    while True:
        v = p.parse_expr()
        if not v.is_constant():
            p.error("expected a rational constant")
        out.append(v.constant_value())
        t = p.peek()
        if t.kind == "punct" and t.text == ",":
            p.next()
            continue
        break
    if p.peek().kind != "end":
        p.error("unexpected trailing input")
    return out


def parse_minimal_poly(text: str, var: str = "x") -> Poly:
    """A monic irreducible polynomial over Q for --field-ext."""
    from .factor import is_irreducible

    p = _Parser(text, var=var)
    v = p.parse_expr()
    if not v.is_polynomial():
        raise ParseError("minimal polynomial must be polynomial", 1, 1)
    m = v.num
    if m.degree < 2:
        raise ParseError("minimal polynomial must have degree >= 2", 1, 1)
    if m.leading() != QQ.one:
        raise ParseError("minimal polynomial must be monic", 1, 1)
    if not is_irreducible(m):
        raise ParseError("minimal polynomial is not irreducible over Q", 1, 1)
    return m


# -- canonical printing ------------------------------------------------------


def fraction_str(c) -> str:
    return str(c)


def ratfun_str(f: RatFun) -> str:
    """Canonical string; over Q the denominator is printed as a sorted
    product of monic irreducible factors, e.g. (z^2+1)/(z*(z-1))."""
    if f.den.is_one():
        return format_poly(f.num)
    if isinstance(f.field, RationalField):
        den = _factored_str(f.den)
    else:
        den = format_poly(f.den)
        if len([c for c in f.den.coeffs if c]) > 1:
            den = "(" + den + ")"
    num = format_poly(f.num)
    if len([c for c in f.num.coeffs if c]) > 1:
        num = "(" + num + ")"
    return num + "/" + den


def _factored_str(den: Poly) -> str:
    _, factors = factor_poly(den)
    parts = []
    for fac, mult in factors:
        s = format_poly(fac)
        if len([c for c in fac.coeffs if c]) > 1:
            s = "(" + s + ")"
        if mult > 1:
            if not s.startswith("("):
                s = "(" + s + ")"
            s = f"{s}^{mult}"
        parts.append(s)
    if not parts:
        return "1"
    return "*".join(parts)


def matrix_str(A: Matrix) -> str:
    return (
        "["
        + ",".join(
            "[" + ",".join(ratfun_str(e) for e in row) + "]" for row in A.rows
        )
        + "]"
    )


def constant_matrix_str(A: Matrix) -> str:
    return (
        "["
        + ",".join("[" + ",".join(str(e) for e in row) + "]" for row in A.rows)
        + "]"
    )
