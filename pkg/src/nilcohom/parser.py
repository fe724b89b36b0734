"""Text surface for structure equations, templates and parameter bindings.

The notation is ASCII-only.  ``(0,0,0,0,13+42,14+23)`` declares a real algebra
by the differentials of its coframe, a term ``13`` meaning ``e^1 /\\ e^3``.
``(0, 0, w12 + B*w1~2 + abs(B-1)*w2~1)`` declares a complex-structure template:
``w12`` is ``w^1 /\\ w^2``, ``w1~2`` is ``w^1 /\\ wbar^2``, and coefficients are
exact Gaussian literals (``1/4``, ``i``, ``2+3i``), parameter names, ``conj(P)``
or declared modulus symbols ``abs(P)`` / ``abs(P-1)``.  Bindings read
``D=1/2+0i; lambda=0``.  Indices are single digits 1-9 and a duplicated index
inside one term is a parse error, not a silent zero.

Errors carry 1-based line/column positions pointing inside the offending
token.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import BasisElement, Form, Gaussian, ONE
from .model import (
    ComplexStructureTemplate,
    Lit,
    Mod,
    Modulus,
    Param,
    ParameterBinding,
    RealAlgebra,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # -- low-level ----------------------------------------------------------

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self, offset: int = 0) -> str:
        k = self.pos + offset
        return self.text[k] if k < len(self.text) else ""

    def advance(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def skip_ws(self):
        while not self.at_end() and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def mark(self) -> int:
        return self.pos

    def reset(self, mark: int):
        self.pos = mark

    def location(self, pos: int | None = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        pos = min(pos, len(self.text))
        line = self.text.count("\n", 0, pos) + 1
        last_newline = self.text.rfind("\n", 0, pos)
        return line, pos - last_newline

    def error(self, message: str, pos: int | None = None):
        line, column = self.location(pos)
        raise ParseError(message, line, column)

    # -- token helpers --------------------------------------------------------

    def expect(self, ch: str):
        self.skip_ws()
        if self.peek() != ch:
            self.error(f"expected '{ch}'")
        self.advance()

    def match(self, ch: str) -> bool:
        self.skip_ws()
        if self.peek() == ch:
            self.advance()
            return True
        return False

    def scan_index(self) -> tuple[int, int]:
        """One index digit 1-9, returned with its position."""
        pos = self.pos
        ch = self.peek()
        if not ch.isdigit() or ch == "0":
            self.error("expected an index digit 1-9")
        self.advance()
        return int(ch), pos

    def scan_ident(self) -> tuple[str, int]:
        self.skip_ws()
        pos = self.pos
        m = re.match(r"[A-Za-z][A-Za-z0-9_]*", self.text[self.pos:])
        if not m:
            self.error("expected an identifier")
        self.pos += m.end()
        return m.group(0), pos

    def scan_unsigned(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.advance()
        if self.pos == start:
            self.error("expected digits")
        return int(self.text[start:self.pos])

    def scan_rational(self) -> Fraction:
        self.skip_ws()
        negative = False
        if self.peek() == "-":
            self.advance()
            negative = True
            if not self.peek().isdigit():
                self.error("expected digits after '-'")
        num = self.scan_unsigned()
        den = 1
        if self.peek() == "/":
            mark = self.mark()
            self.advance()
            if not self.peek().isdigit():
                self.error("malformed rational: expected a positive denominator")
            den = self.scan_unsigned()
            if den == 0:
                self.error("malformed rational: zero denominator", mark + 1)
        value = Fraction(num, den)
        return -value if negative else value

    def scan_gaussian(self) -> Gaussian:
        """``rational [ (+|-) rational? i ] | rational? i`` with backtracking."""
        self.skip_ws()
        if self.peek() == "i" and not self.peek(1).isalnum() and self.peek(1) != "_":
            self.advance()
            return Gaussian.of(0, 1)
        re_part = self.scan_rational()
        self.skip_ws()
        if self.peek() == "i" and not self.peek(1).isalnum() and self.peek(1) != "_":
            self.advance()
            return Gaussian.of(0, re_part)
        if self.peek() in "+-":
            mark = self.mark()
            sign = -1 if self.advance() == "-" else 1
            self.skip_ws()
            magnitude = Fraction(1)
            if self.peek().isdigit():
                magnitude = self.scan_rational()
            self.skip_ws()
            if self.peek() == "i" and not self.peek(1).isalnum() and self.peek(1) != "_":
                self.advance()
                return Gaussian.of(re_part, sign * magnitude)
            self.reset(mark)  # the sign belongs to the surrounding expression
        return Gaussian.of(re_part, 0)


def parse_gaussian(text: str) -> Gaussian:
    """Parse a standalone Gaussian literal, requiring full consumption."""
    sc = _Scanner(text)
    value = sc.scan_gaussian()
    sc.skip_ws()
    if not sc.at_end():
        sc.error("trailing characters after Gaussian literal")
    return value


# ---------------------------------------------------------------------------
# real algebras
# ---------------------------------------------------------------------------

def parse_real_algebra(src: str) -> RealAlgebra:
    sc = _Scanner(src)
    sc.expect("(")
    raw_entries: list[list[tuple[int, int, int, int]]] = []
    while True:
        raw_entries.append(_parse_real_entry(sc, raw_entries))
        sc.skip_ws()
        if sc.match(","):
            continue
        sc.expect(")")
        break
    sc.skip_ws()
    if not sc.at_end():
        sc.error("trailing characters after ')'")
    dim = len(raw_entries)
    forms = []
    for terms in raw_entries:
        parts = []
        for a, b, sign, pos in terms:
            if a > dim or b > dim:
                sc.error(f"index out of range for dimension {dim}", pos)
            lo, hi = min(a, b), max(a, b)
            orient = 1 if a < b else -1
            parts.append((BasisElement((lo, hi), ()), Gaussian.rational(sign * orient)))
        forms.append(Form(dim, parts))
    return RealAlgebra(dim, forms)


def _parse_real_entry(sc: _Scanner, raw_entries):
    """One entry; ``0^k`` expands by appending k-1 extra zero entries."""
    sc.skip_ws()
    if sc.peek() == "0":
        sc.advance()
        if sc.peek() == "^":
            sc.advance()
            count, pos = sc.scan_index()
            for _ in range(count - 1):
                raw_entries.append([])
        return []
    terms = []
    sign = 1
    while True:
        sc.skip_ws()
        pos = sc.pos
        a, _ = sc.scan_index()
        b, bpos = sc.scan_index()
        if a == b:
            sc.error(f"duplicate index {a} inside one term", bpos)
        terms.append((a, b, sign, pos))
        sc.skip_ws()
        if sc.peek() == "+":
            sc.advance()
            sign = 1
        elif sc.peek() == "-":
            sc.advance()
            sign = -1
        else:
            return terms


# ---------------------------------------------------------------------------
# complex-structure templates
# ---------------------------------------------------------------------------

def parse_complex_structure(src: str) -> ComplexStructureTemplate:
    sc = _Scanner(src)
    sc.expect("(")
    raw_entries = []
    while True:
        raw_entries.append(_parse_cform(sc))
        sc.skip_ws()
        if sc.match(","):
            continue
        sc.expect(")")
        break
    sc.skip_ws()
    if not sc.at_end():
        sc.error("trailing characters after ')'")
    n = len(raw_entries)
    params: list[str] = []
    moduli: dict[str, Modulus] = {}
    entries = []
    for terms in raw_entries:
        out = []
        for coeff, elem_info, pos in terms:
            holo, anti, swap_sign = elem_info
            if max(holo + anti) > n:
                sc.error(f"index out of range for complex dimension {n}", pos)
            if swap_sign < 0:
                coeff = _negate_expr(coeff)
            if isinstance(coeff, Param) and coeff.name not in params:
                params.append(coeff.name)
            if isinstance(coeff, Mod):
                mod = coeff.declaration
                if coeff.name in moduli and moduli[coeff.name] != mod:
                    sc.error(f"conflicting declarations of {coeff.name}", pos)
                moduli[coeff.name] = mod
                if mod.param not in params:
                    params.append(mod.param)
                coeff = Mod(coeff.name, coeff.negated, mod)
            out.append((coeff, BasisElement(holo, anti)))
        entries.append(tuple(out))
    return ComplexStructureTemplate(
        n, entries, params=params, moduli=list(moduli.values())
    )


def _negate_expr(expr):
    if isinstance(expr, Lit):
        return Lit(-expr.value)
    if isinstance(expr, Param):
        return Param(expr.name, expr.conjugated, not expr.negated)
    return Mod(expr.name, not expr.negated, expr.declaration)


def _parse_cform(sc: _Scanner):
    sc.skip_ws()
    if sc.peek() == "0" and not sc.peek(1).isdigit():
        sc.advance()
        return []
    terms = []
    sign = 1
    while True:
        sc.skip_ws()
        pos = sc.pos
        coeff = _parse_cterm_coeff(sc)
        elem_info = _parse_wfactor(sc)
        if sign < 0:
            coeff = _negate_expr(coeff)
        terms.append((coeff, elem_info, pos))
        sc.skip_ws()
        if sc.peek() == "+":
            sc.advance()
            sign = 1
        elif sc.peek() == "-":
            sc.advance()
            sign = -1
        else:
            return terms


def _parse_cterm_coeff(sc: _Scanner):
    """The optional ``coeff *`` prefix of a term; defaults to the literal 1."""
    sc.skip_ws()
    ch = sc.peek()
    if ch == "w" and sc.peek(1).isdigit():
        return Lit(ONE)
    if ch.isdigit() or ch == "-" or (ch == "i" and not (sc.peek(1).isalnum() or sc.peek(1) == "_")):
        coeff = Lit(sc.scan_gaussian())
    elif ch.isalpha():
        word, pos = sc.scan_ident()
        if word == "conj" and sc.peek() == "(":
            sc.advance()
            name, _ = sc.scan_ident()
            sc.expect(")")
            coeff = Param(name, conjugated=True)
        elif word == "abs" and sc.peek() == "(":
            sc.advance()
            name, _ = sc.scan_ident()
            shift = Gaussian.of(0)
            if sc.match("-"):
                shift = sc.scan_gaussian()
            sc.expect(")")
            mod_name = "abs" + name + (f"m{_symbol_text(shift)}" if shift else "")
            coeff = Mod(mod_name, False, Modulus(mod_name, name, shift))
        else:
            coeff = Param(word)
    else:
        sc.error("expected a coefficient or a w-term")
    sc.expect("*")
    return coeff


def _symbol_text(value: Gaussian) -> str:
    return re.sub(r"[^0-9A-Za-z]", "_", str(value))


def _parse_wfactor(sc: _Scanner):
    sc.skip_ws()
    if sc.peek() != "w":
        sc.error("expected a w-term")
    sc.advance()
    a, _ = sc.scan_index()
    if sc.peek() == "~":
        sc.advance()
        b, _ = sc.scan_index()
        return ((a,), (b,), 1)
    b, bpos = sc.scan_index()
    if a == b:
        sc.error(f"duplicate index {a} inside one term", bpos)
    if a < b:
        return ((a, b), (), 1)
    return ((b, a), (), -1)


# ---------------------------------------------------------------------------
# bindings
# ---------------------------------------------------------------------------

def parse_binding(src: str) -> ParameterBinding:
    sc = _Scanner(src)
    values: dict[str, Gaussian] = {}
    sc.skip_ws()
    if sc.at_end():
        return ParameterBinding({})
    while True:
        name, pos = sc.scan_ident()
        if name in values:
            sc.error(f"repeated assignment to {name}", pos)
        sc.expect("=")
        values[name] = sc.scan_gaussian()
        sc.skip_ws()
        if sc.match(";"):
            sc.skip_ws()
            if sc.at_end():
                break
            continue
        if sc.at_end():
            break
        sc.error("expected ';' or end of input")
    return ParameterBinding(values)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def render(x) -> str:
    """Canonical text; parsing the result reproduces the value."""
    if isinstance(x, RealAlgebra):
        return _render_real(x)
    if isinstance(x, ComplexStructureTemplate):
        return _render_template(x)
    raise TypeError(f"cannot render {type(x).__name__}")


def _render_real(a: RealAlgebra) -> str:
    entries = []
    for f in a.d_of_e:
        if f.is_zero():
            entries.append("0")
            continue
        parts = []
        for elem, coeff in f.items():
            lo, hi = elem.holo
            if coeff.re == 1 and not coeff.im:
                parts.append(f"{lo}{hi}")
            elif coeff.re == -1 and not coeff.im:
                # negative terms are encoded by swapping the indices
                parts.append(f"{hi}{lo}")
            else:
                raise ValueError(f"coefficient {coeff} is not renderable as ab/ba")
        entries.append("+".join(parts))
    return "(" + ",".join(entries) + ")"


def _coeff_text(expr) -> tuple[str, bool]:
    """Return (text-without-leading-minus, subtract) for one coefficient."""
    if isinstance(expr, Lit):
        v = expr.value
        if v.re < 0 or (not v.re and v.im < 0):
            return _lit_text(-v), True
        return _lit_text(v), False
    if isinstance(expr, Param):
        body = f"conj({expr.name})*" if expr.conjugated else f"{expr.name}*"
        return body, expr.negated
    shift = expr.declaration.shift
    body = f"abs({expr.declaration.param})*" if not shift else \
        f"abs({expr.declaration.param}-{shift})*"
    return body, expr.negated


def _lit_text(v: Gaussian) -> str:
    return "" if v == ONE else f"{v}*"


def _render_template(t: ComplexStructureTemplate) -> str:
    entries = []
    for entry in t.d_of_omega:
        if not entry:
            entries.append("0")
            continue
        ordered = sorted(entry, key=lambda ce: (ce[1].bidegree != (2, 0), ce[1]))
        txt = ""
        for k, (coeff, elem) in enumerate(ordered):
            body, subtract = _coeff_text(coeff)
            if k == 0:
                if subtract:
                    if not isinstance(coeff, Lit):
                        raise ValueError("cannot render a leading negated symbol")
                    body = f"{coeff.value}*"  # signed literal is grammar-legal
                txt += f"{body}{elem}"
            else:
                txt += ("-" if subtract else "+") + f"{body}{elem}"
        entries.append(txt)
    return "(" + ",".join(entries) + ")"


def render_binding(b: ParameterBinding) -> str:
    return "; ".join(f"{name}={value}" for name, value in sorted(b.values.items()))
