"""Polynomial expression parsing and canonical printing.

Grammar (whitespace-insensitive, '#' starts a comment running to end of line):

    expr  := ['+'|'-'] term (('+'|'-') term)*
    term  := coeff ('*' var)*  |  var ('*' var)*
    var   := 'x' index ('^' exponent)?
    coeff := integer | integer '/' integer

Errors carry the byte offset of the offending token; inhomogeneous input is
rejected with the positions of every term and its degree.
"""

from __future__ import annotations

from fractions import Fraction

from .field import Field, QQ
from .poly import HomogPoly


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, positions: list | None = None):
        super().__init__(f"{message} (at byte {offset})")
        self.message = message
        self.offset = offset
        self.positions = positions or []


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        t = self.text
        while self.pos < len(t):
            ch = t[self.pos]
            if ch in " \t\r\n":
                self.pos += 1
            elif ch == "#":
                nl = t.find("\n", self.pos)
                self.pos = len(t) if nl < 0 else nl + 1
            else:
                break

    def peek(self):
        self._skip()
        if self.pos >= len(self.text):
            return ("end", None, self.pos)
        ch = self.text[self.pos]
        start = self.pos
        if ch in "+-*/^":
            return (ch, ch, start)
        if ch.isdigit():
            j = start
            while j < len(self.text) and self.text[j].isdigit():
                j += 1
            return ("int", int(self.text[start:j]), start)
        if ch == "x":
            j = start + 1
            while j < len(self.text) and self.text[j].isdigit():
                j += 1
            if j == start + 1:
                raise ParseError("variable 'x' needs an index", start)
            return ("var", int(self.text[start + 1:j]), start)
        raise ParseError(f"unexpected character {ch!r}", start)

    def next(self):
        kind, val, start = self.peek()
        if kind == "int":
            j = start
            while j < len(self.text) and self.text[j].isdigit():
                j += 1
            self.pos = j
        elif kind == "var":
            j = start + 1
            while j < len(self.text) and self.text[j].isdigit():
                j += 1
            self.pos = j
        elif kind == "end":
            pass
        else:
            self.pos = start + 1
        return kind, val, start


def _parse_var(tk: _Tokens, n: int):
    kind, idx, start = tk.next()
    assert kind == "var"
    if idx > n:
        raise ParseError(f"variable x{idx} exceeds x{n}", start)
    exp = 1
    if tk.peek()[0] == "^":
        tk.next()
        kind, val, at = tk.next()
        if kind != "int":
            raise ParseError("exponent must be a nonnegative integer", at)
        exp = val
    return idx, exp


def _parse_term(tk: _Tokens, n: int):
    """One term; returns (exponent tuple, Fraction coefficient, start offset)."""
    kind, val, start = tk.peek()
    coeff = Fraction(1)
    expo = [0] * (n + 1)
    if kind == "int":
        tk.next()
        coeff = Fraction(val)
        if tk.peek()[0] == "/":
            tk.next()
            dkind, dval, dat = tk.next()
            if dkind != "int":
                raise ParseError("denominator must be an integer", dat)
            if dval == 0:
                raise ParseError("zero denominator", dat)
            coeff /= dval
        while tk.peek()[0] == "*":
            tk.next()
            kind2, _, at2 = tk.peek()
            if kind2 != "var":
                raise ParseError("expected a variable after '*'", at2)
            idx, exp = _parse_var(tk, n)
            expo[idx] += exp
    elif kind == "var":
        idx, exp = _parse_var(tk, n)
        expo[idx] += exp
        while tk.peek()[0] == "*":
            tk.next()
            kind2, _, at2 = tk.peek()
            if kind2 != "var":
                raise ParseError("expected a variable after '*'", at2)
            idx, exp = _parse_var(tk, n)
            expo[idx] += exp
    else:
        raise ParseError("expected a coefficient or variable", start)
    return tuple(expo), coeff, start


def parse_poly(text: str, n: int, field: Field = QQ) -> HomogPoly:
    """Parse an expression in x0..xn into an exact homogeneous polynomial."""
    tk = _Tokens(text)
    sign = 1
    kind, _, start = tk.peek()
    if kind == "end":
        raise ParseError("empty expression", start)
    if kind in "+-":
        tk.next()
        sign = -1 if kind == "-" else 1
    seen = []  # (offset, degree) per term, for the inhomogeneity report
    acc: dict[tuple, Fraction] = {}
    while True:
        expo, coeff, at = _parse_term(tk, n)
        seen.append((at, sum(expo)))
        c = acc.get(expo, Fraction(0)) + sign * coeff
        if c == 0:
            acc.pop(expo, None)
        else:
            acc[expo] = c
        kind, _, at = tk.next()
        if kind == "end":
            break
        if kind == "+":
            sign = 1
        elif kind == "-":
            sign = -1
        else:
            raise ParseError("expected '+', '-' or end of expression", at)
    degrees = {d for _, d in seen}
    if len(degrees) > 1:
        where = ", ".join(f"term at byte {at} has degree {d}" for at, d in seen)
        raise ParseError(f"inhomogeneous expression: {where}", seen[0][0],
                         positions=seen)
    return HomogPoly.from_terms(n + 1, acc, field)


def _coeff_str(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def poly_to_str(p: HomogPoly) -> str:
    """Canonical rendering; parse_poly(poly_to_str(p), n) == p."""
    if p.is_zero:
        return "0"
    parts = []
    for expo, coeff in p.sorted_terms():
        vars_part = "*".join(
            f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(expo) if e
        )
        neg = coeff < 0
        mag = -coeff if neg else coeff
        if not vars_part:
            body = _coeff_str(mag)
        elif mag == 1:
            body = vars_part
        else:
            body = f"{_coeff_str(mag)}*{vars_part}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)
