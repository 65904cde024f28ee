"""Recursive-descent parser for the polynomial text format.

Grammar (whitespace-insensitive)::

    poly    := [sign] term { sign term }
    term    := coeff [ "*" factors ] | factors
    factors := factor { "*" factor }
    factor  := var [ "^" nat ] | "(" poly ")" [ "^" nat ]
    var     := "x" | "y" | "z"
    coeff   := nat [ "/" nat ]
    sign    := "+" | "-"

A power on a parenthesised group is accepted as a convenience.  Printing a
:class:`~darbouxkit.poly.Poly` produces text in this grammar.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PolySyntaxError
from .fields import QQ, Field
from .poly import VARS, Poly


class _Parser:
    def __init__(self, text: str, field: Field, nvars: int):
        self.text = text
        self.field = field
        self.nvars = nvars
        self.pos = 0

    def error(self, msg: str):
        raise PolySyntaxError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}" + (f", found {self.peek()!r}" if self.peek() else ", found end of input"))
        self.pos += 1

    def nat(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start : self.pos])

    def poly(self) -> Poly:
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        total = self.term().scale(sign)
        while self.peek() and self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            total = total + self.term().scale(sign)
        return total

    def term(self) -> Poly:
        ch = self.peek()
        if ch.isdigit():
            num = self.nat()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den = self.nat()
                if den == 0:
                    self.error("zero denominator")
            c = Poly.const(self.field.from_fraction(Fraction(num, den)), self.field, self.nvars)
            if self.peek() == "*":
                self.pos += 1
                return c * self.factors()
            return c
        return self.factors()

    def factors(self) -> Poly:
        result = self.factor()
        while self.peek() == "*":
            self.pos += 1
            result = result * self.factor()
        return result

    def factor(self) -> Poly:
        ch = self.peek()
        if ch in VARS and ch:
            if VARS.index(ch) >= self.nvars:
                self.error(f"variable {ch} not allowed in a {self.nvars}-variable polynomial")
            self.pos += 1
            base = Poly.var(ch, self.field, self.nvars)
        elif ch == "(":
            self.pos += 1
            base = self.poly()
            self.take(")")
        else:
            self.error("expected a variable or '('" + (f", found {ch!r}" if ch else ", found end of input"))
        if self.peek() == "^":
            self.pos += 1
            base = base ** self.nat()
        return base


def parse_polynomial(text: str, field: Field = QQ, nvars: int | None = None) -> Poly:
    """Parse ``text``; ``nvars`` defaults to 3 when ``z`` occurs and 2 otherwise."""
    if nvars is None:
        nvars = 3 if "z" in text else 2
    p = _Parser(text, field, nvars)
    if not p.peek():
        p.error("empty polynomial")
    result = p.poly()
    if p.peek():
        p.error(f"unexpected {p.peek()!r}")
    return result
