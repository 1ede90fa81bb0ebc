"""Polynomial expression parser.

Grammar (whitespace insensitive, no implicit multiplication)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*      # "/" only by an integer literal
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := INT | IDENT | "(" expr ")"
"""
from __future__ import annotations

import re
from fractions import Fraction

from .algebra import Polynomial, PolyRing
from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def tokenize(src: str) -> list:
    """List of (kind, text, column) with kind in {"int", "ident", "op", "end"}."""
    tokens = []
    pos = 0
    src = src.rstrip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), len(tokens))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, ring: PolyRing):
        self.ring = ring
        self.tokens = tokenize(src)
        self.i = 0
        self.index = {name: k for k, name in enumerate(ring.names)}

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(f"{msg} at token {self.i + 1} {tok[1]!r}" if tok[1] else f"{msg} at end of input",
                          tok[2], self.i)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        f = self.expr()
        if self.peek()[0] != "end":
            raise self.error("syntax error: unexpected token")
        return f

    def expr(self):
        f = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            if op == "*":
                f = f * self.unary()
            else:
                tok = self.peek()
                if tok[0] != "int":
                    raise self.error("divisor must be an integer literal")
                self.take()
                d = int(tok[1])
                p = self.ring.field.characteristic
                if d == 0 or (p and d % p == 0):
                    raise ParseError("division by zero", tok[2], self.i - 1)
                f = f * Fraction(1, d)
        return f

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise self.error("exponent must be a nonnegative integer literal")
            self.take()
            base = base ** int(tok[1])
            if self.peek()[:2] == ("op", "^"):
                raise self.error("chained exponent; use parentheses")
        return base

    def atom(self):
        tok = self.peek()
        kind, text, _ = tok
        if kind == "int":
            self.take()
            return self.ring.constant(int(text))
        if kind == "ident":
            if text not in self.index:
                raise self.error(f"unknown identifier {text!r}")
            self.take()
            return self.ring.gens[self.index[text]]
        if tok[:2] == ("op", "("):
            self.take()
            f = self.expr()
            if self.peek()[:2] != ("op", ")"):
                raise self.error("expected ')'")
            self.take()
            return f
        raise self.error("syntax error: unexpected token")


def parse_polynomial(src: str, ring: PolyRing) -> Polynomial:
    """Parse ``src`` into a polynomial of ``ring``; coefficients land in its field."""
    return _Parser(src, ring).parse()
