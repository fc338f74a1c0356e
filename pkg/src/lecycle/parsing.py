"""Polynomial text grammar.

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INT)?
    atom   := NUMBER | IDENT | "(" expr ")"

NUMBER is an integer or an ``a/b`` rational literal.  There is no implicit
multiplication: ``x y`` and ``2x`` are errors.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError, UnknownVariableError
from .polyring import Polynomial, Ring

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\s*/\s*\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


def _position(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", *_position(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None, cls=ParseError):
        tok = tok or self.peek()
        raise cls(msg, *_position(self.text, tok[2]))

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("num", "ident") or tok[1] == "(":
                self.error("implicit multiplication is not allowed; use '*'")
            self.error(f"unexpected token {tok[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.advance()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[1] == "*":
            self.advance()
            p = p * self.unary()
        return p

    def unary(self):
        tok = self.peek()
        if tok[1] == "-":
            self.advance()
            return -self.unary()
        if tok[1] == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.advance()
            tok = self.advance()
            if tok[0] != "num" or "/" in tok[1]:
                self.error("exponent must be a non-negative integer literal", tok)
            base = base ** int(tok[1])
            if self.peek()[1] == "^":
                self.error("chained '^' is ambiguous; use parentheses")
        return base

    def atom(self):
        tok = self.advance()
        kind, value, _ = tok
        if kind == "num":
            if "/" in value:
                a, b = (s.strip() for s in value.split("/"))
                if int(b) == 0:
                    self.error("zero denominator", tok)
                return self.ring.const(Fraction(int(a), int(b)))
            return self.ring.const(int(value))
        if kind == "ident":
            if value not in self.ring.names:
                self.error(f"unknown variable {value!r}", tok, UnknownVariableError)
            return self.ring.gen(value)
        if value == "(":
            p = self.expr()
            if self.peek()[1] != ")":
                self.error("expected ')'")
            self.advance()
            return p
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected token {value!r}", tok)


def parse_polynomial(text: str, variables) -> Polynomial:
    """Parse ``text`` into a polynomial over the given variables or ring."""
    ring = variables if isinstance(variables, Ring) else Ring(tuple(variables))
    if not text or not text.strip():
        raise ParseError("empty polynomial", 1, 1)
    return _Parser(text, ring).parse()
