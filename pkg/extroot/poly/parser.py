"""Recursive-descent parser for the ASCII polynomial grammar.

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | VAR | "(" expr ")"

Variables are X1..Xn and Y. A bare X is accepted when a default variable is supplied.
"""

import re
from dataclasses import dataclass

from ..errors import PolynomialSyntaxError
from .multivariate import IntPolyMulti, polynomial_ring
from .univariate import IntPolyUni


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>X\d+|X|Y)|(?P<op>[-+*^()]))")


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == pos:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            line, column = _position(text, start)
            raise PolynomialSyntaxError(f"unexpected character {text[start]!r}", line, column)
        kind = match.lastgroup
        tokens.append(_Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int, default_var: str | None):
        self.text = text
        self.n = n
        self.default_var = default_var
        self.ring = polynomial_ring(n)
        self.gens = {str(g): g for g in self.ring.gens}
        self.tokens = _tokenize(text)
        self.index = 0

    def error(self, message: str, token: _Token):
        line, column = _position(self.text, token.offset)
        raise PolynomialSyntaxError(message, line, column)

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def parse(self):
        if self.current.kind == "end":
            self.error("empty polynomial", self.current)
        value = self.expr()
        if self.current.kind != "end":
            self.error(f"unexpected {self.current.text!r}", self.current)
        return value

    def expr(self):
        value = self.term()
        while self.current.text in ("+", "-") and self.current.kind == "op":
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.current.kind == "op" and self.current.text == "*":
            self.advance()
            value = value * self.unary()
        return value

    def unary(self):
        if self.current.kind == "op" and self.current.text in ("+", "-"):
            op = self.advance().text
            operand = self.unary()
            return -operand if op == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            self.advance()
            token = self.current
            if token.kind != "int":
                self.error("exponent must be a nonnegative integer literal", token)
            self.advance()
            return base ** int(token.text)
        return base

    def atom(self):
        token = self.current
        if token.kind == "int":
            self.advance()
            return self.ring(int(token.text))
        if token.kind == "var":
            self.advance()
            name = token.text
            if name == "X":
                if self.default_var is None:
                    self.error("bare X is ambiguous; write X1..Xn", token)
                name = self.default_var
            if name not in self.gens:
                self.error(f"unknown variable {name} (system has X1..X{self.n} and Y)", token)
            return self.gens[name]
        if token.kind == "op" and token.text == "(":
            self.advance()
            value = self.expr()
            if not (self.current.kind == "op" and self.current.text == ")"):
                self.error("expected ')'", self.current)
            self.advance()
            return value
        if token.kind == "end":
            self.error("unexpected end of input", token)
        self.error(f"unexpected {token.text!r}", token)


def parse_polynomial(text: str, n: int) -> IntPolyMulti:
    """Parse a polynomial in X1..Xn and Y."""
    default_var = "X1" if n == 1 else None
    element = _Parser(text, n, default_var).parse()
    return IntPolyMulti.from_ring(n, element)


def parse_univariate(text: str, axis: int, n: int) -> IntPolyUni:
    """Parse F_axis, which may only involve X_axis (or a bare X)."""
    var = f"X{axis}"
    poly = IntPolyMulti.from_ring(n, _Parser(text, n, var).parse())
    slot = axis - 1
    coeffs: dict[int, int] = {}
    for monomial, c in poly.terms.items():
        if any(e for i, e in enumerate(monomial) if i != slot):
            tokens = _tokenize(text)
            raise PolynomialSyntaxError(f"F_{axis} may only involve {var}", *_position(text, tokens[0].offset))
        coeffs[monomial[slot]] = c
    degree = max(coeffs, default=-1)
    return IntPolyUni(tuple(coeffs.get(i, 0) for i in range(degree + 1)), var)
