"""
Polynomial expression parser.

Grammar (whitespace and newlines are ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' unary) | ('/' INTEGER))*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INTEGER)?
    atom   := INTEGER | IDENT | '(' expr ')'

Exponents are non-negative integer literals; identifiers must be declared
variables. Errors carry the line and column of the offending token.
"""

import re
from dataclasses import dataclass
from typing import List, Sequence

from sympy import Integer, Poly, Rational, Symbol, expand

from poly_core.polynomials import make_poly
from utils.errors import ExpressionSyntaxError, UnknownIdentifier

_TOKEN_RE = re.compile(r'\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))')


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def _position(text: str, offset: int):
    line = text.count('\n', 0, offset) + 1
    column = offset - (text.rfind('\n', 0, offset) + 1) + 1
    return line, column


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", *_position(text, pos))
        number, ident, op = match.groups()
        start = match.start(match.lastindex)
        line, column = _position(text, start)
        if number is not None:
            tokens.append(Token('int', number, line, column))
        elif ident is not None:
            tokens.append(Token('ident', ident, line, column))
        else:
            tokens.append(Token('op', '^' if op == '**' else op, line, column))
        pos = match.end()
    line, column = _position(text, len(text))
    tokens.append(Token('end', '', line, column))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[Symbol]):
        self.tokens = tokenize(text)
        self.index = 0
        self.variables = {str(v): v for v in variables}

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _error(self, message: str, token: Token = None):
        token = token or self.current
        return ExpressionSyntaxError(message, token.line, token.column)

    def _accept(self, *ops: str) -> bool:
        if self.current.kind == 'op' and self.current.text in ops:
            self.index += 1
            return True
        return False

    def _integer(self, what: str) -> int:
        token = self.current
        if token.kind == 'op' and token.text == '-':
            raise self._error(f"negative {what}")
        if token.kind != 'int':
            raise self._error(f"expected an integer {what}")
        self.index += 1
        return int(token.text)

    def parse(self):
        if self.current.kind == 'end':
            raise self._error("empty expression")
        value = self.expr()
        if self.current.kind != 'end':
            raise self._error(f"unexpected {self.current.text!r}")
        return value

    def expr(self):
        value = self.term()
        while True:
            if self._accept('+'):
                value = value + self.term()
            elif self._accept('-'):
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            if self._accept('*'):
                value = value * self.unary()
            elif self._accept('/'):
                denominator = self._integer('denominator')
                if denominator == 0:
                    raise self._error("division by zero", self.tokens[self.index - 1])
                value = value * Rational(1, denominator)
            else:
                return value

    def unary(self):
        if self._accept('-'):
            return -self.unary()
        if self._accept('+'):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self._accept('^'):
            return base ** self._integer('exponent')
        return base

    def atom(self):
        token = self.current
        if token.kind == 'int':
            self.index += 1
            return Integer(int(token.text))
        if token.kind == 'ident':
            self.index += 1
            if token.text not in self.variables:
                raise UnknownIdentifier(
                    f"unknown identifier {token.text!r} at line {token.line}, column {token.column}",
                    module='cli')
            return self.variables[token.text]
        if self._accept('('):
            value = self.expr()
            if not self._accept(')'):
                raise self._error("expected ')'")
            return value
        if token.kind == 'end':
            raise self._error("unexpected end of input")
        raise self._error(f"unexpected {token.text!r}")


def parse_expression(text: str, variables: Sequence[Symbol]):
    """Parse into an expanded sympy expression over the given variables."""
    return expand(_Parser(text, variables).parse())


def parse_polynomial(text: str, variables: Sequence) -> Poly:
    """
    Parse a polynomial over Q in the declared variable order.

    Raises:
        ExpressionSyntaxError: the text does not follow the grammar
        UnknownIdentifier: an identifier is not a declared variable
    """
    symbols = [v if isinstance(v, Symbol) else Symbol(str(v)) for v in variables]
    return make_poly(parse_expression(text, symbols), symbols)


def print_polynomial(p: Poly) -> str:
    """Text form that parses back to the same polynomial."""
    return str(p.as_expr()).replace('**', '^')
