"""Rational expressions: tokenizer, recursive-descent parser and AST.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' exponent)?
    base   := integer | ident | '(' expr ')'
    exponent := ['-'] integer | '(' ['-'] integer ')'

Rational constants are written ``p/q``; they parse as a division of two
integers and fold to a single rational when evaluated.  Unary minus is an
extension over the bare grammar so that ``-1/8`` can be written directly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .errors import ExprSyntaxError, SeriesZeroDivision, UnknownVariable

__all__ = [
    "Num", "Var", "Neg", "Add", "Sub", "Mul", "Div", "Pow",
    "Expr", "parse_expr", "variables", "evaluate", "check_variables",
]


@dataclass(frozen=True)
class Num:
    value: Fraction

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Neg:
    operand: "Expr"

    def __str__(self):
        return f"-({self.operand})"


@dataclass(frozen=True)
class _Binary:
    left: "Expr"
    right: "Expr"
    symbol = "?"

    def __str__(self):
        return f"({self.left} {self.symbol} {self.right})"


class Add(_Binary):
    symbol = "+"


class Sub(_Binary):
    symbol = "-"


class Mul(_Binary):
    symbol = "*"


class Div(_Binary):
    symbol = "/"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int

    def __str__(self):
        return f"({self.base})^({self.exponent})"


Expr = Union[Num, Var, Neg, Add, Sub, Mul, Div, Pow]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2):
            tokens.append(("ident", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExprSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self):
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.factor())
        node = self.base()
        if self.peek()[0] == "^":
            self.take()
            node = Pow(node, self.exponent())
        return node

    def exponent(self) -> int:
        if self.peek()[0] == "(":
            self.take()
            k = self.signed_int()
            self.take(")")
            return k
        return self.signed_int()

    def signed_int(self) -> int:
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        tok = self.peek()
        if tok[0] != "int":
            raise ExprSyntaxError("exponent must be an integer", tok[2])
        self.take()
        return sign * int(tok[1])

    def base(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return Num(Fraction(int(tok[1])))
        if tok[0] == "ident":
            self.take()
            return Var(tok[1])
        if tok[0] == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ExprSyntaxError(f"unexpected {what}", tok[2])


def parse_expr(text: str) -> Expr:
    """Parse ``text`` into an AST.  Division by zero is not detected here."""
    p = _Parser(text)
    node = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ExprSyntaxError(f"unexpected {tok[1]!r}", tok[2])
    return node


def variables(node: Expr) -> set:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Num):
        return set()
    if isinstance(node, Neg):
        return variables(node.operand)
    if isinstance(node, Pow):
        return variables(node.base)
    return variables(node.left) | variables(node.right)


def evaluate(node: Expr, lookup: Callable, constant: Callable, invert: Callable | None = None):
    """Fold ``node`` bottom-up.

    ``lookup(name)`` supplies variable values and ``constant(q)`` lifts a
    rational into the target ring.  Values must support + - * unary minus and
    ``**`` with a non-negative integer; ``invert`` (default ``1 / v``) handles
    division and negative powers.  A zero divisor raises SeriesZeroDivision
    naming the offending subtree.
    """
    if invert is None:
        invert = _reciprocal
    if isinstance(node, Num):
        return constant(node.value)
    if isinstance(node, Var):
        return lookup(node.name)
    if isinstance(node, Neg):
        return -evaluate(node.operand, lookup, constant, invert)
    if isinstance(node, Pow):
        base = evaluate(node.base, lookup, constant, invert)
        if node.exponent >= 0:
            return base ** node.exponent
        try:
            return invert(base) ** (-node.exponent)
        except ZeroDivisionError as exc:
            raise SeriesZeroDivision(f"negative power of zero subexpression {node.base}: {exc}") from exc
    left = evaluate(node.left, lookup, constant, invert)
    right = evaluate(node.right, lookup, constant, invert)
    if isinstance(node, Add):
        return left + right
    if isinstance(node, Sub):
        return left - right
    if isinstance(node, Mul):
        return left * right
    try:
        return left * invert(right)
    except ZeroDivisionError as exc:
        raise SeriesZeroDivision(f"division by zero subexpression {node.right}: {exc}") from exc


def _reciprocal(v):
    return 1 / v


def check_variables(node: Expr, declared) -> None:
    unknown = variables(node) - set(declared)
    if unknown:
        raise UnknownVariable(f"undeclared variable(s): {', '.join(sorted(unknown))}")
