"""Group expressions: symbolic products, powers and commutators of named elements.

Expressions are evaluated against any arithmetic that provides ``identity``,
``mul``, ``inv`` and ``power``; generator leaves are resolved by a callback.
They serve three purposes: definitions of pc generators in terms of earlier
ones, the word grammar of the command line, and symmetric words such as
``(x*y)^n*x``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Protocol, Sequence, TypeVar

from ..utils.errors import WordSyntaxError

T = TypeVar("T")


class Arithmetic(Protocol[T]):
    identity: T

    def mul(self, a: T, b: T) -> T: ...

    def inv(self, a: T) -> T: ...

    def power(self, a: T, n: int) -> T: ...


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class Sym:
    """A named leaf, resolved at evaluation time"""
    name: str


@dataclass(frozen=True)
class Mul:
    factors: tuple


@dataclass(frozen=True)
class Inv:
    arg: object


@dataclass(frozen=True)
class Pow:
    arg: object
    exponent: int


@dataclass(frozen=True)
class Comm:
    """Left-normed commutator [a, b] = a^-1 b^-1 a b"""
    left: object
    right: object


Expr = Gen | Sym | Mul | Inv | Pow | Comm


def word_expr(word: Sequence[tuple[int, int]]) -> Expr:
    return Mul(tuple(Pow(Gen(i), e) for i, e in word))


def left_normed(args: Sequence[Expr]) -> Expr:
    """[a1, a2, ..., an] = [[a1, a2], ..., an]"""
    result = args[0]
    for arg in args[1:]:
        result = Comm(result, arg)
    return result


def evaluate(expr: Expr, arith: Arithmetic[T], resolve: Callable[[Gen | Sym], T]) -> T:
    if isinstance(expr, (Gen, Sym)):
        return resolve(expr)
    if isinstance(expr, Mul):
        result = arith.identity
        for factor in expr.factors:
            result = arith.mul(result, evaluate(factor, arith, resolve))
        return result
    if isinstance(expr, Inv):
        return arith.inv(evaluate(expr.arg, arith, resolve))
    if isinstance(expr, Pow):
        return arith.power(evaluate(expr.arg, arith, resolve), expr.exponent)
    a = evaluate(expr.left, arith, resolve)
    b = evaluate(expr.right, arith, resolve)
    return arith.mul(arith.mul(arith.inv(a), arith.inv(b)), arith.mul(a, b))


_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[*^()\[\],]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise WordSyntaxError(f"unexpected character {text[pos]!r} at offset {pos} in {text!r}")
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
        pos = match.end()
    return tokens


class _WordParser:
    """word := factor ('*' factor)* ; factor := atom ('^' INT)* ;
    atom := NAME | '1' | '(' word ')' | '[' word ',' word (',' word)* ']'"""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, value: str | None = None) -> tuple[str, str]:
        token = self.peek()
        if token is None or (value is not None and token[1] != value):
            raise WordSyntaxError(f"expected {value or 'token'} in {self.text!r}")
        self.pos += 1
        return token

    def parse(self) -> Expr:
        expr = self.word()
        if self.peek() is not None:
            raise WordSyntaxError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return expr

    def word(self) -> Expr:
        factors = [self.factor()]
        while self.peek() == ("op", "*"):
            self.take("*")
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def factor(self) -> Expr:
        expr = self.atom()
        while self.peek() == ("op", "^"):
            self.take("^")
            kind, value = self.take()
            if kind != "int":
                raise WordSyntaxError(f"exponent must be an integer in {self.text!r}")
            expr = Pow(expr, int(value))
        return expr

    def atom(self) -> Expr:
        kind, value = self.take()
        if kind == "name":
            return Sym(value)
        if kind == "int" and value == "1":
            return Mul(())
        if value == "(":
            expr = self.word()
            self.take(")")
            return expr
        if value == "[":
            args = [self.word()]
            while self.peek() == ("op", ","):
                self.take(",")
                args.append(self.word())
            self.take("]")
            if len(args) < 2:
                raise WordSyntaxError(f"commutator needs two entries in {self.text!r}")
            return left_normed(args)
        raise WordSyntaxError(f"unexpected token {value!r} in {self.text!r}")


def parse_word(text: str) -> Expr:
    """Parse the command-line word grammar: names, ``*``, ``^INT`` and parentheses."""
    return _WordParser(text).parse()
