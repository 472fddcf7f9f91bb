"""Recursive-descent parser for series and polynomial literals.

A parsed expression is a dict mapping an exponent tuple (one entry per
polynomial variable) to a PuiseuxElement coefficient in ``t``.  Series
literals are the special case with no polynomial variables.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputError
from .exactnum import PuiseuxElement

Poly = dict[tuple[int, ...], PuiseuxElement]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(.))")
SERIES_NAMES = ("t", "p")


def _tokenize(text: str) -> list[str]:
    tokens = []
    for num, name, op in _TOKEN.findall(text):
        if num:
            tokens.append(num)
        elif name:
            tokens.append(name)
        elif op.strip():
            if op not in "+-*/^()":
                raise InputError(f"unexpected character {op!r} in {text!r}")
            tokens.append(op)
    return tokens


def _p_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for k, v in b.items():
        out[k] = out[k] + v if k in out else v
    return {k: v for k, v in out.items() if not v.is_zero()}


def _p_neg(a: Poly) -> Poly:
    return {k: -v for k, v in a.items()}


def _p_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            prod = va * vb
            out[k] = out[k] + prod if k in out else prod
    return {k: v for k, v in out.items() if not v.is_zero()}


def _as_monomial(a: Poly, what: str) -> tuple[tuple[int, ...], Fraction, Fraction]:
    if len(a) != 1:
        raise InputError(f"{what} must be a single monomial")
    (k, v), = a.items()
    if not v.is_monomial():
        raise InputError(f"{what} must be a single monomial")
    exp, coeff = v.terms[0]
    return k, exp, coeff


def _p_div(a: Poly, b: Poly) -> Poly:
    k, exp, coeff = _as_monomial(b, "divisor")
    inv = {tuple(-x for x in k): PuiseuxElement.monomial(1 / coeff, -exp)}
    return _p_mul(a, inv)


def _as_constant(a: Poly) -> Fraction:
    if not a:
        return Fraction(0)
    k, exp, coeff = _as_monomial(a, "exponent")
    if any(k) or exp != 0:
        raise InputError("exponent must be a rational constant")
    return coeff


def _p_pow(a: Poly, e: Fraction, zero_key: tuple[int, ...]) -> Poly:
    if e.denominator == 1 and e >= 0:
        out: Poly = {zero_key: PuiseuxElement.monomial(1)}
        for _ in range(e.numerator):
            out = _p_mul(out, a)
        return out
    k, exp, coeff = _as_monomial(a, "base of a fractional or negative power")
    if e.denominator != 1 and (any(k) or coeff != 1):
        raise InputError("only pure powers of t may carry fractional exponents")
    c = coeff ** e.numerator if e.denominator == 1 else Fraction(1)
    return {tuple(x * e.numerator for x in k): PuiseuxElement.monomial(c, exp * e)}


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.vars = variables
        self.zero_key = tuple(0 for _ in variables)

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise InputError(f"expected {expected or 'token'} at position {self.pos} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise InputError("empty expression")
        out = self.expr()
        if self.peek() is not None:
            raise InputError(f"trailing input {self.peek()!r} in {self.text!r}")
        return out

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = _p_neg(acc)
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            acc = _p_add(acc, rhs if op == "+" else _p_neg(rhs))
        return acc

    def term(self) -> Poly:
        acc = self.power()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                acc = _p_mul(acc, self.power())
            elif tok == "/":
                self.take()
                acc = _p_div(acc, self.power())
            elif tok is not None and (tok == "(" or tok.isalnum()):
                acc = _p_mul(acc, self.power())
            else:
                return acc

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            base = _p_pow(base, self.exponent(), self.zero_key)
        return base

    def exponent(self) -> Fraction:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        tok = self.peek()
        if tok == "(":
            self.take()
            value = _as_constant(self.expr())
            self.take(")")
        elif tok is not None and tok.isdigit():
            value = Fraction(int(self.take()))
        else:
            raise InputError(f"bad exponent in {self.text!r}")
        return sign * value

    def atom(self) -> Poly:
        tok = self.take()
        if tok.isdigit():
            return {self.zero_key: PuiseuxElement.monomial(int(tok), 0)}
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if tok == "O":
            self.take("(")
            k, exp, _ = _as_monomial(self.expr(), "O() argument")
            self.take(")")
            if any(k):
                raise InputError("O() takes a power of t")
            return {self.zero_key: PuiseuxElement.big_o(exp)}
        if tok in SERIES_NAMES:
            return {self.zero_key: PuiseuxElement.monomial(1, 1)}
        if tok in self.vars:
            key = tuple(1 if v == tok else 0 for v in self.vars)
            return {key: PuiseuxElement.monomial(1, 0)}
        raise InputError(f"unknown symbol {tok!r} in {self.text!r}")


def parse_expression(text: str, variables: tuple[str, ...] = ("x", "y")) -> Poly:
    poly = _Parser(text, variables).parse()
    return {k: v for k, v in poly.items() if not v.is_zero()}
