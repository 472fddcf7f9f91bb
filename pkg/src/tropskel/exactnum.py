"""Exact rationals and truncated Puiseux series.

Everything downstream consumes valuations only, so a field element is kept
as a finite list of ``(exponent, coefficient)`` pairs over Q together with a
truncation order.  ``val`` of such an element is its smallest exponent.
p-adic inputs are modelled by reading ``p`` as ``t``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import DuplicatePoint, InputError, PrecisionLoss

Rat = Fraction


@functools.total_ordering
class _Infinity:
    """+infinity for valuations; compares above every rational."""

    _instance: "_Infinity | None" = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __eq__(self, other) -> bool:
        return other is self

    def __lt__(self, other) -> bool:
        return False

    def __gt__(self, other) -> bool:
        return other is not self

    def __hash__(self) -> int:
        return hash("tropskel.INF")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
Valuation = Union[Fraction, _Infinity]


def rat(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as exc:
            raise InputError(f"not a rational literal: {value!r}") from exc
    raise InputError(f"not a rational: {value!r} (floats are not accepted)")


def fmt_rat(q: Fraction) -> str:
    """Serialize as ``"num/den"``, denominators included even when 1."""
    q = rat(q)
    return f"{q.numerator}/{q.denominator}"


def fmt_val(v: Valuation) -> str:
    return "inf" if v is INF else fmt_rat(v)


def parse_val(s) -> Valuation:
    if isinstance(s, str) and s.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    return rat(s)


@dataclass(frozen=True)
class PuiseuxElement:
    """Finite sum of ``c * t^q`` plus an optional ``O(t^k)`` tail.

    ``terms`` is strictly increasing in exponent with nonzero coefficients, and
    every exponent lies below ``truncation``.  Build instances through
    :meth:`from_terms`, :meth:`monomial` or :func:`parse_puiseux`.
    """

    terms: tuple[tuple[Fraction, Fraction], ...] = ()
    truncation: Valuation = INF

    def __post_init__(self):
        prev = None
        for exp, coeff in self.terms:
            if coeff == 0:
                raise InputError("zero coefficient stored in PuiseuxElement")
            if prev is not None and exp <= prev:
                raise InputError("PuiseuxElement terms must be strictly increasing")
            if not exp < self.truncation:
                raise InputError("term exponent at or beyond truncation order")
            prev = exp

    @classmethod
    def from_terms(
        cls,
        terms: Mapping | Iterable[tuple[object, object]],
        truncation: Valuation | object = INF,
    ) -> "PuiseuxElement":
        trunc = truncation if truncation is INF else rat(truncation)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, Fraction] = {}
        for exp, coeff in items:
            e, c = rat(exp), rat(coeff)
            acc[e] = acc.get(e, Fraction(0)) + c
        kept = tuple(
            (e, c) for e, c in sorted(acc.items()) if c != 0 and e < trunc
        )
        return cls(kept, trunc)

    @classmethod
    def monomial(cls, coeff=1, exponent=0) -> "PuiseuxElement":
        return cls.from_terms([(exponent, coeff)])

    @classmethod
    def zero(cls) -> "PuiseuxElement":
        return cls((), INF)

    @classmethod
    def big_o(cls, order) -> "PuiseuxElement":
        return cls((), rat(order))

    def is_exact(self) -> bool:
        return self.truncation is INF

    def is_zero(self) -> bool:
        """True only for the exact zero element."""
        return not self.terms and self.truncation is INF

    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and self.truncation is INF

    def val(self) -> Valuation:
        return val(self)

    def __add__(self, other: "PuiseuxElement") -> "PuiseuxElement":
        other = _coerce(other)
        trunc = min(self.truncation, other.truncation)
        return PuiseuxElement.from_terms(self.terms + other.terms, trunc)

    __radd__ = __add__

    def __neg__(self) -> "PuiseuxElement":
        return PuiseuxElement(tuple((e, -c) for e, c in self.terms), self.truncation)

    def __sub__(self, other: "PuiseuxElement") -> "PuiseuxElement":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "PuiseuxElement":
        return _coerce(other) - self

    def __mul__(self, other) -> "PuiseuxElement":
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return PuiseuxElement.zero()
        # a tail O(t^k) times a series with leading exponent e is O(t^(k+e))
        trunc = min(
            self.truncation + _lead(other),
            other.truncation + _lead(self),
        )
        prods = [
            (e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms
        ]
        return PuiseuxElement.from_terms(prods, trunc)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_puiseux(self)


def _lead(x: PuiseuxElement) -> Valuation:
    if x.terms:
        return x.terms[0][0]
    return x.truncation


def _coerce(x) -> PuiseuxElement:
    if isinstance(x, PuiseuxElement):
        return x
    if isinstance(x, str):
        return parse_puiseux(x)
    return PuiseuxElement.monomial(rat(x), 0)


def val(x: PuiseuxElement) -> Valuation:
    """Smallest exponent present; ``INF`` for the exact zero."""
    if x.terms:
        return x.terms[0][0]
    if x.truncation is INF:
        return INF
    raise PrecisionLoss(f"valuation undetermined: element is O(t^{x.truncation})")


def sub(x: PuiseuxElement, y: PuiseuxElement) -> PuiseuxElement:
    """``x - y`` with a hard failure when the result's valuation is unknown."""
    diff = _coerce(x) - _coerce(y)
    if not diff.terms and diff.truncation is not INF:
        raise PrecisionLoss(
            f"difference of {x} and {y} vanishes below truncation order {diff.truncation}"
        )
    return diff


def pairwise_valuations(points: Sequence[PuiseuxElement]) -> list[list[Valuation]]:
    """Matrix of ``val(points[i] - points[j])`` with ``INF`` on the diagonal."""
    pts = [_coerce(p) for p in points]
    n = len(pts)
    out: list[list[Valuation]] = [[INF] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = sub(pts[i], pts[j])
            if d.is_zero():
                raise DuplicatePoint(f"points {i} and {j} are equal: {pts[i]}")
            out[i][j] = out[j][i] = val(d)
    return out


def is_ultrametric(matrix: Sequence[Sequence[Valuation]]) -> bool:
    n = len(matrix)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if matrix[i][j] < min(matrix[i][k], matrix[k][j]):
                    return False
    return True


def _fmt_exponent(e: Fraction) -> str:
    if e.denominator == 1:
        return f"t^{e.numerator}" if e >= 0 else f"t^({e.numerator})"
    return f"t^({e.numerator}/{e.denominator})"


def _fmt_term(e: Fraction, c: Fraction) -> str:
    mag = abs(c)
    if e == 0:
        return str(mag)
    tp = "t" if e == 1 else _fmt_exponent(e)
    if mag == 1:
        return tp
    coeff = str(mag) if mag.denominator == 1 else f"({mag})"
    return f"{coeff}*{tp}"


def format_puiseux(x: PuiseuxElement) -> str:
    """Render in the literal syntax accepted by :func:`parse_puiseux`."""
    parts: list[str] = []
    for e, c in x.terms:
        body = _fmt_term(e, c)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    if x.truncation is not INF:
        tail = f"O({_fmt_exponent(x.truncation) if x.truncation != 1 else 't'})"
        parts.append(f"+ {tail}" if parts else tail)
    return " ".join(parts) if parts else "0"


def parse_puiseux(text: str) -> PuiseuxElement:
    """Parse ``"1 - t^2 + 3*t^(5/2) + O(t^4)"``; ``p`` is accepted for ``t``."""
    from ._parse import parse_expression

    poly = parse_expression(text, variables=())
    if set(poly) - {()}:
        raise InputError(f"not a series literal: {text!r}")
    return poly.get((), PuiseuxElement.zero())
