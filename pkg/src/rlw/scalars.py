"""Commutative semirings with exact arithmetic, plus additive splitting."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable

from .errors import MarginalMismatch, NoFractions, UnboundScalarLiteral

Scalar = Any

_LITERAL = re.compile(r"^([+-]?)(\d+)(?:/(\d+))?$")


@dataclass(frozen=True)
class Semiring:
    name: str
    zero: Scalar
    one: Scalar
    add: Callable[[Scalar, Scalar], Scalar] = field(repr=False)
    mul: Callable[[Scalar, Scalar], Scalar] = field(repr=False)
    zerosumfree: bool
    has_fractions: bool
    is_ring: bool
    coerce: Callable[[Fraction], Scalar] = field(repr=False)

    def eq(self, a: Scalar, b: Scalar) -> bool:
        return a == b

    def is_zero(self, a: Scalar) -> bool:
        return a == self.zero

    def sum(self, values) -> Scalar:
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def prod(self, values) -> Scalar:
        acc = self.one
        for v in values:
            acc = self.mul(acc, v)
        return acc

    def power(self, a: Scalar, n: int) -> Scalar:
        acc = self.one
        for _ in range(n):
            acc = self.mul(acc, a)
        return acc

    def embed(self, n: int) -> Scalar:
        return nat_embed(self, n)

    def inv(self, n: int) -> Scalar:
        return inv_nat(self, n)

    def neg(self, a: Scalar) -> Scalar:
        if not self.is_ring:
            raise ValueError(f"{self.name} has no additive inverses")
        return -a

    def parse(self, text: str) -> Scalar:
        m = _LITERAL.match(text.strip())
        if not m:
            raise UnboundScalarLiteral(f"not a scalar literal: {text!r}")
        sign, num, den = m.groups()
        if den is not None and int(den) == 0:
            raise UnboundScalarLiteral(f"zero denominator in {text!r}")
        value = Fraction(int(num), int(den) if den else 1)
        if sign == "-":
            value = -value
        return self.coerce(value, text)

    def format(self, a: Scalar) -> str:
        if isinstance(a, Fraction):
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(int(a))


def nat_embed(d: Semiring, n: int) -> Scalar:
    """Image of the natural number n under the unique morphism from N."""
    if n < 0:
        raise ValueError("nat_embed expects a natural number")
    if d.name == "bool":
        return 1 if n else 0
    if d.has_fractions:
        return Fraction(n)
    return n


def inv_nat(d: Semiring, n: int) -> Scalar:
    if n <= 0:
        raise ValueError("inv_nat expects a positive natural number")
    if not d.has_fractions:
        raise NoFractions(f"{d.name} has no inverse of {n}")
    if d.name == "bool":
        return 1
    return Fraction(1, n)


def _integral(nonneg):
    def coerce(value: Fraction, text=""):
        if value.denominator != 1 or (nonneg and value < 0):
            raise UnboundScalarLiteral(f"{text or value} is not a scalar of this semiring")
        return int(value)
    return coerce


def _rational(nonneg):
    def coerce(value: Fraction, text=""):
        if nonneg and value < 0:
            raise UnboundScalarLiteral(f"{text or value} is negative")
        return Fraction(value)
    return coerce


def _boolean(value: Fraction, text=""):
    if value not in (0, 1):
        raise UnboundScalarLiteral(f"{text or value} is not a boolean")
    return int(value)


def _plus(a, b):
    return a + b


def _times(a, b):
    return a * b


NAT = Semiring("nat", 0, 1, _plus, _times, True, False, False, _integral(True))
INT = Semiring("int", 0, 1, _plus, _times, False, False, True, _integral(False))
QPOS = Semiring("qpos", Fraction(0), Fraction(1), _plus, _times, True, True, False, _rational(True))
RAT = Semiring("rat", Fraction(0), Fraction(1), _plus, _times, False, True, True, _rational(False))
BOOL = Semiring("bool", 0, 1, lambda a, b: a | b, lambda a, b: a & b, True, True, False, _boolean)

SEMIRINGS = {s.name: s for s in (NAT, INT, QPOS, RAT, BOOL)}


def get_semiring(name: str) -> Semiring:
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise ValueError(f"unknown semiring {name!r}; choose from {sorted(SEMIRINGS)}") from None


def split2(d: Semiring, a1, a2, b1, b2):
    """A 2x2 matrix whose row sums are (a1, a2) and column sums are (b1, b2)."""
    if d.add(a1, a2) != d.add(b1, b2):
        raise MarginalMismatch(f"{a1}+{a2} differs from {b1}+{b2}")
    if d.name == "bool":
        # with max-addition, c_ij = a_i AND b_j meets every marginal
        return [[a1 & b1, a1 & b2], [a2 & b1, a2 & b2]]
    if d.is_ring:
        return [[b1, a1 - b1], [d.zero, a2]]
    # north-west corner
    c11 = min(a1, b1)
    c21 = b1 - c11
    return [[c11, a1 - c11], [c21, a2 - c21]]


def _transport(d: Semiring, p: list, q: list) -> list[list]:
    """Matrix with row sums p and column sums q, built only from split2."""
    if len(p) == 1:
        return [list(q)]
    if len(q) == 1:
        return [[v] for v in p]
    rest = d.sum(p[1:])
    first, second = _two_rows(d, p[0], rest, q)
    below = _transport(d, p[1:], second)
    return [first] + below


def _two_rows(d: Semiring, top, bottom, q: list) -> tuple[list, list]:
    if len(q) == 1:
        return [top], [bottom]
    c = split2(d, top, bottom, q[0], d.sum(q[1:]))
    first, second = _two_rows(d, c[0][1], c[1][1], q[1:])
    return [c[0][0]] + first, [c[1][0]] + second


def split_multi(d: Semiring, rows: list[list]) -> dict[tuple[int, ...], Scalar]:
    """Tensor over one index per row whose marginal along row i is rows[i].

    Keys are 0-based index tuples; every cell of the product index set is present.
    """
    if not rows or any(len(r) == 0 for r in rows):
        raise MarginalMismatch("splitting needs nonempty rows")
    total = d.sum(rows[0])
    for r in rows[1:]:
        if d.sum(r) != total:
            raise MarginalMismatch(f"row totals differ: {rows}")
    tensor = {(j,): v for j, v in enumerate(rows[0])}
    for row in rows[1:]:
        keys = sorted(tensor)
        matrix = _transport(d, [tensor[k] for k in keys], list(row))
        tensor = {k + (j,): matrix[i][j] for i, k in enumerate(keys) for j in range(len(row))}
    return tensor


def marginals_hold(d: Semiring, rows: list[list], tensor: dict) -> bool:
    shape = [range(len(r)) for r in rows]
    for i, row in enumerate(rows):
        for j, want in enumerate(row):
            got = d.sum(tensor[k] for k in product(*shape) if k[i] == j)
            if got != want:
                return False
    return True
