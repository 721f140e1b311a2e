"""Seeded random generation of resource expressions and algebraic terms."""

from __future__ import annotations

import random
from fractions import Fraction

from .scalars import RAT, Semiring
from .syntax import App, Bag, Bound, Lam, Node, Plus, Scale, Var, ZERO

NAMES = ("x", "y", "z", "w", "v", "u")
BINDERS = "abcdefgh"


def _hint(depth: int) -> str:
    return BINDERS[depth % len(BINDERS)]


class _Generator:
    def __init__(self, kind: str, names, rng: random.Random, semiring: Semiring):
        if kind not in ("resource", "algebraic", "pure"):
            raise ValueError(f"unknown kind {kind!r}")
        self.kind = kind
        self.names = list(names)
        self.rng = rng
        self.semiring = semiring

    def variable(self, depth: int) -> Node:
        r = self.rng
        if depth and (not self.names or r.random() < 0.6):
            return Bound(r.randrange(depth))
        return Var(r.choice(self.names))

    def term(self, n: int, depth: int = 0) -> Node:
        r = self.rng
        if n <= 1:
            if self.kind == "algebraic" and r.random() < 0.15:
                return ZERO
            return self.variable(depth)
        if self.kind == "resource":
            return self.resource(n, depth)
        choices = ["lam"]
        if n >= 3:
            choices += ["app", "app"]
        if self.kind == "algebraic":
            choices += ["scale"] + (["plus"] if n >= 3 else [])
        pick = r.choice(choices)
        if pick == "lam":
            return Lam(self.term(n - 1, depth + 1), _hint(depth))
        if pick == "scale":
            return Scale(self.scalar(), self.term(n - 1, depth))
        a = r.randint(1, n - 2)
        if pick == "plus":
            return Plus(self.term(a, depth), self.term(n - 1 - a, depth))
        return App(self.term(a, depth), self.term(n - 1 - a, depth))

    def resource(self, n: int, depth: int) -> Node:
        r = self.rng
        if r.random() < 0.3:
            return Lam(self.term(n - 1, depth + 1), _hint(depth))
        head = r.randint(1, n - 1)
        if head >= 2 and r.random() < 0.6:
            fun = Lam(self.term(head - 1, depth + 1), _hint(depth))  # favour redexes
        else:
            fun = self.term(head, depth)
        return App(fun, self.monomial(n - 1 - head, depth))

    def monomial(self, n: int, depth: int = 0) -> Bag:
        items = []
        while n > 0:
            k = self.rng.randint(1, n)
            items.append(self.term(k, depth))
            n -= k
        return Bag(items)

    def scalar(self):
        r = self.rng
        name = self.semiring.name
        if name == "bool":
            return r.randint(0, 1)
        if name == "nat":
            return r.randint(0, 3)
        if name == "int":
            return r.randint(-3, 3)
        value = Fraction(r.randint(-3 if self.semiring.is_ring else 0, 3), r.randint(1, 3))
        return value


def gen_random(kind: str, size: int, vars: int = 2, seed: int = 0,
               semiring: Semiring = RAT, names=None) -> Node:
    """A random value of exactly the given size, reproducible from the seed.

    ``kind`` is ``resource``, ``algebraic`` or ``pure``; free variables come
    from the first ``vars`` standard names unless ``names`` is given.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    pool = list(names) if names is not None else list(NAMES[:vars])
    return _Generator(kind, pool, rng, semiring).term(size)


def gen_monomial(size: int, rng: random.Random, names, count: int | None = None) -> Bag:
    """A random monomial; with ``count`` it has exactly that many elements of size ≤ size."""
    g = _Generator("resource", names, rng, RAT)
    if count is None:
        return g.monomial(size)
    return Bag(g.term(rng.randint(1, max(1, size))) for _ in range(count))
