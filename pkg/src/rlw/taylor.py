"""Taylor expansion of algebraic terms, truncated by resource-term size."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .errors import NoFractions, NotPure
from .scalars import RAT, Scalar, Semiring
from .syntax import (
    App, Bag, Bound, FinSum, Lam, Node, Plus, Scale, Var, Zero,
)


@dataclass(frozen=True)
class TruncationBound:
    max_size: int
    max_mono_depth: int | None = None

    def __post_init__(self):
        if self.max_size < 1:
            raise ValueError("max_size must be at least 1")


def _bound(b) -> TruncationBound:
    return b if isinstance(b, TruncationBound) else TruncationBound(int(b))


def _need_fractions(s: Semiring):
    if not s.has_fractions:
        raise NoFractions(f"Taylor coefficients need fractions; {s.name} has none")


def prom_coeff(tau: FinSum, mono: Bag) -> Scalar:
    """Coefficient of a monomial in the promotion of a sum of terms."""
    s = tau.semiring
    _need_fractions(s)
    out = s.one
    for u, m in mono.grouped():
        out = s.mul(out, s.mul(s.power(tau[u], m), s.inv(factorial(m))))
    return out


class _Coefficients:
    """Memoized T(M)_s on pairs of subterms.

    M and s are traversed in lockstep, so their loose de Bruijn indices line up
    and no binder needs opening.
    """

    def __init__(self, s: Semiring):
        _need_fractions(s)
        self.s = s
        self.memo: dict = {}

    def __call__(self, m: Node, t: Node) -> Scalar:
        key = (m, t)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = self._compute(m, t)
        return hit

    def _compute(self, m: Node, t: Node) -> Scalar:
        s = self.s
        if isinstance(m, (Var, Bound)):
            return s.one if m == t else s.zero
        if isinstance(m, Lam):
            return self(m.body, t.body) if isinstance(t, Lam) else s.zero
        if isinstance(m, App):
            if not (isinstance(t, App) and isinstance(t.arg, Bag)):
                return s.zero
            head = self(m.fun, t.fun)
            if s.is_zero(head):
                return head
            return s.mul(head, self.promoted(m.arg, t.arg))
        if isinstance(m, Zero):
            return s.zero
        if isinstance(m, Scale):
            return s.mul(m.coeff, self(m.term, t))
        if isinstance(m, Plus):
            return s.add(self(m.left, t), self(m.right, t))
        raise TypeError(f"not an algebraic term: {m!r}")

    def promoted(self, m: Node, mono: Bag) -> Scalar:
        s = self.s
        out = s.one
        for u, k in mono.grouped():
            c = self(m, u)
            if s.is_zero(c):
                return s.zero
            out = s.mul(out, s.mul(s.power(c, k), s.inv(factorial(k))))
        return out


def taylor_coeff(m: Node, t: Node, semiring: Semiring = RAT) -> Scalar:
    """Exact coefficient of the resource term t in the Taylor expansion of m."""
    return _Coefficients(semiring)(m, t)


class _Support:
    def __init__(self):
        self.memo: dict = {}

    def __call__(self, m: Node, n: int, d: int | None) -> frozenset:
        if n < 1:
            return frozenset()
        key = (m, n, d)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = frozenset(self._compute(m, n, d))
        return hit

    def _compute(self, m: Node, n: int, d: int | None):
        if isinstance(m, (Var, Bound)):
            return {m}
        if isinstance(m, Lam):
            return {Lam(b, m.hint) for b in self(m.body, n - 1, d)}
        if isinstance(m, App):
            if d is not None and d < 1:
                return set()
            heads = self(m.fun, n - 1, d)
            if not heads:
                return set()
            inner = None if d is None else d - 1
            pool = sorted(self(m.arg, n - 2, inner), key=lambda u: (u.size, u.key))
            out = set()
            for h in heads:
                for items in _multisets(pool, n - 1 - h.size):
                    out.add(App(h, Bag(items)))
            return out
        if isinstance(m, Zero):
            return set()
        if isinstance(m, Scale):
            return set(self(m.term, n, d))
        if isinstance(m, Plus):
            return set(self(m.left, n, d)) | set(self(m.right, n, d))
        raise TypeError(f"not an algebraic term: {m!r}")


def _multisets(pool: list, budget: int, start: int = 0):
    """Multisets over pool (sorted by size) whose total size fits the budget."""
    yield ()
    for i in range(start, len(pool)):
        u = pool[i]
        if u.size > budget:
            break
        for rest in _multisets(pool, budget - u.size, i):
            yield (u,) + rest


def taylor_support(m: Node, bound) -> set:
    """Resource terms of the Taylor support of m within the bound."""
    b = _bound(bound)
    return set(_Support()(m, b.max_size, b.max_mono_depth))


def taylor_truncated(m: Node, bound, semiring: Semiring = RAT) -> FinSum:
    coeff = _Coefficients(semiring)
    return FinSum(semiring, [(t, coeff(m, t)) for t in taylor_support(m, bound)])


def er_multiplicity(t: Node) -> int:
    """Integer m(t) such that a pure term's Taylor coefficient at t is 1/m(t)."""
    if isinstance(t, (Var, Bound)):
        return 1
    if isinstance(t, Lam):
        return er_multiplicity(t.body)
    if isinstance(t, App):
        return er_multiplicity(t.fun) * er_multiplicity(t.arg)
    if isinstance(t, Bag):
        out = 1
        for u, k in t.grouped():
            out *= factorial(k) * er_multiplicity(u) ** k
        return out
    raise TypeError(f"not a resource expression: {t!r}")


def linear_skeleton(m: Node) -> Node:
    """The resource term using every argument exactly once."""
    if isinstance(m, (Var, Bound)):
        return m
    if isinstance(m, Lam):
        return Lam(linear_skeleton(m.body), m.hint)
    if isinstance(m, App) and not isinstance(m.arg, Bag):
        return App(linear_skeleton(m.fun), Bag((linear_skeleton(m.arg),)))
    raise NotPure(f"{type(m).__name__} is not part of a pure lambda-term")
