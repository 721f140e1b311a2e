"""Derivatives, multilinear substitution and substitution of finite sums.

Internally results are dicts mapping expressions to natural multiplicities;
the public functions embed them into a semiring as ``FinSum`` values.
Monomials being substituted are handled as grouped multisets
``((u1, m1), (u2, m2), ...)`` so identical elements are distributed with
binomial weights instead of being enumerated one permutation at a time.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterator

from .scalars import Semiring
from .syntax import (
    App, Bag, FinSum, Lam, Node, Var, add_counts, degree, fresh_name, linear,
    rename_free,
)

Grouped = tuple  # tuple of (term, multiplicity) pairs, sorted, multiplicities > 0


def group(items) -> Grouped:
    items = items.items if isinstance(items, Bag) else items
    return Bag(items).grouped()


def _total(ms: Grouped) -> int:
    return sum(m for _, m in ms)


def _choose(ms: Grouped, k: int) -> Iterator[tuple[Grouped, Grouped, int]]:
    """Sub-multisets of size k: (chosen, rest, number of position subsets)."""
    if k == 0:
        yield (), ms, 1
        return
    if not ms or _total(ms) < k:
        return
    (u, m), tail = ms[0], ms[1:]
    for j in range(min(m, k), -1, -1):
        for chosen, rest, c in _choose(tail, k - j):
            yield (((u, j),) + chosen if j else chosen,
                   ((u, m - j),) + rest if m - j else rest,
                   c * comb(m, j))


def _pdiff(e: Node, x: str, u: Node) -> dict:
    if x not in e.fv:
        return {}
    if isinstance(e, Var):
        return {u: 1}
    if isinstance(e, Lam):
        return {Lam(r, e.hint): c for r, c in _pdiff(e.body, x, u).items()}
    if isinstance(e, App):
        acc: dict = {}
        for r, c in _pdiff(e.fun, x, u).items():
            add_counts(acc, App(r, e.arg), c)
        for r, c in _pdiff(e.arg, x, u).items():
            add_counts(acc, App(e.fun, r), c)
        return acc
    if isinstance(e, Bag):
        acc = {}
        items = e.items
        for i, item in enumerate(items):
            for r, c in _pdiff(item, x, u).items():
                add_counts(acc, Bag(items[:i] + (r,) + items[i + 1:]), c)
        return acc
    return {}


def _distribute(e: Node, x: str, ms: Grouped, exact: bool) -> dict:
    """Shared recursion of the iterated derivative (exact=False) and lsubst."""
    n = _total(ms)
    deg = degree(x, e)
    if n > deg or (exact and n != deg):
        return {}
    if n == 0:
        return {e: 1}
    if isinstance(e, Var):
        return {ms[0][0]: 1} if n == 1 else {}
    if isinstance(e, Lam):
        return {Lam(r, e.hint): c for r, c in _cached(e.body, x, ms, exact).items()}
    if isinstance(e, App):
        dfun, darg = degree(x, e.fun), degree(x, e.arg)
        if exact:
            sizes = [dfun]
        else:
            sizes = range(max(0, n - darg), min(n, dfun) + 1)
        acc: dict = {}
        for k in sizes:
            for chosen, rest, c in _choose(ms, k):
                left = _cached(e.fun, x, chosen, exact)
                if not left:
                    continue
                right = _cached(e.arg, x, rest, exact)
                for r1, c1 in left.items():
                    for r2, c2 in right.items():
                        add_counts(acc, App(r1, r2), c * c1 * c2)
        return acc
    if isinstance(e, Bag):
        partial: dict = {((), ms): 1}
        for item in e.items:
            d = degree(x, item)
            sizes = [d] if exact else range(0, d + 1)
            step: dict = {}
            for (done, remaining), c in partial.items():
                for k in sizes:
                    for chosen, rest, c0 in _choose(remaining, k):
                        for r, c1 in _cached(item, x, chosen, exact).items():
                            add_counts(step, (done + (r,), rest), c * c0 * c1)
            partial = step
        acc = {}
        for (done, remaining), c in partial.items():
            if not remaining:
                add_counts(acc, Bag(done), c)
        return acc
    return {}


@lru_cache(maxsize=200_000)
def _cached(e: Node, x: str, ms: Grouped, exact: bool) -> dict:
    return _distribute(e, x, ms, exact)


def _avoiding(e: Node, x: str, ms: Grouped, exact: bool) -> dict:
    """Rename x through a fresh variable when it is free in the substituted terms."""
    if any(x in u.fv for u, _ in ms):
        y = fresh_name()
        raw = _cached(rename_free(e, x, y), y, ms, exact)
        out: dict = {}
        for r, c in raw.items():
            add_counts(out, rename_free(r, y, x), c)
        return out
    return _cached(e, x, ms, exact)


def lsubst_counts(e: Node, x: str, items) -> dict:
    return _avoiding(e, x, group(items), True)


def npdiff_counts(e: Node, x: str, items) -> dict:
    return _avoiding(e, x, group(items), False)


def pdiff(e, x: str, u: Node, semiring: Semiring | None = None) -> FinSum:
    """Partial derivative of e along x in the direction u."""
    return linear(lambda t: _pdiff(t, x, u), e, semiring)


def npdiff(e, x: str, items, semiring: Semiring | None = None) -> FinSum:
    """Iterated partial derivative of e along x in the directions of a monomial."""
    return linear(lambda t: npdiff_counts(t, x, items), e, semiring)


def lsubst(e, x: str, items, semiring: Semiring | None = None) -> FinSum:
    """Multilinear substitution of a monomial for the occurrences of x."""
    return linear(lambda t: lsubst_counts(t, x, items), e, semiring)


def lsubst_sums(eps: FinSum, x: str, monos: FinSum) -> FinSum:
    """Bilinear extension of lsubst to a sum of expressions and a sum of monomials."""
    s = eps.semiring
    out = []
    for e, a in eps.items():
        for m, b in monos.items():
            ab = s.mul(a, b)
            out.extend((r, s.mul(ab, s.embed(c))) for r, c in lsubst_counts(e, x, m).items())
    return FinSum(s, out)


def _subst(e: Node, x: str, sigma: dict, s: Semiring) -> dict:
    if x not in e.fv:
        return {e: s.one}
    if isinstance(e, Var):
        return dict(sigma)
    if isinstance(e, Lam):
        return {Lam(r, e.hint): c for r, c in _subst(e.body, x, sigma, s).items()}
    if isinstance(e, App):
        return _product([_subst(e.fun, x, sigma, s), _subst(e.arg, x, sigma, s)], s,
                        lambda parts: App(*parts))
    if isinstance(e, Bag):
        return _product([_subst(i, x, sigma, s) for i in e.items], s, lambda parts: Bag(parts))
    return {e: s.one}


def _product(factors: list[dict], s: Semiring, build) -> dict:
    partial: list = [((), s.one)]
    for f in factors:
        partial = [(done + (r,), s.mul(c, c1)) for done, c in partial for r, c1 in f.items()]
    acc: dict = {}
    for done, c in partial:
        key = build(done)
        acc[key] = s.add(acc[key], c) if key in acc else c
    return acc


def subst_sum(e, x: str, sigma: FinSum) -> FinSum:
    """Substitution of a finite sum of terms for x, expanded multilinearly."""
    s = sigma.semiring
    table = sigma.as_dict()
    if isinstance(e, FinSum):
        out = []
        for t, a in e.items():
            out.extend((r, s.mul(a, c)) for r, c in _subst(t, x, table, s).items())
        return FinSum(s, out)
    return FinSum(s, _subst(e, x, table, s))
