"""Resource reduction: one-step reducts, normal forms, and canonical parallel reducts."""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .calculus import lsubst_counts
from .errors import CapExceeded
from .scalars import NAT, Semiring
from .syntax import (
    App, Bag, FinSum, Lam, Node, add_counts, close, fresh_name, is_normal, linear,
    max_occ_depth, open_body, spine, apply_all,
)

DEFAULT_CAP = 10


def _fire(redex: App) -> dict:
    """Reduct of a locally closed redex (lambda applied to a monomial)."""
    z = fresh_name()
    return lsubst_counts(open_body(redex.fun, z), z, redex.arg)


def _under_binder(lam: Lam, f) -> dict:
    """Apply a counts-valued function to the opened body and rebind the results."""
    z = fresh_name()
    return {close(r, z, lam.hint): c for r, c in f(open_body(lam, z)).items()}


def _bag_product(parts: list[dict]) -> dict:
    acc: dict = {}
    for combo in product(*(list(p.items()) for p in parts)):
        c = 1
        for _, n in combo:
            c *= n
        add_counts(acc, Bag(r for r, _ in combo), c)
    return acc


def _app_product(funs: dict, args: dict) -> dict:
    acc: dict = {}
    for f, c1 in funs.items():
        for a, c2 in args.items():
            add_counts(acc, App(f, a), c1 * c2)
    return acc


# ---------------------------------------------------------------- one step

def _one_step(e: Node) -> list[tuple[tuple, dict]]:
    out = []
    if isinstance(e, Lam):
        z = fresh_name()
        for path, res in _one_step(open_body(e, z)):
            out.append(((0,) + path, {close(r, z, e.hint): c for r, c in res.items()}))
    elif isinstance(e, App):
        if isinstance(e.fun, Lam):
            out.append(((), _fire(e)))
        for path, res in _one_step(e.fun):
            out.append(((0,) + path, {App(r, e.arg): c for r, c in res.items()}))
        for path, res in _one_step(e.arg):
            out.append(((1,) + path, {App(e.fun, r): c for r, c in res.items()}))
    elif isinstance(e, Bag):
        items = e.items
        for i, item in enumerate(items):
            for path, res in _one_step(item):
                out.append(((i,) + path, {Bag(items[:i] + (r,) + items[i + 1:]): c
                                         for r, c in res.items()}))
    return out


def one_step_reducts(e: Node, semiring: Semiring = NAT) -> list[tuple[tuple, FinSum]]:
    """Every single redex firing: (path to the redex, resulting sum)."""
    return [(path, FinSum.from_counts(res, semiring)) for path, res in _one_step(e)]


# ---------------------------------------------------------------- normal form

@lru_cache(maxsize=200_000)
def nf_counts(e: Node) -> dict:
    """Normal form of a locally closed expression, innermost first."""
    if is_normal(e):
        return {e: 1}
    if isinstance(e, Lam):
        return _under_binder(e, nf_counts)
    if isinstance(e, Bag):
        return _bag_product([nf_counts(i) for i in e.items])
    funs = nf_counts(e.fun)
    args = nf_counts(e.arg)
    acc: dict = {}
    for f, c1 in funs.items():
        for a, c2 in args.items():
            if isinstance(f, Lam):
                for r, c3 in _fire(App(f, a)).items():
                    for n, c4 in nf_counts(r).items():
                        add_counts(acc, n, c1 * c2 * c3 * c4)
            else:
                add_counts(acc, App(f, a), c1 * c2)
    return acc


def nf(eps, semiring: Semiring | None = None) -> FinSum:
    return linear(nf_counts, eps, semiring)


def normal_restrict(eps: FinSum) -> FinSum:
    return FinSum(eps.semiring, [(e, c) for e, c in eps.items() if is_normal(e)])


def reachable_support(e: Node) -> set:
    seen = {e}
    todo = [e]
    while todo:
        cur = todo.pop()
        for _, res in _one_step(cur):
            for r in res:
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
    return seen


# ---------------------------------------------------------------- parallel reducts

def left_counts(e: Node) -> dict:
    if isinstance(e, Lam):
        return _under_binder(e, left_counts)
    if isinstance(e, Bag):
        return _bag_product([left_counts(i) for i in e.items])
    head, args = spine(e)
    if isinstance(head, Lam) and args:
        out: dict = {}
        for r, c in _fire(App(head, args[0])).items():
            add_counts(out, apply_all(r, args[1:]), c)
        return out
    acc = {head: 1}
    for a in args:
        acc = _app_product(acc, left_counts(a))
    return acc


def left_reduct(eps, semiring: Semiring | None = None) -> FinSum:
    """Fire the head redex of every spine."""
    return linear(left_counts, eps, semiring)


def _lsubst_sums(bodies: dict, z: str, bags: dict) -> dict:
    acc: dict = {}
    for s, c1 in bodies.items():
        for b, c2 in bags.items():
            for r, c3 in lsubst_counts(s, z, b).items():
                add_counts(acc, r, c1 * c2 * c3)
    return acc


def full_counts(e: Node) -> dict:
    if isinstance(e, Lam):
        return _under_binder(e, full_counts)
    if isinstance(e, Bag):
        return _bag_product([full_counts(i) for i in e.items])
    if isinstance(e, App):
        if isinstance(e.fun, Lam):
            z = fresh_name()
            return _lsubst_sums(full_counts(open_body(e.fun, z)), z, full_counts(e.arg))
        return _app_product(full_counts(e.fun), full_counts(e.arg))
    return {e: 1}


def full_reduct(eps, semiring: Semiring | None = None) -> FinSum:
    """Fire every redex at once."""
    return linear(full_counts, eps, semiring)


def fpbs_counts(d: int, e: Node) -> dict:
    if d == 0 or not isinstance(e, (Lam, App, Bag)):
        return {e: 1}
    if isinstance(e, Lam):
        return _under_binder(e, lambda b: fpbs_counts(d - 1, b))
    if isinstance(e, Bag):
        return _bag_product([fpbs_counts(d, i) for i in e.items])
    if isinstance(e.fun, Lam):
        z = fresh_name()
        body = open_body(e.fun, z)
        if max_occ_depth(z, body) <= d - 1:
            return _lsubst_sums(fpbs_counts(d - 1, body), z, fpbs_counts(d - 1, e.arg))
    return _app_product(fpbs_counts(d, e.fun), fpbs_counts(d - 1, e.arg))


def fpbs_reduct(d: int, eps, semiring: Semiring | None = None) -> FinSum:
    """Fire the redexes whose bound variable occurs at depth at most d - 1, level by level."""
    return linear(lambda e: fpbs_counts(d, e), eps, semiring)


def _freeze(counts: dict) -> frozenset:
    return frozenset(counts.items())


def _parallel(e: Node) -> set:
    if isinstance(e, Lam):
        z = fresh_name()
        return {_freeze({close(r, z, e.hint): c for r, c in dict(s).items()})
                for s in _parallel(open_body(e, z))}
    if isinstance(e, Bag):
        options = [_parallel(i) for i in e.items]
        return {_freeze(_bag_product([dict(s) for s in combo])) for combo in product(*options)}
    if isinstance(e, App):
        out = set()
        args = _parallel(e.arg)
        for f in _parallel(e.fun):
            for a in args:
                out.add(_freeze(_app_product(dict(f), dict(a))))
        if isinstance(e.fun, Lam):
            z = fresh_name()
            for body in _parallel(open_body(e.fun, z)):
                for a in args:
                    out.add(_freeze(_lsubst_sums(dict(body), z, dict(a))))
        return out
    return {_freeze({e: 1})}


def parallel_reducts(e: Node, cap: int = DEFAULT_CAP, semiring: Semiring = NAT) -> set:
    """All sums reachable from e by one parallel reduction step."""
    if e.size > cap:
        raise CapExceeded(f"size {e.size} exceeds the cap {cap}")
    return {FinSum.from_counts(dict(s), semiring) for s in _parallel(e)}


def parallel_reduct_counts(e: Node) -> list[dict]:
    """Parallel reducts as raw count dictionaries (no size guard)."""
    return [dict(s) for s in _parallel(e)]


def growth_bound(k: int, l: int, m: int) -> int:
    """B(k,0,0)=0, B(k,l+1,0)=B(k,l,k)+1, B(k,l,m+1)=4·B(k,l,m)."""
    b = 0
    for _ in range(l):
        b = b * 4 ** k + 1
    return b * 4 ** m
