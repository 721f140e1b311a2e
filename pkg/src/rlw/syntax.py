"""Term representation shared by resource expressions and algebraic terms.

Terms are locally nameless: bound variables are de Bruijn indices (``Bound``),
free variables are names (``Var``).  Binder names survive only as rendering
hints that do not take part in equality, so alpha-equivalent terms are equal
and hash alike.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .scalars import RAT, Scalar, Semiring


class Node:
    __slots__ = ("_hash", "size", "height", "mono_depth", "level", "_key", "_fv")

    def _init(self, h, size, height, mono_depth, level):
        self._hash = h
        self.size = size
        self.height = height
        self.mono_depth = mono_depth
        self.level = level  # number of enclosing binders needed to close the term
        self._key = None
        self._fv = None

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._fields() == other._fields()

    def __ne__(self, other):
        return not self == other

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        from .parsing import render
        return f"<{type(self).__name__} {render(self)}>"

    @property
    def key(self):
        if self._key is None:
            self._key = self._make_key()
        return self._key

    @property
    def fv(self) -> frozenset:
        if self._fv is None:
            self._fv = frozenset().union(*(c.fv for c in self.children()))
        return self._fv


class Var(Node):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._init(hash(("var", name)), 1, 1, 0, 0)

    def _fields(self):
        return self.name

    def _make_key(self):
        return (0, 1, self.name)

    def children(self):
        return ()

    @property
    def fv(self):
        if self._fv is None:
            self._fv = frozenset((self.name,))
        return self._fv


class Bound(Node):
    __slots__ = ("index",)

    def __init__(self, index: int):
        self.index = index
        self._init(hash(("bound", index)), 1, 1, 0, index + 1)

    def _fields(self):
        return self.index

    def _make_key(self):
        return (0, 0, self.index)

    def children(self):
        return ()


class Lam(Node):
    __slots__ = ("body", "hint")

    def __init__(self, body: Node, hint: str = "x"):
        self.body = body
        self.hint = hint
        self._init(hash(("lam", body._hash)), 1 + body.size, 1 + body.height,
                   body.mono_depth, max(0, body.level - 1))

    def _fields(self):
        return self.body

    def _make_key(self):
        return (1, self.body.key)

    def children(self):
        return (self.body,)


class App(Node):
    """Application; the argument is a ``Bag`` for resource terms."""

    __slots__ = ("fun", "arg")

    def __init__(self, fun: Node, arg: Node):
        self.fun = fun
        self.arg = arg
        self._init(hash(("app", fun._hash, arg._hash)), 1 + fun.size + arg.size,
                   max(fun.height, 1 + arg.height), max(fun.mono_depth, arg.mono_depth),
                   max(fun.level, arg.level))

    def _fields(self):
        return (self.fun, self.arg)

    def _make_key(self):
        return (2, self.fun.key, self.arg.key)

    def children(self):
        return (self.fun, self.arg)


class Bag(Node):
    """Resource monomial: a multiset stored as a sorted tuple."""

    __slots__ = ("items",)

    def __init__(self, items: Iterable[Node] = (), *, presorted: bool = False):
        items = tuple(items) if presorted else tuple(sorted(items, key=_key_of))
        self.items = items
        self._init(hash(("bag",) + tuple(i._hash for i in items)),
                   sum(i.size for i in items),
                   max((i.height for i in items), default=0),
                   1 + max((i.mono_depth for i in items), default=0),
                   max((i.level for i in items), default=0))

    def _fields(self):
        return self.items

    def _make_key(self):
        return (3, tuple(i.key for i in self.items))

    def children(self):
        return self.items

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def grouped(self) -> tuple[tuple[Node, int], ...]:
        """Distinct elements with their multiplicities, in order."""
        return tuple((k, len(list(g))) for k, g in itertools.groupby(self.items))


class Zero(Node):
    __slots__ = ()

    def __init__(self):
        self._init(hash(("zero",)), 1, 1, 0, 0)

    def _fields(self):
        return ()

    def _make_key(self):
        return (4,)

    def children(self):
        return ()


class Scale(Node):
    __slots__ = ("coeff", "term")

    def __init__(self, coeff: Scalar, term: Node):
        self.coeff = coeff
        self.term = term
        self._init(hash(("scale", coeff, term._hash)), 1 + term.size, term.height,
                   term.mono_depth, term.level)

    def _fields(self):
        return (self.coeff, self.term)

    def _make_key(self):
        return (5, self.coeff, self.term.key)

    def children(self):
        return (self.term,)


class Plus(Node):
    __slots__ = ("left", "right")

    def __init__(self, left: Node, right: Node):
        self.left = left
        self.right = right
        self._init(hash(("plus", left._hash, right._hash)), 1 + left.size + right.size,
                   max(left.height, right.height), max(left.mono_depth, right.mono_depth),
                   max(left.level, right.level))

    def _fields(self):
        return (self.left, self.right)

    def _make_key(self):
        return (6, self.left.key, self.right.key)

    def children(self):
        return (self.left, self.right)


ZERO = Zero()


def _key_of(node: Node):
    return node.key


def compare_terms(a: Node, b: Node) -> int:
    """Total order on canonical expressions: -1, 0 or 1."""
    ka, kb = a.key, b.key
    return (ka > kb) - (ka < kb)


# ---------------------------------------------------------------- binders

_fresh_counter = itertools.count()


def fresh_name() -> str:
    """A variable name no parsed term can contain."""
    return f"%{next(_fresh_counter)}"


def instantiate(body: Node, value: Node, depth: int = 0) -> Node:
    """Replace the bound variable of depth ``depth`` by a locally closed ``value``."""
    if body.level <= depth:
        return body
    if isinstance(body, Bound):
        return value if body.index == depth else body
    if isinstance(body, Lam):
        return Lam(instantiate(body.body, value, depth + 1), body.hint)
    if isinstance(body, App):
        return App(instantiate(body.fun, value, depth), instantiate(body.arg, value, depth))
    if isinstance(body, Bag):
        return Bag(instantiate(i, value, depth) for i in body.items)
    if isinstance(body, Scale):
        return Scale(body.coeff, instantiate(body.term, value, depth))
    if isinstance(body, Plus):
        return Plus(instantiate(body.left, value, depth), instantiate(body.right, value, depth))
    return body


def open_body(lam: Lam, name: str) -> Node:
    return instantiate(lam.body, Var(name))


def abstract(term: Node, name: str, depth: int = 0) -> Node:
    """Turn free occurrences of ``name`` into the bound variable at ``depth``."""
    if name not in term.fv:
        return term
    if isinstance(term, Var):
        return Bound(depth)
    if isinstance(term, Lam):
        return Lam(abstract(term.body, name, depth + 1), term.hint)
    if isinstance(term, App):
        return App(abstract(term.fun, name, depth), abstract(term.arg, name, depth))
    if isinstance(term, Bag):
        return Bag(abstract(i, name, depth) for i in term.items)
    if isinstance(term, Scale):
        return Scale(term.coeff, abstract(term.term, name, depth))
    if isinstance(term, Plus):
        return Plus(abstract(term.left, name, depth), abstract(term.right, name, depth))
    return term


def close(term: Node, name: str, hint: str | None = None) -> Lam:
    return Lam(abstract(term, name), hint or _hint_for(name))


def _hint_for(name: str) -> str:
    return "x" if name.startswith("%") else name


def rename_free(term: Node, old: str, new: str) -> Node:
    return replace_free(term, old, Var(new))


def replace_free(term: Node, name: str, value: Node) -> Node:
    """Substitute the locally closed ``value`` for the free variable ``name``."""
    if name not in term.fv:
        return term
    if isinstance(term, Var):
        return value
    if isinstance(term, Lam):
        return Lam(replace_free(term.body, name, value), term.hint)
    if isinstance(term, App):
        return App(replace_free(term.fun, name, value), replace_free(term.arg, name, value))
    if isinstance(term, Bag):
        return Bag(replace_free(i, name, value) for i in term.items)
    if isinstance(term, Scale):
        return Scale(term.coeff, replace_free(term.term, name, value))
    if isinstance(term, Plus):
        return Plus(replace_free(term.left, name, value), replace_free(term.right, name, value))
    return term


def free_vars(e: Node) -> frozenset:
    return e.fv


def lam(name: str, body: Node) -> Lam:
    """Build the abstraction binding the free variable ``name`` of ``body``."""
    return close(body, name, name)


def bag(*items: Node) -> Bag:
    return Bag(items)


# ---------------------------------------------------------------- metrics

@dataclass(frozen=True)
class Metrics:
    size: int
    height: int
    mono_depth: int


@dataclass(frozen=True)
class OccInfo:
    count: int
    depths: frozenset


def metrics(e: Node) -> Metrics:
    return Metrics(e.size, e.height, e.mono_depth)


_occ_cache: dict = {}


def occ(x: str, e: Node) -> OccInfo:
    """Number of free occurrences of ``x`` in ``e`` and their depths."""
    if x not in e.fv:
        return OccInfo(0, frozenset())
    k = (x, e)
    hit = _occ_cache.get(k)
    if hit is not None:
        return hit
    if isinstance(e, Var):
        info = OccInfo(1, frozenset((1,)))
    elif isinstance(e, Lam):
        inner = occ(x, e.body)
        info = OccInfo(inner.count, frozenset(d + 1 for d in inner.depths))
    elif isinstance(e, App):
        f, a = occ(x, e.fun), occ(x, e.arg)
        info = OccInfo(f.count + a.count, f.depths | frozenset(d + 1 for d in a.depths))
    else:
        parts = [occ(x, c) for c in e.children()]
        info = OccInfo(sum(p.count for p in parts), frozenset().union(*(p.depths for p in parts)))
    if len(_occ_cache) > 500_000:
        _occ_cache.clear()
    _occ_cache[k] = info
    return info


def degree(x: str, e: Node) -> int:
    return occ(x, e).count


def max_occ_depth(x: str, e: Node) -> int:
    return max(occ(x, e).depths, default=0)


def is_resource(e: Node) -> bool:
    if isinstance(e, (Var, Bound)):
        return True
    if isinstance(e, Lam):
        return is_resource(e.body)
    if isinstance(e, App):
        return isinstance(e.arg, Bag) and is_resource(e.fun) and is_resource(e.arg)
    if isinstance(e, Bag):
        return all(is_resource(i) for i in e.items)
    return False


def is_normal(e: Node) -> bool:
    """No application of an abstraction anywhere."""
    if isinstance(e, App) and isinstance(e.fun, Lam):
        return False
    return all(is_normal(c) for c in e.children())


# ---------------------------------------------------------------- finite sums

class FinSum:
    """Finite formal sum of resource expressions with nonzero coefficients."""

    __slots__ = ("semiring", "_entries", "_hash")

    def __init__(self, semiring: Semiring = RAT, entries=()):
        self.semiring = semiring
        acc: dict = {}
        pairs = entries.items() if isinstance(entries, dict) else entries
        for e, c in pairs:
            acc[e] = semiring.add(acc[e], c) if e in acc else c
        self._entries = {e: c for e, c in acc.items() if not semiring.is_zero(c)}
        kinds = {isinstance(e, Bag) for e in self._entries}
        if len(kinds) > 1:
            raise ValueError("a finite sum mixes terms and monomials")
        self._hash = None

    @classmethod
    def of(cls, e: Node, semiring: Semiring = RAT) -> "FinSum":
        return cls(semiring, [(e, semiring.one)])

    @classmethod
    def from_counts(cls, counts: dict, semiring: Semiring = RAT) -> "FinSum":
        return cls(semiring, [(e, semiring.embed(n)) for e, n in counts.items() if n])

    def items(self) -> list[tuple[Node, Scalar]]:
        return sorted(self._entries.items(), key=lambda kv: kv[0].key)

    def support(self) -> list[Node]:
        return [e for e, _ in self.items()]

    def __iter__(self) -> Iterator[tuple[Node, Scalar]]:
        return iter(self.items())

    def __getitem__(self, e: Node) -> Scalar:
        return self._entries.get(e, self.semiring.zero)

    def __contains__(self, e) -> bool:
        return e in self._entries

    def __len__(self):
        return len(self._entries)

    def __bool__(self):
        return bool(self._entries)

    def __eq__(self, other):
        if not isinstance(other, FinSum):
            return NotImplemented
        return self.semiring.name == other.semiring.name and self._entries == other._entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __add__(self, other: "FinSum") -> "FinSum":
        return FinSum(self.semiring, list(self._entries.items()) + list(other._entries.items()))

    def scale(self, a: Scalar) -> "FinSum":
        return FinSum(self.semiring, [(e, self.semiring.mul(a, c)) for e, c in self._entries.items()])

    def as_dict(self) -> dict:
        return dict(self._entries)

    def __repr__(self):
        from .parsing import render
        return f"<FinSum[{self.semiring.name}] {render(self)}>"


def linear(f, eps, semiring: Semiring | None = None) -> FinSum:
    """Extend ``f`` (expression to count-dict or FinSum) linearly over ``eps``."""
    if isinstance(eps, FinSum):
        s = eps.semiring
        pairs = eps.items()
    else:
        s = semiring or RAT
        pairs = [(eps, s.one)]
    out: list = []
    for e, c in pairs:
        r = f(e)
        if isinstance(r, FinSum):
            out.extend((k, s.mul(c, v)) for k, v in r.items())
        else:
            out.extend((k, s.mul(c, s.embed(n))) for k, n in r.items())
    return FinSum(s, out)


def add_counts(acc: dict, key, n) -> None:
    acc[key] = acc.get(key, 0) + n


# ---------------------------------------------------------------- canonical algebraic terms

def is_simple(m: Node) -> bool:
    return isinstance(m, (Var, Bound, Lam, App))


def lam_dist(m: Node, hint: str = "x") -> Node:
    """Canonical form of the abstraction over an already canonical body."""
    if isinstance(m, Zero):
        return m
    if isinstance(m, Scale):
        return Scale(m.coeff, lam_dist(m.term, hint))
    if isinstance(m, Plus):
        return Plus(lam_dist(m.left, hint), lam_dist(m.right, hint))
    return Lam(m, hint)


def app_dist(m: Node, p: Node) -> Node:
    """Canonical form of ``m p`` where ``m`` and ``p`` are canonical."""
    if isinstance(m, Zero):
        return m
    if isinstance(m, Scale):
        return Scale(m.coeff, app_dist(m.term, p))
    if isinstance(m, Plus):
        return Plus(app_dist(m.left, p), app_dist(m.right, p))
    return App(m, p)


def canonicalize_alg(m: Node) -> Node:
    """Normal form for the six linearity rewrite rules, oriented left to right."""
    if isinstance(m, (Var, Bound, Zero)):
        return m
    if isinstance(m, Lam):
        return lam_dist(canonicalize_alg(m.body), m.hint)
    if isinstance(m, App):
        return app_dist(canonicalize_alg(m.fun), canonicalize_alg(m.arg))
    if isinstance(m, Scale):
        return Scale(m.coeff, canonicalize_alg(m.term))
    if isinstance(m, Plus):
        return Plus(canonicalize_alg(m.left), canonicalize_alg(m.right))
    raise TypeError(f"not an algebraic term: {m!r}")


def is_canonical(m: Node) -> bool:
    if isinstance(m, (Var, Bound, Zero)):
        return True
    if isinstance(m, Lam):
        return is_simple(m.body) and is_canonical(m.body)
    if isinstance(m, App):
        return is_simple(m.fun) and is_canonical(m.fun) and is_canonical(m.arg)
    if isinstance(m, Scale):
        return is_canonical(m.term)
    if isinstance(m, Plus):
        return is_canonical(m.left) and is_canonical(m.right)
    return False


def is_pure(m: Node) -> bool:
    if isinstance(m, (Zero, Scale, Plus, Bag)):
        return False
    return all(is_pure(c) for c in m.children())


def summands(m: Node) -> list[tuple[list[Scalar], Node]]:
    """Flatten a canonical term into simple summands with their scalar prefixes."""
    if isinstance(m, Zero):
        return []
    if isinstance(m, Scale):
        return [([m.coeff] + cs, s) for cs, s in summands(m.term)]
    if isinstance(m, Plus):
        return summands(m.left) + summands(m.right)
    return [([], m)]


def spine(s: Node) -> tuple[Node, list[Node]]:
    """Split an application chain into its head and argument list."""
    args = []
    while isinstance(s, App):
        args.append(s.arg)
        s = s.fun
    args.reverse()
    return s, args


def apply_all(head: Node, args: Iterable[Node]) -> Node:
    for a in args:
        head = App(head, a)
    return head


def apply_all_canonical(head: Node, args: Iterable[Node]) -> Node:
    for a in args:
        head = app_dist(head, a)
    return head


def as_fraction(x) -> Fraction:
    return Fraction(x)
