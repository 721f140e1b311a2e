"""Dynamics of algebraic lambda-terms: reduction, solvability, approximants.

Semi-decidable judgements return a ``Verdict``.  Every search is bounded by a
fuel budget counted in head- or left-reduction steps.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Any

from .errors import NotNormal
from .scalars import RAT, Scalar, Semiring
from .syntax import (
    App, FinSum, Lam, Node, Plus, Scale, Var, Zero, ZERO, abstract, apply_all,
    canonicalize_alg, fresh_name, instantiate, is_normal, lam_dist, open_body,
    replace_free, spine, summands,
)
from .taylor import TruncationBound, _bound, _need_fractions, taylor_coeff, taylor_support

DEFAULT_FUEL = 500


class Outcome(Enum):
    DEFINITE = "definite"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    value: Any = None
    fuel_spent: int = 0

    @property
    def definite(self) -> bool:
        return self.outcome is Outcome.DEFINITE

    @property
    def no(self) -> bool:
        return self.outcome is Outcome.NO

    @property
    def unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN


def Definite(value=True, spent=0) -> Verdict:
    return Verdict(Outcome.DEFINITE, value, spent)


def No(spent=0) -> Verdict:
    return Verdict(Outcome.NO, None, spent)


def Unknown(spent=0) -> Verdict:
    return Verdict(Outcome.UNKNOWN, None, spent)


class _OutOfFuel(Exception):
    pass


# ---------------------------------------------------------------- substitution and heads

def beta_subst(m: Node, x: str, n: Node) -> Node:
    """m with n substituted for the free variable x, in canonical form."""
    return canonicalize_alg(replace_free(m, x, n))


@dataclass(frozen=True)
class HeadNormal:
    binders: tuple[str, ...]
    head: Node
    args: tuple[Node, ...]


@dataclass(frozen=True)
class HeadRedex:
    binders: tuple[str, ...]
    fun: Lam
    arg: Node
    rest: tuple[Node, ...]


def _binder_name(lam: Lam, avoid: set) -> str:
    if lam.hint and lam.hint not in avoid and not lam.hint.startswith("%"):
        return lam.hint
    return fresh_name()


def head_classify(s: Node):
    """Split a simple term into its binders and head-normal or head-redex shape.

    Binders are opened under their own names when that causes no clash, so
    the pieces returned mention them as free variables.
    """
    binders = []
    avoid = set(s.fv)
    while isinstance(s, Lam):
        name = _binder_name(s, avoid)
        avoid.add(name)
        binders.append(name)
        s = open_body(s, name)
    head, args = spine(s)
    if isinstance(head, Lam):
        return HeadRedex(tuple(binders), head, args[0], tuple(args[1:]))
    if isinstance(head, Var):
        return HeadNormal(tuple(binders), head, tuple(args))
    raise ValueError("head_classify expects a simple term")


def _head_reduct(head: Lam, args: list[Node]) -> Node:
    return canonicalize_alg(apply_all(instantiate(head.body, args[0]), args[1:]))


def _rebind(result: Node, name: str, hint: str) -> Node:
    return lam_dist(abstract(result, name), hint)


# ---------------------------------------------------------------- parallel reducts

def left_reduct_alg(m: Node) -> Node:
    """Fire the head redex of every spine; the result is canonical."""
    if isinstance(m, Zero):
        return m
    if isinstance(m, Scale):
        return Scale(m.coeff, left_reduct_alg(m.term))
    if isinstance(m, Plus):
        return Plus(left_reduct_alg(m.left), left_reduct_alg(m.right))
    if isinstance(m, Lam):
        z = fresh_name()
        return _rebind(left_reduct_alg(open_body(m, z)), z, m.hint)
    head, args = spine(m)
    if isinstance(head, Lam) and args:
        return _head_reduct(head, args)
    return apply_all(head, [left_reduct_alg(a) for a in args])


def full_reduct_alg(m: Node) -> Node:
    """Fire every beta-redex of the canonical term m once."""
    if isinstance(m, (Zero, Var)):
        return m
    if isinstance(m, Scale):
        return Scale(m.coeff, full_reduct_alg(m.term))
    if isinstance(m, Plus):
        return Plus(full_reduct_alg(m.left), full_reduct_alg(m.right))
    if isinstance(m, Lam):
        z = fresh_name()
        return _rebind(full_reduct_alg(open_body(m, z)), z, m.hint)
    if isinstance(m, App):
        if isinstance(m.fun, Lam):
            z = fresh_name()
            body = full_reduct_alg(open_body(m.fun, z))
            return beta_subst(body, z, full_reduct_alg(m.arg))
        return canonicalize_alg(App(full_reduct_alg(m.fun), full_reduct_alg(m.arg)))
    raise TypeError(f"not an algebraic term: {m!r}")


def normalize_alg(m: Node, fuel: int = DEFAULT_FUEL) -> Verdict:
    """Iterate left reduction until a beta-normal canonical term appears."""
    m = canonicalize_alg(m)
    seen = set()
    for step in range(fuel + 1):
        if is_normal(m):
            return Definite(m, step)
        if m in seen:
            return No(step)
        seen.add(m)
        if step == fuel:
            break
        m = left_reduct_alg(m)
    return Unknown(fuel)


# ---------------------------------------------------------------- solvability

def _peel(s: Node, depth: int) -> tuple[Node, int]:
    # depth-indexed names keep revisited terms syntactically identical
    while isinstance(s, Lam):
        s = open_body(s, f"%w{depth}")
        depth += 1
    return s, depth


def weak_solvable(m: Node, fuel: int = DEFAULT_FUEL) -> Verdict:
    """Does some summand of m reach a head normal form by head reduction?"""
    m = canonicalize_alg(m)
    frontier = deque((s, 0) for _, s in summands(m))
    seen = set()
    steps = 0
    starved = False
    while frontier:
        s, depth = frontier.popleft()
        s, depth = _peel(s, depth)
        head, args = spine(s)
        if not isinstance(head, Lam):
            return Definite(True, steps)
        if s in seen:
            continue
        seen.add(s)
        if steps >= fuel:
            starved = True
            continue
        steps += 1
        frontier.extend((t, depth) for _, t in summands(_head_reduct(head, args)))
    return Unknown(steps) if starved else No(steps)


def _all(verdicts) -> Verdict:
    pending = False
    for v in verdicts:
        if v.no:
            return v
        if v.unknown:
            pending = True
    return Unknown() if pending else Definite()


def _determinate(m: Node, d: int, fuel: int) -> Verdict:
    if d == 0 or isinstance(m, Zero):
        return Definite()
    if isinstance(m, Scale):
        return _determinate(m.term, d, fuel)
    if isinstance(m, Plus):
        return _all(_determinate(t, d, fuel) for t in (m.left, m.right))
    if isinstance(m, Lam):
        return _determinate(open_body(m, fresh_name()), d, fuel)
    head, args = spine(m)
    if isinstance(head, Lam):
        v = weak_solvable(m, fuel)
        if v.no:
            return Definite()
        return No() if v.definite else Unknown(v.fuel_spent)
    return _all(_determinate(a, d - 1, fuel) for a in args)


def d_determinate(m: Node, d: int, fuel: int = DEFAULT_FUEL) -> Verdict:
    """Is m, as it stands, made of head normal forms and unsolvable parts down to depth d?"""
    return _determinate(canonicalize_alg(m), d, fuel)


def d_determinable(m: Node, d: int, fuel: int = DEFAULT_FUEL) -> Verdict:
    """Search along left reduction for a d-determinate reduct; the value is the step count."""
    m = canonicalize_alg(m)
    history: list[tuple[Node, Verdict]] = []
    index: dict = {}
    for k in range(fuel + 1):
        if m in index:
            cycle = [v for _, v in history[index[m]:]]
            return No(k) if all(v.no for v in cycle) else Unknown(k)
        v = _determinate(m, d, fuel)
        if v.definite:
            return Definite(k, k)
        index[m] = len(history)
        history.append((m, v))
        if k == fuel:
            break
        m = left_reduct_alg(m)
    return Unknown(fuel)


# ---------------------------------------------------------------- approximants

class _Approximant:
    def __init__(self, fuel: int):
        self.fuel = fuel
        self.steps = 0

    def unsolvable(self, m: Node) -> bool:
        v = weak_solvable(m, self.fuel)
        if v.unknown:
            raise _OutOfFuel
        return v.no

    def __call__(self, m: Node, d: int) -> Node:
        if d == 0 or self.unsolvable(m):
            return ZERO
        if isinstance(m, Scale):
            return Scale(m.coeff, self(m.term, d))
        if isinstance(m, Plus):
            return Plus(self(m.left, d), self(m.right, d))
        if isinstance(m, Lam):
            z = fresh_name()
            return _rebind(self(open_body(m, z), d), z, m.hint)
        head, args = spine(m)
        if isinstance(head, Lam):
            self.steps += 1
            if self.steps > self.fuel:
                raise _OutOfFuel
            return self(_head_reduct(head, args), d)
        return apply_all(head, [self(a, d - 1) for a in args])


def approximant(m: Node, d: int, fuel: int = DEFAULT_FUEL) -> Verdict:
    """The normal d-approximant: a beta-normal term standing for the depth-d Boehm tree."""
    run = _Approximant(fuel)
    try:
        return Definite(run(canonicalize_alg(m), d), run.steps)
    except _OutOfFuel:
        return Unknown(run.steps)


# ---------------------------------------------------------------- normal form of the Taylor expansion

class _Directed:
    """Coefficient of a normal t in NF(T(m)) by head unfolding guided by t.

    The clauses are those of the approximant, but only the branches that can
    contribute to t are explored, so terms whose other branches unfold forever
    still get an answer.
    """

    def __init__(self, semiring: Semiring, fuel: int):
        self.s = semiring
        self.fuel = fuel
        self.steps = 0

    def __call__(self, m: Node, t: Node) -> Scalar:
        s = self.s
        if isinstance(m, Zero):
            return s.zero
        if isinstance(m, Scale):
            return s.mul(m.coeff, self(m.term, t))
        if isinstance(m, Plus):
            return s.add(self(m.left, t), self(m.right, t))
        if isinstance(m, Lam):
            if not isinstance(t, Lam):
                return s.zero
            z = fresh_name()
            return self(open_body(m, z), open_body(t, z))
        head, args = spine(m)
        if isinstance(head, Lam):
            v = weak_solvable(m, self.fuel)
            if v.unknown:
                raise _OutOfFuel
            if v.no:
                return s.zero
            self.steps += 1
            if self.steps > self.fuel:
                raise _OutOfFuel
            return self(_head_reduct(head, args), t)
        t_head, monos = spine(t)
        if t_head != head or len(monos) != len(args):
            return s.zero
        out = s.one
        for a, mono in zip(args, monos):
            for u, k in mono.grouped():
                c = self(a, u)
                if s.is_zero(c):
                    return s.zero
                out = s.mul(out, s.mul(s.power(c, k), s.inv(_fact(k))))
        return out


def _fact(k: int) -> int:
    from math import factorial
    return factorial(k)


def nf_taylor_coeff(m: Node, t: Node, fuel: int = DEFAULT_FUEL,
                    semiring: Semiring = RAT) -> Verdict:
    """Coefficient of the normal resource term t in the normal form of T(m).

    Unfolds m by head reduction only along the branches whose shape can still
    produce t.  On d-determinable terms this agrees with reading the
    coefficient off the normal d-approximant (see ``nf_taylor_coeff_via_approximant``);
    it also terminates on terms such as the looping example whose other
    branches never settle.
    """
    if not is_normal(t):
        raise NotNormal("the target resource term has a redex")
    _need_fractions(semiring)
    run = _Directed(semiring, fuel)
    try:
        return Definite(run(canonicalize_alg(m), t), run.steps)
    except _OutOfFuel:
        return Unknown(run.steps)


def nf_taylor_coeff_via_approximant(m: Node, t: Node, fuel: int = DEFAULT_FUEL,
                                    semiring: Semiring = RAT) -> Verdict:
    """Same coefficient, computed as T(A_d(L^k m))_t with d = mono_depth(t) + 1."""
    if not is_normal(t):
        raise NotNormal("the target resource term has a redex")
    _need_fractions(semiring)
    m = canonicalize_alg(m)
    d = t.mono_depth + 1
    v = d_determinable(m, d, fuel)
    if not v.definite:
        return v
    for _ in range(v.value):
        m = left_reduct_alg(m)
    a = approximant(m, d, fuel)
    if not a.definite:
        return a
    return Definite(taylor_coeff(a.value, t, semiring), v.fuel_spent + a.fuel_spent)


def nf_taylor_truncated(m: Node, bound, fuel: int = DEFAULT_FUEL,
                        semiring: Semiring = RAT) -> Verdict:
    """The normal form of T(m), restricted to terms within the bound."""
    _need_fractions(semiring)
    b = _bound(bound)
    depth = (b.max_size - 1) // 2  # a term of size n nests at most (n-1)/2 monomials
    if b.max_mono_depth is not None:
        depth = min(depth, b.max_mono_depth)
    d = depth + 1
    m = canonicalize_alg(m)
    v = d_determinable(m, d, fuel)
    if not v.definite:
        return v
    for _ in range(v.value):
        m = left_reduct_alg(m)
    a = approximant(m, d, fuel)
    if not a.definite:
        return a
    candidates = taylor_support(a.value, TruncationBound(b.max_size, depth))
    entries = [(t, taylor_coeff(a.value, t, semiring)) for t in candidates]
    return Definite(FinSum(semiring, entries), v.fuel_spent)
