import random
from fractions import Fraction
from itertools import product
from math import factorial

import pytest
from hypothesis import given, strategies as st

from rlw.errors import NoFractions, NotPure
from rlw.generate import gen_random
from rlw.parsing import parse_algebraic as a, parse_resource as r
from rlw.scalars import BOOL, NAT, RAT
from rlw.syntax import App, Bag, Bound, FinSum, Lam, Plus, Scale, Var, Zero
from rlw.taylor import (
    TruncationBound, er_multiplicity, linear_skeleton, prom_coeff, taylor_coeff, taylor_support,
    taylor_truncated,
)


def test_promotion_examples():
    u, v = Var("u"), Var("v")
    tau = FinSum(RAT, [(u, Fraction(2)), (v, Fraction(3))])
    assert prom_coeff(tau, Bag()) == 1
    assert prom_coeff(FinSum.of(u, RAT), Bag([u, u])) == Fraction(1, 2)
    assert prom_coeff(tau, Bag([u, v])) == 6
    assert prom_coeff(tau, Bag([Var("w")])) == 0


def test_coefficient_examples():
    assert taylor_coeff(a(r"y ((\x.x) z)"), r(r"y[(\x.x)[z]]")) == 1
    assert taylor_coeff(a("y z"), r("y[z, z]")) == Fraction(1, 2)
    m = a(r"0 * ((\x. x) y)")
    for s in taylor_support(m, 6):
        assert taylor_coeff(m, s) == 0


def test_support_examples():
    assert taylor_support(a("x"), 5) == {Var("x")}
    assert taylor_support(a("x y"), 3) == {r("x[]"), r("x[y]")}
    m = a(r"(\x. x x) y")
    assert taylor_support(Scale(Fraction(0), m), 8) == taylor_support(m, 8)


def test_truncated_examples():
    assert taylor_truncated(a(r"(\x.x) y"), 5) == FinSum(RAT, [
        (r(r"(\x.x)[]"), 1), (r(r"(\x.x)[y]"), 1), (r(r"(\x.x)[y, y]"), Fraction(1, 2))])
    assert not taylor_truncated(Zero(), 7)
    assert taylor_truncated(a("1/2 * x"), 3) == FinSum(RAT, [(Var("x"), Fraction(1, 2))])


def test_multiplicity_examples():
    assert er_multiplicity(Var("x")) == 1
    assert er_multiplicity(r("x[y, y]")) == 2
    assert er_multiplicity(r("x[y[], y[]]")) == 2
    assert er_multiplicity(r(r"x[\z. z[w, w], \z. z[w, w]]")) == 8


def test_skeleton_examples():
    assert linear_skeleton(a("x")) == Var("x")
    assert linear_skeleton(a(r"(\x.x) y")) == r(r"(\x.x)[y]")
    with pytest.raises(NotPure):
        linear_skeleton(a("x + y"))


def test_semiring_gating():
    with pytest.raises(NoFractions):
        taylor_truncated(a("x y"), 4, NAT)
    assert taylor_truncated(a("x y"), 4, BOOL) == FinSum(BOOL, [(r("x[]"), 1), (r("x[y]"), 1), (r("x[y, y]"), 1)])


def test_mono_depth_bound():
    got = taylor_support(a("x (y z)"), TruncationBound(9, 1))
    assert all(t.mono_depth <= 1 for t in got)
    assert r("x[]") in got and r("x[y[]]") not in got


# ---------------------------------------------------------------- oracle

def _ordered_expansion(m, b: int) -> dict:
    """Expansion within size b, promoting arguments through ordered tuples."""
    if isinstance(m, (Var, Bound)):
        return {m: Fraction(1)}
    if isinstance(m, Zero):
        return {}
    if isinstance(m, Scale):
        return {t: m.coeff * c for t, c in _ordered_expansion(m.term, b).items()}
    if isinstance(m, Plus):
        out = dict(_ordered_expansion(m.left, b))
        for t, c in _ordered_expansion(m.right, b).items():
            out[t] = out.get(t, 0) + c
        return out
    if isinstance(m, Lam):
        return {Lam(t, m.hint): c for t, c in _ordered_expansion(m.body, b).items()}
    funs = _ordered_expansion(m.fun, b)
    args = list(_ordered_expansion(m.arg, b).items())
    out = {}
    for f, cf in funs.items():
        for n in range(b + 1):
            if f.size + 1 + n > b:
                break
            for picks in product(args, repeat=n):
                t = App(f, Bag(p[0] for p in picks))
                if t.size > b:
                    continue
                c = cf / factorial(n)
                for _, cp in picks:
                    c *= cp
                out[t] = out.get(t, 0) + c
    return out


@given(st.integers(0, 10**6))
def test_truncation_matches_ordered_oracle(seed):
    rng = random.Random(seed)
    m = gen_random("algebraic", rng.randint(1, 6), seed=rng)
    b = 7
    expect = FinSum(RAT, [(t, c) for t, c in _ordered_expansion(m, b).items() if t.size <= b])
    assert taylor_truncated(m, b) == expect
    assert taylor_support(m, b) >= set(expect.support())


@given(st.integers(0, 10**6))
def test_pure_terms_have_uniform_coefficients(seed):
    rng = random.Random(seed)
    m = gen_random("pure", rng.randint(1, 8), seed=rng)
    for s in taylor_support(m, 9):
        assert taylor_coeff(m, s) == Fraction(1, er_multiplicity(s))
    assert linear_skeleton(m) in taylor_support(m, linear_skeleton(m).size)


@given(st.integers(0, 10**6))
def test_coefficients_agree_with_truncation(seed):
    rng = random.Random(seed)
    m = gen_random("algebraic", rng.randint(1, 7), seed=rng)
    exp = taylor_truncated(m, 8)
    for s in taylor_support(m, 8):
        assert taylor_coeff(m, s) == exp[s]


@given(st.integers(0, 10**6))
def test_bool_expansion_is_support(seed):
    rng = random.Random(seed)
    m = gen_random("algebraic", rng.randint(1, 7), seed=rng, semiring=BOOL)
    got = taylor_truncated(m, 7, BOOL)
    assert set(got.support()) <= taylor_support(m, 7)
