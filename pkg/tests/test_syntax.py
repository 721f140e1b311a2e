import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rlw.errors import TermSyntaxError
from rlw.generate import gen_random
from rlw.parsing import from_json, parse_algebraic, parse_resource, render, to_json
from rlw.scalars import NAT, RAT
from rlw.syntax import (
    ZERO, App, Bag, Bound, FinSum, Lam, Node, Plus, Scale, Var, Zero, canonicalize_alg,
    compare_terms, free_vars, is_canonical, metrics, occ,
)

from conftest import random_resource


def test_parse_examples():
    assert parse_resource(r"\x. x[x]") == Lam(App(Bound(0), Bag([Bound(0)])))
    assert parse_resource("y[] + 2 * y[z]") == FinSum(RAT, [
        (App(Var("y"), Bag()), 1), (App(Var("y"), Bag([Var("z")])), 2)])
    assert parse_algebraic(r"(\x. x) y") == App(Lam(Bound(0)), Var("y"))
    assert parse_algebraic("1/2 * (x + 0)") == Scale(Fraction(1, 2), Plus(Var("x"), ZERO))


@pytest.mark.parametrize("text", [r"\x. x [y", r"x[", "", r"(\x. x"])
def test_resource_syntax_errors(text):
    with pytest.raises(TermSyntaxError):
        parse_resource(text)


@pytest.mark.parametrize("text", [r"\x.", "x +", "(x", "1/2 *", "x )"])
def test_algebraic_syntax_errors(text):
    with pytest.raises(TermSyntaxError):
        parse_algebraic(text)


def test_syntax_error_reports_position():
    with pytest.raises(TermSyntaxError) as info:
        parse_resource(r"\x. x [y")
    assert info.value.position == 8


def test_render_examples():
    assert render(App(Var("x"), Bag([Var("y"), Var("y")]))) == "x[y, y]"
    assert render(FinSum(RAT, [(Var("y"), Fraction(1, 2))])) == "1/2 * y"
    assert render(ZERO) == "0"
    assert render(FinSum(RAT)) == "0"


def test_alpha_equivalence_is_equality():
    assert parse_resource(r"\x. x") == parse_resource(r"\y. y")
    assert parse_algebraic(r"\x. \y. x y") == parse_algebraic(r"\a. \b. a b")
    assert parse_algebraic(r"\x. y") != parse_algebraic(r"\x. x")
    assert hash(parse_resource(r"\x. x")) == hash(parse_resource(r"\z. z"))


def test_lambda_alias_and_comments():
    assert parse_algebraic("λx. x # identity") == parse_algebraic(r"\x. x")


def test_render_avoids_capture():
    term = Lam(App(Var("x"), Bound(0)), "x")
    assert render(term) == r"\x1. x x1"
    assert parse_algebraic(render(term)) == term


def test_metrics_examples():
    m = metrics(Var("x"))
    assert (m.size, m.height, m.mono_depth) == (1, 1, 0)
    m = metrics(parse_resource(r"(\x.x)[y]"))
    assert (m.size, m.height, m.mono_depth) == (4, 2, 1)
    m = metrics(parse_resource(r"[y, \x.x]"))
    assert (m.size, m.height, m.mono_depth) == (3, 2, 1)


def test_occurrence_examples():
    assert (occ("x", Var("x")).count, occ("x", Var("x")).depths) == (1, frozenset({1}))
    assert (occ("x", Var("y")).count, occ("x", Var("y")).depths) == (0, frozenset())
    o = occ("x", parse_resource(r"\y. x[x]"))
    assert (o.count, o.depths) == (2, frozenset({2, 3}))


def test_free_variable_examples():
    assert free_vars(parse_resource(r"\x. x")) == frozenset()
    assert free_vars(parse_resource("x[y]")) == {"x", "y"}
    assert free_vars(parse_resource(r"\x. y")) == {"y"}


def test_compare_examples():
    x, y = Var("x"), Var("y")
    assert compare_terms(x, y) < 0
    assert compare_terms(x, parse_resource(r"\x. x")) < 0
    e = parse_resource(r"\x. x[y, y]")
    assert compare_terms(e, e) == 0


@given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_compare_is_a_total_order(a, b, c):
    e1, e2, e3 = (random_resource(s) for s in (a, b, c))
    assert compare_terms(e1, e2) == -compare_terms(e2, e1)
    assert (compare_terms(e1, e2) == 0) == (e1 == e2)
    if compare_terms(e1, e2) <= 0 and compare_terms(e2, e3) <= 0:
        assert compare_terms(e1, e3) <= 0


@given(st.integers(0, 10**6))
def test_resource_round_trip(seed):
    e = random_resource(seed, 12, ("x", "y", "z"))
    assert parse_resource(render(e)) == e


@given(st.integers(0, 10**6), st.sampled_from(["algebraic", "pure"]))
def test_algebraic_round_trip(seed, kind):
    rng = random.Random(seed)
    m = gen_random(kind, rng.randint(1, 12), seed=rng)
    assert parse_algebraic(render(m)) == m


@given(st.integers(0, 10**6))
def test_json_round_trip(seed):
    rng = random.Random(seed)
    entries = [(gen_random("resource", rng.randint(1, 8), seed=rng), Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
               for _ in range(rng.randint(0, 4))]
    fs = FinSum(RAT, entries)
    assert from_json(to_json(fs)) == fs


def test_finsum_drops_zeros_and_merges():
    y = Var("y")
    assert not FinSum(RAT, [(y, 1), (y, -1)])
    assert FinSum(NAT, [(y, 1), (y, 2)])[y] == 3
    with pytest.raises(ValueError):
        FinSum(RAT, [(y, 1), (Bag([y]), 1)])


def test_bag_is_order_insensitive():
    a, b = parse_resource(r"\x. x"), Var("z")
    assert Bag([a, b]) == Bag([b, a])
    assert Bag([a, a, b]).grouped() == tuple(sorted([(a, 2), (b, 1)], key=lambda p: p[0].key))


# ---------------------------------------------------------------- canonical forms

def test_canonicalize_examples():
    m, n, p = Var("m"), Var("n"), Var("p")
    assert canonicalize_alg(Lam(Plus(m, n))) == Plus(Lam(m), Lam(n))
    assert canonicalize_alg(App(Scale(Fraction(2), m), p)) == Scale(Fraction(2), App(m, p))
    assert canonicalize_alg(App(ZERO, p)) == ZERO
    # nested scalars are kept apart
    assert canonicalize_alg(Scale(2, Scale(3, m))) == Scale(2, Scale(3, m))


def _rule(node: Node):
    """One of the six linearity rewrites at the root, or None."""
    if isinstance(node, Lam):
        b = node.body
        if isinstance(b, Zero):
            return ZERO
        if isinstance(b, Scale):
            return Scale(b.coeff, Lam(b.term, node.hint))
        if isinstance(b, Plus):
            return Plus(Lam(b.left, node.hint), Lam(b.right, node.hint))
    if isinstance(node, App):
        f = node.fun
        if isinstance(f, Zero):
            return ZERO
        if isinstance(f, Scale):
            return Scale(f.coeff, App(f.term, node.arg))
        if isinstance(f, Plus):
            return Plus(App(f.left, node.arg), App(f.right, node.arg))
    return None


def _redex_paths(node: Node, path=()):
    if _rule(node) is not None:
        yield path
    for i, child in enumerate(_children(node)):
        yield from _redex_paths(child, path + (i,))


def _children(node):
    if isinstance(node, Lam):
        return [node.body]
    if isinstance(node, App):
        return [node.fun, node.arg]
    if isinstance(node, Scale):
        return [node.term]
    if isinstance(node, Plus):
        return [node.left, node.right]
    return []


def _rewrite_at(node, path):
    if not path:
        return _rule(node)
    i, rest = path[0], path[1:]
    kids = _children(node)
    kids[i] = _rewrite_at(kids[i], rest)
    if isinstance(node, Lam):
        return Lam(kids[0], node.hint)
    if isinstance(node, App):
        return App(*kids)
    if isinstance(node, Scale):
        return Scale(node.coeff, kids[0])
    return Plus(*kids)


def rewrite_randomly(m: Node, rng: random.Random) -> Node:
    while True:
        paths = list(_redex_paths(m))
        if not paths:
            return m
        m = _rewrite_at(m, rng.choice(paths))


@given(st.integers(0, 10**6))
def test_canonicalize_agrees_with_random_rewriting(seed):
    rng = random.Random(seed)
    m = gen_random("algebraic", rng.randint(1, 12), seed=rng)
    c = canonicalize_alg(m)
    assert rewrite_randomly(m, rng) == c
    assert canonicalize_alg(c) == c
    assert is_canonical(c)


def test_generator_contracts():
    assert gen_random("pure", 5, 2, 42) == gen_random("pure", 5, 2, 42)
    for seed in range(20):
        assert isinstance(gen_random("resource", 1, 1, seed), Var)
        canonicalize_alg(gen_random("algebraic", 6, 2, seed))
        assert gen_random("resource", 9, 2, seed).size == 9
