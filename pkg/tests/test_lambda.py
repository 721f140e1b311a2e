import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rlw import algebraic as alg
from rlw.corpus import NAMED, NORMALIZABLE, OMEGA, term
from rlw.errors import NotNormal
from rlw.generate import gen_random
from rlw.parsing import parse_algebraic as a, parse_resource as r
from rlw.reduction import nf
from rlw.scalars import RAT
from rlw.syntax import FinSum, Lam, Plus, Var, ZERO, canonicalize_alg, is_normal
from rlw.taylor import TruncationBound, taylor_coeff, taylor_support, taylor_truncated

OM = a(OMEGA)


def test_beta_subst_examples():
    n = a("n")
    assert alg.beta_subst(Var("x"), "x", n) == n
    got = alg.beta_subst(a(r"\y. x"), "x", Var("y"))
    assert got == Lam(Var("y")) and "y" in got.fv
    assert alg.beta_subst(a("x + 0"), "x", n) == Plus(n, ZERO)


def test_head_classify_examples():
    h = alg.head_classify(a(r"\x. y z"))
    assert isinstance(h, alg.HeadNormal)
    assert (h.binders, h.head, h.args) == (("x",), Var("y"), (Var("z"),))
    h = alg.head_classify(a(r"(\x.x) y"))
    assert isinstance(h, alg.HeadRedex) and h.binders == () and h.fun == a(r"\x.x")
    assert h.arg == Var("y") and h.rest == ()
    h = alg.head_classify(a(r"\x. (\y. y x) p q"))
    assert h.binders == ("x",) and h.arg == Var("p") and h.rest == (Var("q"),)


def test_left_and_full_reduct_examples():
    assert alg.left_reduct_alg(a(r"(\x.x) y")) == Var("y")
    assert alg.left_reduct_alg(OM) == OM
    assert alg.left_reduct_alg(a(r"x ((\y.y) z)")) == a("x z")
    assert alg.full_reduct_alg(a(r"(\x.x) y")) == Var("y")
    assert alg.full_reduct_alg(a(r"x ((\y.y) z) ((\y.y) w)")) == a("x z w")
    assert alg.full_reduct_alg(OM) == OM


def test_normalize_examples():
    assert alg.normalize_alg(a(r"(\x.x) y"), 10) == alg.Definite(Var("y"), 1)
    assert alg.normalize_alg(OM, 10).no
    v = alg.normalize_alg(a(r"2 * ((\x.x) y) + 0"), 10)
    assert v.definite and v.value == a("2 * y + 0")


def test_normalize_runs_out_of_fuel():
    v = alg.normalize_alg(a(r"(\f. \x. f (f x)) (\f. \x. f (f x)) g z"), 2)
    assert v.unknown and v.fuel_spent == 2


def test_weak_solvability_examples():
    assert alg.weak_solvable(a("x"), 0).definite
    assert alg.weak_solvable(a(f"x ({OMEGA})"), 1).definite
    assert alg.weak_solvable(OM, 1).no
    assert alg.weak_solvable(ZERO).no
    assert alg.weak_solvable(term("infinity_x")).definite
    assert alg.weak_solvable(term("infinity_0")).no
    # solvability looks at supports, and a zero scalar does not erase one
    assert alg.weak_solvable(a(f"0 * x + {OMEGA}")).definite


def test_determinacy_examples():
    assert alg.d_determinate(OM, 0).definite
    m = canonicalize_alg(a(rf"(\x.x) + \x. {NAMED['m_loop']}"))
    assert alg.d_determinate(m, 1).no
    assert alg.d_determinate(a(f"x ({OMEGA})"), 1, 5).definite
    v = alg.d_determinable(a(r"(\x.x) y"), 3, 10)
    assert v.definite and v.value == 1
    assert alg.d_determinable(OM, 2, 5).definite
    assert alg.d_determinable(term("m_loop"), 1, 20).unknown


def test_approximant_examples():
    v = alg.approximant(OM, 3, 5)
    assert v.definite and v.value == ZERO
    assert alg.approximant(a(r"(\x.x) y"), 1).value == Var("y")
    assert alg.approximant(a(f"x ({OMEGA})"), 2).value == a("x 0")
    assert alg.approximant(term("Yg"), 2).value == a(r"\z. z (\w. w 0)")


def test_nf_coefficient_examples():
    assert alg.nf_taylor_coeff(a(r"(\x.x) y"), Var("y")).value == 1
    for t in (Var("x"), r("x[]"), r(r"\z. z")):
        v = alg.nf_taylor_coeff(OM, t)
        assert v.definite and v.value == 0
    assert alg.nf_taylor_coeff(a(f"x ({OMEGA})"), r("x[]")).value == 1
    with pytest.raises(NotNormal):
        alg.nf_taylor_coeff(a("x"), r(r"(\x.x)[y]"))


def test_nf_truncated_examples():
    assert alg.nf_taylor_truncated(a(r"(\x.x) y"), 5).value == taylor_truncated(Var("y"), 5)
    assert not alg.nf_taylor_truncated(OM, 9).value
    yg = term("Yg")
    got = alg.nf_taylor_truncated(yg, TruncationBound(10, 2)).value
    a3 = alg.approximant(yg, 3).value
    assert got == taylor_truncated(a3, TruncationBound(10, 2))


def test_looping_term():
    m = term("m_loop")
    assert alg.nf_taylor_coeff(m, r(r"\x. x")).value == 1
    assert alg.nf_taylor_coeff(m, r(r"\x. \y. y")).value == 1
    assert alg.nf_taylor_coeff(m, r(r"\x. \y. x")).value == 0


def _brute_nf_coeff(m, t, bound):
    """Sum, over the truncated expansion, of resource normal forms hitting t."""
    total = Fraction(0)
    for s, c in taylor_truncated(m, bound).items():
        total += c * nf(FinSum.of(s, RAT))[t]
    return total


@pytest.mark.parametrize("text", NORMALIZABLE)
def test_nf_coefficients_match_brute_force(text):
    m = a(text)
    normal = alg.normalize_alg(m).value
    for t in taylor_support(normal, 6):
        # the normal form of T(m) at t only involves antecedents that are not much larger
        assert alg.nf_taylor_coeff(m, t).value == taylor_coeff(normal, t)


def test_brute_force_on_small_bounds():
    m = a(r"(\x. x x) y")
    assert _brute_nf_coeff(m, r("y[y]"), 8) == 1
    assert _brute_nf_coeff(m, r("y[]"), 8) == 1


@given(st.integers(0, 10**6))
def test_directed_and_approximant_routes_agree(seed):
    rng = random.Random(seed)
    m = gen_random("algebraic", rng.randint(1, 9), seed=rng)
    for t in sorted(taylor_support(m, 7), key=lambda t: t.key):
        if not is_normal(t):
            continue
        x = alg.nf_taylor_coeff(m, t, 200)
        y = alg.nf_taylor_coeff_via_approximant(m, t, 200)
        if x.definite and y.definite:
            assert x.value == y.value


@given(st.integers(0, 10**6))
def test_normalization_commutes_with_expansion_on_random_terms(seed):
    rng = random.Random(seed)
    m = gen_random("algebraic", rng.randint(1, 9), seed=rng)
    v = alg.normalize_alg(m, 60)
    if not v.definite:
        return
    got = alg.nf_taylor_truncated(m, 7, 200)
    if got.definite:
        assert got.value == taylor_truncated(v.value, 7)


@given(st.integers(0, 10**6))
def test_reducts_keep_normal_form(seed):
    rng = random.Random(seed)
    m = canonicalize_alg(gen_random("pure", rng.randint(1, 10), seed=rng))
    v = alg.normalize_alg(m, 60)
    if v.definite:
        assert alg.normalize_alg(alg.left_reduct_alg(m), 60).value == v.value
        assert alg.normalize_alg(alg.full_reduct_alg(m), 60).value == v.value


@pytest.mark.parametrize("name", ["omega", "omega3", "infinity_0", "infinity_x", "x_omega", "Yg", "delta"])
def test_unsolvable_means_every_support_element_vanishes(name):
    m = term(name)
    vanish = all(not nf(FinSum.of(s, RAT)) for s in taylor_support(m, 10))
    v = alg.weak_solvable(m, 200)
    if name == "omega3":
        # grows under head reduction without cycling, so no verdict is reached
        assert v.unknown and vanish
    else:
        assert v.no == vanish
