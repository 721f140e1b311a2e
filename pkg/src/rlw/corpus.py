"""Named example terms, written in the algebraic surface syntax."""

from __future__ import annotations

from .parsing import parse_algebraic
from .scalars import RAT, Semiring

OMEGA = r"(\x. x x) (\x. x x)"
M_STEP = r"((\y. \z. z) + (\y. \z. \x. y y z))"

NAMED = {
    "I": r"\x. x",
    "K": r"\x. \y. x",
    "S": r"\x. \y. \z. x z (y z)",
    "church0": r"\f. \x. x",
    "church1": r"\f. \x. f x",
    "church2": r"\f. \x. f (f x)",
    "church3": r"\f. \x. f (f (f x))",
    "delta": r"\x. x x",
    "delta3": r"\x. x x x",
    "omega": OMEGA,
    "omega3": r"(\x. x x x) (\x. x x x)",
    "Yg": r"(\f. (\x. f (x x)) (\x. f (x x))) (\y. \z. z y)",
    "x_omega": f"x ({OMEGA})",
    "m_step": M_STEP,
    "m_loop": rf"{M_STEP} {M_STEP} (\x. x)",
    "bool_collapse": "x 0 + x x",
    "infinity_x": r"(\y. x + y y) (\y. x + y y)",
    "infinity_0": r"(\y. 0 + y y) (\y. 0 + y y)",
}

# Terms with a beta-normal form, including weighted sums.
NORMALIZABLE = [
    r"(\x. x) y",
    r"1/2 * ((\x. x) y) + 1/3 * ((\x. \y. x) a b)",
    r"(\x. \y. x) a b",
    r"(\x. \y. \z. x z (y z)) (\x. \y. x) (\x. \y. x) y",
    r"(\f. \x. f (f x)) g z",
    r"x ((\y. y) z)",
    r"(\x. x x) (\y. y)",
    r"(\x. x x) y",
    r"\z. (\x. x z) (\y. y)",
    r"2 * ((\x. x) y) + (\x. \y. y) w z",
    r"(\x. x + y) z",
    r"0 * ((\x. x) y) + y",
    r"(\x. x (x y)) (\z. z)",
    r"(\f. \x. f (f x)) (\f. \x. f (f x)) g z",
    r"(\x. \y. x y y) (\a. \b. a) c",
    r"x ((\y. y y) z) w",
    r"(\x. 1/2 * x + 1/2 * x) y",
    r"-1 * ((\x. x) y) + y",
    rf"(\x. \y. x) y ({OMEGA})",
    r"\x. x ((\y. y) (1/2 * z + x))",
]

# Pure terms with a beta-normal form, used pairwise.
PURE_NORMALIZABLE = [
    r"(\x. x) y",
    r"y",
    r"(\x. \y. x) y z",
    r"(\x. \y. \z. x z (y z)) (\x. \y. x) (\x. \y. x) y",
    r"(\f. \x. f (f x)) g z",
    r"g (g z)",
    r"(\x. x x) (\y. y)",
    r"\x. x",
    r"\z. (\x. x z) (\y. y)",
    r"x ((\y. y) z)",
    r"x z",
    r"(\x. x x) y",
    r"y y",
    r"(\n. \f. \x. f (n f x)) (\f. \x. f x)",
    r"\f. \x. f (f x)",
    r"\a. \b. a",
]


def term(name: str, semiring: Semiring = RAT):
    return parse_algebraic(NAMED[name], semiring)
