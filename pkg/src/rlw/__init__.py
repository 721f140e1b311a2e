"""Resource lambda-calculus workbench: exact Taylor expansion and normalization."""

import sys

# terms are traversed recursively and left-reduction iterates nest deeply
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

from .scalars import BOOL, INT, NAT, QPOS, RAT, Semiring, get_semiring
from .syntax import App, Bag, Bound, FinSum, Lam, Plus, Scale, Var, ZERO, Zero
from .parsing import parse_algebraic, parse_resource, render

__all__ = [
    "BOOL", "INT", "NAT", "QPOS", "RAT", "Semiring", "get_semiring",
    "App", "Bag", "Bound", "FinSum", "Lam", "Plus", "Scale", "Var", "ZERO", "Zero",
    "parse_algebraic", "parse_resource", "render",
]
