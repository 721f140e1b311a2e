"""Surface syntax: parsers for both grammars, rendering, JSON vectors."""

from __future__ import annotations

import json
import re

from .errors import TermSyntaxError
from .scalars import RAT, Semiring, get_semiring
from .syntax import (
    App, Bag, Bound, FinSum, Lam, Node, Plus, Scale, Var, Zero, ZERO, close,
)

_TOKEN = re.compile(r"""
    (?P<space>\s+|\#[^\n]*)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<sym>[\\λ.()\[\],+*-])
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "space":
            value = m.group()
            if value == "λ":
                value = "\\"
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, semiring: Semiring):
        self.tokens = _tokenize(text)
        self.i = 0
        self.semiring = semiring

    def peek(self, offset=0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at(self, value, offset=0):
        kind, v, _ = self.peek(offset)
        return kind in ("sym", "num") and v == value

    def expect(self, value):
        kind, v, pos = self.next()
        if v != value or kind == "ident":
            raise TermSyntaxError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def fail(self, what):
        _, v, pos = self.peek()
        raise TermSyntaxError(f"expected {what}, found {v or 'end of input'!r}", pos)

    def finish(self):
        if self.peek()[0] != "end":
            self.fail("end of input")

    def literal_ahead(self) -> bool:
        """A scalar literal is a number (maybe signed) followed by '*'."""
        if self.at("-"):
            return self.peek(1)[0] == "num" and self.at("*", 2)
        return self.peek()[0] == "num" and self.at("*", 1)

    def literal(self):
        sign = ""
        if self.at("-"):
            self.next()
            sign = "-"
        kind, v, pos = self.next()
        self.expect("*")
        try:
            return self.semiring.parse(sign + v)
        except Exception as exc:
            exc.position = pos
            raise

    def binder(self) -> str:
        self.expect("\\")
        kind, name, pos = self.next()
        if kind != "ident":
            raise TermSyntaxError("expected a variable after the lambda", pos)
        self.expect(".")
        return name

    # algebraic grammar
    def alg_sum(self) -> Node:
        left = self.alg_scaled()
        while self.at("+"):
            self.next()
            left = Plus(left, self.alg_scaled())
        return left

    def alg_scaled(self) -> Node:
        if self.literal_ahead():
            a = self.literal()
            return Scale(a, self.alg_scaled())
        return self.alg_app()

    def alg_atom(self) -> tuple[Node | None, bool]:
        """Next atom, and whether it was a bare lambda (which ends the application)."""
        kind, v, pos = self.peek()
        if kind == "ident":
            self.next()
            return Var(v), False
        if kind == "num" and not self.at("*", 1):
            if v != "0":
                raise TermSyntaxError(f"number {v} must be followed by '*'", pos)
            self.next()
            return ZERO, False
        if self.at("("):
            self.next()
            inner = self.alg_sum()
            self.expect(")")
            return inner, False
        if self.at("\\"):
            name = self.binder()
            return close(self.alg_sum(), name, name), True
        return None, False

    def alg_app(self) -> Node:
        head, bare = self.alg_atom()
        if head is None:
            self.fail("a term")
        while not bare:
            arg, bare = self.alg_atom()
            if arg is None:
                break
            head = App(head, arg)
        return head

    # resource grammar
    def res_sum(self):
        parts = [self.res_scaled()]
        while self.at("+"):
            self.next()
            parts.append(self.res_scaled())
        if len(parts) == 1 and parts[0][0] is None:
            return parts[0][1]
        s = self.semiring
        pairs = []
        for coeff, e in parts:
            if isinstance(e, FinSum):
                pairs.extend((k, s.mul(coeff if coeff is not None else s.one, c)) for k, c in e.items())
            else:
                pairs.append((e, coeff if coeff is not None else s.one))
        return FinSum(s, pairs)

    def res_scaled(self):
        if self.literal_ahead():
            a = self.literal()
            coeff, e = self.res_scaled()
            return (a if coeff is None else self.semiring.mul(a, coeff)), e
        if self.peek()[0] == "num" and self.peek()[1] == "0":
            self.next()
            return None, FinSum(self.semiring)
        return None, self.res_term()

    def res_term(self) -> Node:
        kind, v, pos = self.peek()
        if kind == "ident":
            self.next()
            head = Var(v)
        elif self.at("("):
            self.next()
            head = self.res_term()
            self.expect(")")
        elif self.at("\\"):
            name = self.binder()
            return close(self.res_term(), name, name)
        elif self.at("["):
            return self.res_bag()
        else:
            self.fail("a resource term")
        while self.at("["):
            head = App(head, self.res_bag())
        return head

    def res_bag(self) -> Bag:
        self.expect("[")
        items = []
        if not self.at("]"):
            items.append(self.res_term())
            while self.at(","):
                self.next()
                items.append(self.res_term())
        self.expect("]")
        if any(isinstance(i, Bag) for i in items):
            self.fail("a term inside a monomial")
        return Bag(items)


def parse_algebraic(text: str, semiring: Semiring = RAT) -> Node:
    p = _Parser(text, semiring)
    m = p.alg_sum()
    p.finish()
    return m


def parse_resource(text: str, semiring: Semiring = RAT):
    """A single resource expression, or a FinSum when the text is a sum."""
    p = _Parser(text, semiring)
    e = p.res_sum()
    p.finish()
    return e


def parse_resource_sum(text: str, semiring: Semiring = RAT) -> FinSum:
    e = parse_resource(text, semiring)
    return e if isinstance(e, FinSum) else FinSum.of(e, semiring)


# ---------------------------------------------------------------- rendering

def _fresh_display(hint: str, avoid: set) -> str:
    base = hint if hint and not hint.startswith("%") else "x"
    if base not in avoid:
        return base
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


class _Renderer:
    def __init__(self, free: frozenset, semiring: Semiring | None):
        self.free = set(free)
        self.scope: list[str] = []
        self.semiring = semiring

    def scalar(self, a) -> str:
        if self.semiring is not None:
            return self.semiring.format(a)
        return RAT.format(a) if not isinstance(a, bool) else str(int(a))

    def go(self, n: Node, tail: bool = True) -> str:
        if isinstance(n, Var):
            return n.name
        if isinstance(n, Bound):
            if n.index >= len(self.scope):
                return f"#{n.index}"
            return self.scope[-1 - n.index]
        if isinstance(n, Zero):
            return "0"
        if isinstance(n, Lam):
            name = _fresh_display(n.hint, set(n.fv) | set(self.scope))
            self.scope.append(name)
            try:
                text = f"\\{name}. {self.go(n.body, True)}"
            finally:
                self.scope.pop()
            return text if tail else f"({text})"
        if isinstance(n, Bag):
            return "[" + ", ".join(self.go(i, True) for i in n.items) + "]"
        if isinstance(n, App):
            if isinstance(n.arg, Bag):
                fun = self.go(n.fun, True)
                if isinstance(n.fun, Lam):
                    fun = f"({fun})"
                return fun + self.go(n.arg)
            fun = self.go(n.fun, False)
            if isinstance(n.fun, (Scale, Plus)):
                fun = f"({self.go(n.fun, True)})"
            if isinstance(n.arg, (Var, Bound, Zero)):
                arg = self.go(n.arg)
            else:
                arg = f"({self.go(n.arg, True)})"
            return f"{fun} {arg}"
        if isinstance(n, Scale):
            inner = f"({self.go(n.term, True)})" if isinstance(n.term, Plus) else self.go(n.term, tail)
            return f"{self.scalar(n.coeff)} * {inner}"
        if isinstance(n, Plus):
            right = f"({self.go(n.right, True)})" if isinstance(n.right, Plus) else self.go(n.right, tail)
            return f"{self.go(n.left, False)} + {right}"
        raise TypeError(f"cannot render {type(n).__name__}")


def render(value, semiring: Semiring | None = None) -> str:
    if isinstance(value, FinSum):
        if not value:
            return "0"
        s = value.semiring
        parts = []
        for e, c in value.items():
            body = _Renderer(e.fv, s).go(e, True)
            parts.append(body if c == s.one else f"{s.format(c)} * {body}")
        return " + ".join(parts)
    return _Renderer(value.fv, semiring).go(value, True)


def to_json(fs: FinSum) -> dict:
    return {
        "semiring": fs.semiring.name,
        "entries": [{"term": render(e), "coeff": fs.semiring.format(c)} for e, c in fs.items()],
    }


def from_json(data) -> FinSum:
    if isinstance(data, str):
        data = json.loads(data)
    s = get_semiring(data["semiring"])
    pairs = []
    for entry in data["entries"]:
        e = parse_resource(entry["term"], s)
        if isinstance(e, FinSum):
            raise ValueError(f"entry is not a single expression: {entry['term']!r}")
        pairs.append((e, s.parse(entry["coeff"])))
    return FinSum(s, pairs)
