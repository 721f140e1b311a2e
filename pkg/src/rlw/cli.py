"""Command-line interface: ``rlw <command> TERM ...``.

Exit status is 0 on a definite answer, 2 when fuel ran out, 1 on any error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import algebraic as alg
from .corpus import NAMED
from .errors import RLWError
from .generate import gen_random
from .parsing import parse_algebraic, parse_resource, render, to_json
from .reduction import full_reduct, left_reduct, nf
from .scalars import SEMIRINGS, Semiring, get_semiring
from .suites import SuiteConfig, verify_suite
from .syntax import FinSum, Node, canonicalize_alg
from .taylor import TruncationBound, taylor_coeff, taylor_truncated

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


def default_fuel() -> int:
    raw = os.environ.get("RLW_FUEL")
    if raw is None:
        return alg.DEFAULT_FUEL
    try:
        return int(raw)
    except ValueError:
        raise RLWError(f"RLW_FUEL must be an integer, got {raw!r}") from None


@dataclass
class Config:
    semiring: Semiring
    fuel: int
    max_size: int
    max_depth: int | None
    seed: int
    output: str | None  # None picks json for vectors and text otherwise


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would read as "unknown"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


@dataclass
class _Result:
    kind: str  # vector | term | scalar | verdict | text
    value: object
    exit: int = EXIT_OK


def _verdict(v: alg.Verdict, kind: str, show=lambda x: x) -> _Result:
    if v.definite:
        return _Result(kind, show(v.value))
    if v.no:
        return _Result("verdict", "no")
    return _Result("verdict", "unknown", EXIT_UNKNOWN)


def _format(r: _Result, cfg: Config) -> str:
    mode = cfg.output or ("json" if r.kind == "vector" else "text")
    if mode == "text":
        if r.kind == "vector":
            return render(r.value)
        if r.kind == "scalar":
            return cfg.semiring.format(r.value)
        return render(r.value) if isinstance(r.value, Node) else str(r.value)
    if r.kind == "vector":
        data = to_json(r.value)
    elif r.kind == "term":
        data = {"term": render(r.value)}
    elif r.kind == "scalar":
        data = {"semiring": cfg.semiring.name, "coeff": cfg.semiring.format(r.value)}
    elif r.kind == "verdict":
        data = {"verdict": r.value}
    else:
        data = {"result": r.value}
    return json.dumps(data, ensure_ascii=False)


def _resource_sum(text: str, s: Semiring) -> FinSum:
    value = parse_resource(text, s)
    return value if isinstance(value, FinSum) else FinSum.of(value, s)


def _bound(cfg: Config) -> TruncationBound:
    return TruncationBound(cfg.max_size, cfg.max_depth)


def _canon(text, cfg, args):
    return _Result("term", canonicalize_alg(parse_algebraic(text, cfg.semiring)))


def _expand(text, cfg, args):
    return _Result("vector", taylor_truncated(parse_algebraic(text, cfg.semiring), _bound(cfg), cfg.semiring))


def _coeff(text, cfg, args):
    m = parse_algebraic(text, cfg.semiring)
    t = parse_resource(args.target, cfg.semiring)
    if isinstance(t, FinSum):
        raise RLWError("the target must be a single resource term")
    return _Result("scalar", taylor_coeff(m, t, cfg.semiring))


def _nf_res(text, cfg, args):
    return _Result("vector", nf(_resource_sum(text, cfg.semiring)))


def _nf_taylor(text, cfg, args):
    m = parse_algebraic(text, cfg.semiring)
    return _verdict(alg.nf_taylor_truncated(m, _bound(cfg), cfg.fuel, cfg.semiring), "vector")


def _approx(text, cfg, args):
    return _verdict(alg.approximant(parse_algebraic(text, cfg.semiring), args.depth, cfg.fuel), "term")


def _solvable(text, cfg, args):
    v = alg.weak_solvable(parse_algebraic(text, cfg.semiring), cfg.fuel)
    return _verdict(v, "verdict", lambda _: "yes")


def _normalize(text, cfg, args):
    return _verdict(alg.normalize_alg(parse_algebraic(text, cfg.semiring), cfg.fuel), "term")


def _reduce(text, cfg, args):
    step = left_reduct if args.strategy == "left" else full_reduct
    eps = _resource_sum(text, cfg.semiring)
    for _ in range(args.steps):
        eps = step(eps)
    return _Result("vector", eps)


def _gen(text, cfg, args):
    return _Result("term", gen_random(text, args.size, args.vars, cfg.seed, cfg.semiring))


COMMANDS = {
    "canon": (_canon, "print the canonical form of an algebraic term"),
    "expand": (_expand, "truncated Taylor expansion"),
    "coeff": (_coeff, "one Taylor coefficient"),
    "nf-res": (_nf_res, "normal form of a resource expression or sum"),
    "nf-taylor": (_nf_taylor, "normal form of the truncated Taylor expansion"),
    "approx": (_approx, "normal approximant at a given depth"),
    "solvable": (_solvable, "weak solvability"),
    "normalize": (_normalize, "beta normal form of an algebraic term"),
    "reduce": (_reduce, "iterate left or full parallel reduction"),
    "gen": (_gen, "random term of kind resource, algebraic or pure"),
}


def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--semiring", choices=sorted(SEMIRINGS), default="rat")
    common.add_argument("--fuel", type=int, default=None,
                        help="step budget (default: $RLW_FUEL or %d)" % alg.DEFAULT_FUEL)
    common.add_argument("--max-size", type=int, default=10)
    common.add_argument("--max-depth", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", choices=["text", "json"], default=None)

    parser = _Parser(prog="rlw", description="Exact Taylor expansion and resource reduction.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "gen":
            p.add_argument("terms", nargs=1, metavar="KIND", choices=["resource", "algebraic", "pure"])
            p.add_argument("--size", type=int, default=5)
            p.add_argument("--vars", type=int, default=2)
            continue
        p.add_argument("terms", nargs="*", metavar="TERM", help="a term, or @name for a corpus term")
        p.add_argument("--file", help="read terms from a file, one per line; # starts a comment")
        if name == "coeff":
            p.add_argument("--target", required=True, help="resource term whose coefficient is wanted")
        if name == "approx":
            p.add_argument("--depth", type=int, required=True)
        if name == "reduce":
            p.add_argument("--strategy", choices=["left", "full"], default="left")
            p.add_argument("--steps", type=int, default=1)
    v = sub.add_parser("verify", parents=[common], help="run a suite of executable laws")
    v.add_argument("suite")
    return parser


def _resolve(text: str) -> str:
    """``@name`` stands for the bundled corpus term of that name."""
    if not text.startswith("@"):
        return text
    try:
        return NAMED[text[1:]]
    except KeyError:
        raise RLWError(f"no corpus term named {text[1:]!r}; choose from {', '.join(NAMED)}") from None


def _read_terms(path: str) -> list[str]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(line)
    return out


def _verify(args, cfg: Config, out) -> int:
    results = verify_suite(args.suite, SuiteConfig(seed=cfg.seed, max_size=cfg.max_size, fuel=cfg.fuel))
    if cfg.output == "json":
        for r in results:
            print(json.dumps({"law": r.law, "instances": r.instances, "failures": r.failures,
                              "passed": r.passed, "counterexample": r.counterexample}), file=out)
    else:
        for r in results:
            print(r.line(), file=out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_ERROR


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        cfg = Config(
            semiring=get_semiring(args.semiring),
            fuel=args.fuel if args.fuel is not None else default_fuel(),
            max_size=args.max_size,
            max_depth=args.max_depth,
            seed=args.seed,
            output=args.output,
        )
        if args.command == "verify":
            return _verify(args, cfg, out)
        terms = list(args.terms)
        if getattr(args, "file", None):
            terms += _read_terms(args.file)
        if not terms:
            print("rlw: error: no input term given", file=err)
            return EXIT_ERROR
        handler = COMMANDS[args.command][0]
        status = EXIT_OK
        for text in terms:
            r = handler(_resolve(text), cfg, args)
            print(_format(r, cfg), file=out)
            status = max(status, r.exit)
        return status
    except (RLWError, ValueError, OSError) as exc:
        print(f"rlw: error: {exc}", file=err)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
