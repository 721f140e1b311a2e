"""Acceptance criteria 1 to 13, one test each.

Every test records a PASS/FAIL line; the lines are printed at the end of the
pytest run (see conftest.py) and when this file is executed directly.
"""

from __future__ import annotations

import time
from pathlib import Path

import pytest

from rlw import suites
from rlw.corpus import NORMALIZABLE, PURE_NORMALIZABLE

GOLDEN = Path(__file__).parent / "golden"
REPORT: dict[int, str] = {}


def _record(number: int, title: str, limit: float, run) -> None:
    start = time.perf_counter()
    results = run()
    elapsed = time.perf_counter() - start
    ok = all(r.passed for r in results) and elapsed < limit
    detail = "; ".join(f"{r.law} ({r.instances} instances, {r.failures} failures)" for r in results)
    bad = [r.counterexample for r in results if r.counterexample]
    if bad:
        detail += f"; first counterexample: {bad[0]}"
    REPORT[number] = f"criterion {number:2d} {'PASS' if ok else 'FAIL'} {title} [{elapsed:.1f}s < {limit:g}s]: {detail}"
    print(REPORT[number])
    assert all(r.passed for r in results), detail
    assert elapsed < limit, f"took {elapsed:.1f}s"


def test_01_uniform_coefficients():
    _record(1, "uniform coefficients on pure terms", 60,
            lambda: [suites.check_uniform_coefficients(n=200, max_size=8, bound=10)])


def test_02_normalization_commutes_with_expansion():
    assert len(NORMALIZABLE) >= 15
    assert r"1/2 * ((\x. x) y) + 1/3 * ((\x. \y. x) a b)" in NORMALIZABLE
    _record(2, "normal form of the expansion", 60,
            lambda: [suites.check_nf_commutation(NORMALIZABLE, bound=10)])


def test_03_omega_vanishes():
    _record(3, "Omega vanishes", 1, lambda: [suites.check_omega(12)])


def test_04_approximants():
    _record(4, "approximant convergence", 60, lambda: [suites.check_approximants(size=10)])


def test_05_size_bounds():
    _record(5, "reduct size bounds", 60, lambda: suites.check_size_bounds(n=500, max_size=12))


def test_06_diamond():
    _record(6, "diamond through the full reduct", 120, lambda: suites.check_diamond(n=100, max_size=7))


def test_07_calculus_identities():
    _record(7, "calculus identities", 120, lambda: [
        suites.check_schwarz(300), suites.check_lsubst_commutation(300),
        suites.check_taylor_substitution(300, size=8)])


def test_08_growth_bound():
    _record(8, "growth bound properties", 5, lambda: suites.check_growth_bound(6))


def test_09_splitting():
    _record(9, "additive splitting", 10, lambda: [suites.check_splitting(1000)])


def test_10_bool_collapse():
    _record(10, "boolean support collapse", 1, lambda: [suites.check_bool_collapse(8)])


def test_11_conservativity():
    assert len(PURE_NORMALIZABLE) * (len(PURE_NORMALIZABLE) - 1) // 2 >= 20
    _record(11, "conservativity", 60, lambda: [suites.check_conservativity(bound=10)])


def test_12_looping_term():
    _record(12, "looping term", 60, suites.check_mloop)


def test_13_golden_files():
    import sys
    sys.path.insert(0, str(GOLDEN))
    from regenerate import capture, cases

    def run():
        res = suites.LawResult("CLI output matches the stored golden file")
        for name, argv in cases():
            expected = (GOLDEN / f"{name}.out").read_text(encoding="utf-8")
            res.check(capture(argv) == expected, name)
        return [res]

    _record(13, "golden files", 10, run)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
