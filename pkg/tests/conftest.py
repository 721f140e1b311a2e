import random

import pytest
from hypothesis import HealthCheck, settings

import rlw  # noqa: F401  raises the recursion limit
from rlw.generate import gen_random

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_resource(seed: int, max_size: int = 8, names=("x", "y")):
    rng = random.Random(seed)
    return gen_random("resource", rng.randint(1, max_size), seed=rng, names=list(names))


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if not REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for number in range(1, 14):
        terminalreporter.write_line(REPORT.get(number, f"criterion {number:2d} FAIL not run"))
