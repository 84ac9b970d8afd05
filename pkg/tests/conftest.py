import random
import sys

import pytest
from hypothesis import HealthCheck, settings

from qshuffle import from_kac_moody, from_quiver

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")

CYCLIC = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
RANK3_D = [[4, -6, -10], [-6, 6, -6], [-10, -6, 4]]


@pytest.fixture
def sl2():
    return from_kac_moody([[2]])


@pytest.fixture
def a2():
    return from_kac_moody([[2, -1], [-1, 2]])


@pytest.fixture
def cyclic3():
    return from_quiver(CYCLIC, vertices=["i1", "i2", "i3"])


@pytest.fixture
def jordan():
    return from_quiver([[1]])


@pytest.fixture
def acyclic2():
    return from_quiver([[0, 1], [0, 0]])


@pytest.fixture
def rank3():
    return from_kac_moody(RANK3_D)


@pytest.fixture
def rng():
    return random.Random(20261018)


ALL_DATA = {
    "sl2": lambda: from_kac_moody([[2]]),
    "a2": lambda: from_kac_moody([[2, -1], [-1, 2]]),
    "cyclic3": lambda: from_quiver(CYCLIC),
    "jordan": lambda: from_quiver([[1]]),
    "acyclic2": lambda: from_quiver([[0, 1], [0, 0]]),
}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, _, _ in mod.CRITERIA:
        if name in mod.RESULTS:
            terminalreporter.write_line(mod.RESULTS[name])
