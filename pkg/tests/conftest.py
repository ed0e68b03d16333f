import numpy as np
import pytest

from ramseylab.ground_set import GroundSet


def as_set(a):
    return set(a.members())


def from_set(s, length):
    return GroundSet.from_members(sorted(s), length)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_set(rng, length, p=None):
    p = rng.uniform(0.05, 0.95) if p is None else p
    return GroundSet(rng.random(length) < p)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
