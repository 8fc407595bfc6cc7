import itertools
import random

import pytest

from sparseptf.core import BooleanFunction

ACCEPTANCE_LINES: list[str] = []


def all_functions(n):
    return [BooleanFunction.from_index(n, F) for F in range(1 << (1 << n))]


def random_functions(n, count, seed):
    rng = random.Random(seed)
    return [BooleanFunction.from_index(n, rng.getrandbits(1 << n)) for _ in range(count)]


def submasks(mask):
    """Every subset of ``mask`` (including 0 and mask itself)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@pytest.fixture
def xor():
    # the +1/-1 XOR of the examples: f = [+1, -1, -1, +1]
    return BooleanFunction.from_values([1, -1, -1, 1])


@pytest.fixture
def and2():
    return BooleanFunction.from_values([1, -1, -1, -1])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


__all__ = ["all_functions", "random_functions", "submasks", "itertools"]
