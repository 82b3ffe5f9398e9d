import random
from itertools import combinations

import pytest

from hyperpack import Hypergraph


def random_pair(rng: random.Random, n: int, k: int, m1: int, m2: int):
    return Hypergraph.random(n, k, m1, rng), Hypergraph.random(n, k, m2, rng)


def overlapping_pair(rng: random.Random, n: int, k: int, m1: int, m2: int):
    """Random pair sharing some edges, so the identity starts with conflicts."""
    all_edges = list(combinations(range(1, n + 1), k))
    e1 = rng.sample(all_edges, m1)
    shared = rng.randint(1, min(m1, m2))
    rest = [e for e in all_edges if e not in e1]
    e2 = rng.sample(e1, shared) + rng.sample(rest, min(m2 - shared, len(rest)))
    return Hypergraph.from_edges(n, k, e1), Hypergraph.from_edges(n, k, e2)


@pytest.fixture
def rng():
    return random.Random(12345)


# one summary line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
