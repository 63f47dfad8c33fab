import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from fasratio.graph import Digraph, VertexOrdering


def cycle(n):
    return Digraph.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def random_dag(n, p, seed):
    """Random arcs oriented along a shuffled vertex order."""
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    arcs = [(int(order[i]), int(order[j])) for i in range(n) for j in range(i + 1, n)
            if rng.random() < p]
    return Digraph.from_arcs(n, arcs)


def enumerate_ratio_tail(K, p, epsilon):
    """Pr(X - rY >= 0) by summing over all 2^(2K) Bernoulli configurations.

    ``r = 1 + epsilon`` is compared exactly, reading epsilon as its decimal.
    """
    r = 1 + Fraction(str(epsilon))
    total = 0.0
    for bits in itertools.product((0, 1), repeat=2 * K):
        x = sum(bits[:K])
        y = sum(bits[K:])
        if x >= r * y:
            ones = x + y
            total += p ** ones * (1 - p) ** (2 * K - ones)
    return total


def double_sum_ratio_tail(K, p, epsilon):
    """Pr(X >= rY) as a double sum of binomial masses from ``math.comb``."""
    r = 1 + Fraction(str(epsilon))
    pmf = [math.comb(K, k) * p ** k * (1 - p) ** (K - k) for k in range(K + 1)]
    return math.fsum(pmf[x] * pmf[y] for x in range(K + 1) for y in range(K + 1) if x >= r * y)


@st.composite
def digraphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    cells = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    adj = np.array(cells, dtype=bool).reshape(n, n)
    np.fill_diagonal(adj, False)
    return Digraph(adj)


@st.composite
def digraph_and_ordering(draw, min_n=1, max_n=7):
    d = draw(digraphs(min_n, max_n))
    perm = draw(st.permutations(range(d.n)))
    return d, VertexOrdering(tuple(perm))


@pytest.fixture
def three_cycle():
    return cycle(3)


_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one pass/fail line for the acceptance summary."""

    def record(label, ok, detail=""):
        _ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())
        assert ok, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
