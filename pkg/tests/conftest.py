import random
from fractions import Fraction

import pytest
from hypothesis import assume, strategies as st

from diamondrate import DemandFunction, DemandFunctionError, load_fixture


@pytest.fixture(scope="session")
def gf3():
    return load_fixture("gf3")


@pytest.fixture(scope="session")
def arith():
    return load_fixture("arithsum")


@pytest.fixture(scope="session")
def gf2():
    return load_fixture("gf2sum")


@pytest.fixture(scope="session", params=["gf3", "arithsum", "gf2sum"])
def fixture_fn(request):
    return load_fixture(request.param)


@st.composite
def demand_functions(draw, max_a=3, max_b=4):
    a = draw(st.integers(2, max_a))
    b = draw(st.integers(2, max_b))
    table = draw(st.lists(st.integers(0, b - 1), min_size=a ** 3, max_size=a ** 3))
    try:
        return DemandFunction(a, b, tuple(table))
    except DemandFunctionError:
        assume(False)


@st.composite
def rational_pmfs(draw, max_len=8, max_weight=20):
    counts = draw(st.lists(st.integers(0, max_weight), min_size=1, max_size=max_len))
    assume(sum(counts) > 0)
    total = sum(counts)
    return [Fraction(c, total) for c in counts]


def robin_hood(p, steps, rng, pad=0):
    """Random pmf majorized by ``p``: repeated rich-to-poor transfers that never
    reverse the order of the pair involved."""
    q = list(p) + [Fraction(0)] * pad
    for _ in range(steps):
        i, j = rng.randrange(len(q)), rng.randrange(len(q))
        if q[i] < q[j]:
            i, j = j, i
        gap = q[i] - q[j]
        if gap == 0:
            continue
        delta = gap * Fraction(rng.randint(0, 8), 16)
        q[i] -= delta
        q[j] += delta
    return q


def random_pmf(rng, max_len=64, max_weight=50):
    n = rng.randint(1, max_len)
    counts = [rng.randint(0, max_weight) for _ in range(n)]
    if sum(counts) == 0:
        counts[0] = 1
    total = sum(counts)
    return [Fraction(c, total) for c in counts]


@pytest.fixture
def rng():
    return random.Random(20161010)
