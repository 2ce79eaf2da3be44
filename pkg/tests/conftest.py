import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from findim.algebra import HomogeneousDerivation, delta, nabla

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# --- hypothesis strategies -------------------------------------------------------

small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def derivations(draw, n=None, lo=-2, hi=3):
    if n is None:
        n = draw(st.integers(1, 3))
    c = tuple(draw(st.lists(st.integers(lo, hi), min_size=n, max_size=n)))
    alpha = draw(
        st.lists(small_rationals, min_size=n, max_size=n).filter(lambda v: any(v))
    )
    return HomogeneousDerivation(c, tuple(alpha))


@st.composite
def derivation_tuples(draw, k):
    n = draw(st.integers(1, 3))
    return tuple(draw(derivations(n=n)) for _ in range(k))


# --- seeded random generators used by the randomized protocols --------------------


def random_derivation(rng: random.Random, n: int, lo=-2, hi=3) -> HomogeneousDerivation:
    c = [rng.randint(lo, hi) for _ in range(n)]
    while True:
        alpha = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)]
        if any(alpha):
            return HomogeneousDerivation(c, alpha)


def random_type1_set(rng: random.Random):
    n = rng.randint(1, 3)
    gens = []
    for _ in range(rng.randint(1, 3)):
        i = rng.randrange(n)
        a = [rng.randint(0, 2) for _ in range(n)]
        a[i] = 0
        gens.append(nabla(i, a))
    return gens


def random_type2_set(rng: random.Random):
    n = rng.randint(1, 3)
    gens = []
    for _ in range(rng.randint(1, 3)):
        p = [rng.randint(0, 3) for _ in range(n)]
        while True:
            beta = [rng.randint(-2, 2) for _ in range(n)]
            if any(beta):
                break
        gens.append(delta(p, beta))
    return gens


@pytest.fixture
def chain_r1():
    return [delta((1, 0), (1, -1)), delta((0, 1), (0, 1))]


@pytest.fixture
def chain_r2():
    return [delta((1, 0), (1, -2)), delta((0, 1), (0, 1))]


@pytest.fixture
def sl2():
    return [nabla(0, (0, 1)), nabla(1, (1, 0))]
