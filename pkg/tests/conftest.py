from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qpmspace.io import load_fixture
from qpmspace.qpm import QPM, SIERPINSKI, shortest_path_closure
from qpmspace.space import FiniteSpace, topology_from_subbasis


@pytest.fixture
def disc2():
    return load_fixture("FIX_DISC2")


@pytest.fixture
def sierp():
    return load_fixture("FIX_SIERP")


@pytest.fixture
def chain3():
    return load_fixture("FIX_CHAIN3")


@pytest.fixture
def sierpinski():
    return SIERPINSKI


def indiscrete(n, leq=()):
    return FiniteSpace.build(n, [(), tuple(range(n))], leq)


def discrete(n, leq=()):
    return FiniteSpace.build(n, topology_from_subbasis(n, [1 << x for x in range(n)]), leq)


@st.composite
def spaces(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_n, max_n))
    sets = st.integers(0, (1 << n) - 1)
    subbasis = draw(st.lists(sets, max_size=n + 1))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n + 1))
    space = FiniteSpace.build(n, topology_from_subbasis(n, subbasis), pairs)
    return space


rationals = st.builds(Fraction, st.integers(0, 12), st.integers(1, 6))


@st.composite
def qpms(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    rows = draw(st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n))
    return shortest_path_closure(rows)


def as_qpm(rows):
    return QPM.from_rows(rows)
