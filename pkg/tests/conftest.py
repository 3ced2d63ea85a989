import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from handlebody._tensor import ZERO, Tensor
from handlebody.groupring import GR
from handlebody.words import reduce

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

G = 3


def signed(g):
    return st.sampled_from([s for i in range(1, g + 1) for s in (i, -i)])


def fwords(g=G, max_size=3):
    return st.lists(signed(g), max_size=max_size).map(reduce)


def piwords(g=G, max_size=6):
    return st.lists(signed(2 * g), max_size=max_size).map(reduce)


def letters(g=G, max_size=2):
    return st.tuples(st.integers(1, g), fwords(g, max_size))


def aelts(g=G, max_terms=3):
    term = st.tuples(letters(g), st.integers(-3, 3).filter(bool))
    return st.lists(term, min_size=1, max_size=max_terms).map(
        lambda ts: sum((Tensor.letter(x, c) for x, c in ts), ZERO)).filter(bool)


def rings(g=G, max_terms=3):
    term = st.tuples(fwords(g, 2), st.integers(-3, 3))
    return st.lists(term, max_size=max_terms).map(GR)


@pytest.fixture
def g():
    return G
