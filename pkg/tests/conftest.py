import numpy as np
import pytest
from hypothesis import strategies as st

from lqnet.game import GameParams


@pytest.fixture
def params():
    return GameParams()


@pytest.fixture
def lb_params():
    return GameParams.link_benefit_treatment()


def random_intentions(rng, n=5, p=0.4):
    g = rng.random((n, n)) < p
    np.fill_diagonal(g, False)
    return g


def random_network(rng, n=5, p=0.5):
    upper = np.triu(rng.random((n, n)) < p, 1)
    return upper | upper.T


@st.composite
def game_instances(draw, n=5):
    """(efforts, intentions) with efforts in [0, 20]."""
    efforts = np.array(draw(st.lists(st.floats(0, 20, allow_nan=False), min_size=n, max_size=n)))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    g = np.array(bits, dtype=bool).reshape(n, n)
    np.fill_diagonal(g, False)
    return efforts, g
