import pytest
from hypothesis import HealthCheck, settings

from unipred.core import BINARY, SINGLETON, Observation

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def binary():
    return BINARY


@pytest.fixture
def singleton():
    return SINGLETON


def obs_strategy(space):
    from hypothesis import strategies as st

    return st.builds(Observation, st.integers(0, space.arity - 1), st.integers(0, 1))


def seq_strategy(space, max_size=8):
    from hypothesis import strategies as st

    return st.lists(obs_strategy(space), max_size=max_size).map(tuple)
