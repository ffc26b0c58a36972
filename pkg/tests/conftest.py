import pytest
from hypothesis import settings

from betafreq.field import BetaParams

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def golden():
    return BetaParams.multinacci(2)


@pytest.fixture(scope="session")
def trib():
    return BetaParams.multinacci(3)
