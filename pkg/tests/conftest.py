import os

import pytest
from hypothesis import HealthCheck, settings

from heytinglab import corpus

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def chain():
    """The 3-element chain frame: lower sets of 0 <= 1."""
    return corpus.frame("chain2")


@pytest.fixture(scope="session")
def frames():
    return corpus.all_frames()
