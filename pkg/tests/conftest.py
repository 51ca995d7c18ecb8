import os

import pytest
from hypothesis import HealthCheck, settings

from dowling_nested.groups import cyclic_group, dihedral_group
from dowling_nested.state import config


settings.register_profile("ci", settings(
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
))

settings.register_profile("dev", settings(
    max_examples=30,
    deadline=None,
))

settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dev"))


@pytest.fixture
def z1():
    return cyclic_group(1)


@pytest.fixture
def z2():
    return cyclic_group(2)


@pytest.fixture
def z3():
    return cyclic_group(3)


@pytest.fixture
def s3():
    return dihedral_group(3)


@pytest.fixture(autouse=True)
def _reset_config():
    """Tests that touch the global config get it back afterwards."""
    saved = (config.size_cap, config.debug, config.trials)
    yield
    config.size_cap, config.debug, config.trials = saved
