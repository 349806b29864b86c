import pytest
from hypothesis import HealthCheck, settings

import isofamily as iso

settings.register_profile(
    "suite",
    max_examples=20,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def ho():
    """Harmonic oscillator on the reference grid used throughout."""
    return iso.harmonic_oscillator(iso.make_grid(-10.0, 10.0, 4001))


@pytest.fixture(scope="session")
def ho_coarse():
    return iso.harmonic_oscillator(iso.make_grid(-10.0, 10.0, 1001))


@pytest.fixture(scope="session")
def well():
    return iso.reflectionless_well(iso.make_grid(-12.0, 12.0, 4001))
