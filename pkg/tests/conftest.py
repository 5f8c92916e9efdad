"""Shared fixtures and hypothesis configuration."""

import pytest
from hypothesis import HealthCheck, settings

from ffsums import parse_field_spec

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def f2():
    return parse_field_spec("2")


@pytest.fixture(scope="session")
def f3():
    return parse_field_spec("3")


@pytest.fixture(scope="session")
def f4():
    return parse_field_spec("2^2")


@pytest.fixture(scope="session")
def f5():
    return parse_field_spec("5")


@pytest.fixture(scope="session")
def f7():
    return parse_field_spec("7")


@pytest.fixture(scope="session")
def f9():
    return parse_field_spec("3^2")
