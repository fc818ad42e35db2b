"""Shared fixtures for the orthozeros test suite."""

import pytest

from orthozeros.measure import chebyshev, legendre, load_measure
from orthozeros.orthopoly import build_recurrence


@pytest.fixture(scope="session")
def legendre_spec():
    return legendre()


@pytest.fixture(scope="session")
def legendre_table(legendre_spec):
    return build_recurrence(legendre_spec, 600)


@pytest.fixture(scope="session")
def chebyshev_spec():
    return chebyshev()


@pytest.fixture(scope="session")
def chebyshev_table(chebyshev_spec):
    return build_recurrence(chebyshev_spec, 600)


@pytest.fixture(scope="session")
def two_intervals_spec():
    return load_measure("two-intervals")


@pytest.fixture(scope="session")
def two_intervals_table(two_intervals_spec):
    return build_recurrence(two_intervals_spec, 100)


@pytest.fixture(scope="session")
def abs_spec():
    return load_measure("abs")


@pytest.fixture(scope="session")
def abs_table(abs_spec):
    return build_recurrence(abs_spec, 60)
