"""Shared fixtures for the test suite.

Band and policy construction is cheap but not free, and many tests share
the same handful of uncertainty sets, so those are cached per session.
"""

import pytest

from shotgun import (
    eps_shift_band,
    interval_band,
    make_cdf,
    sweep_policy,
    triangular,
    uniform,
)


@pytest.fixture(scope="session")
def uniform_cdf():
    return make_cdf(uniform(0.0, 1.0))


@pytest.fixture(scope="session")
def triangular_cdf():
    return make_cdf(triangular(0.0, 1.0, 0.5))


@pytest.fixture(scope="session")
def band_for(uniform_cdf):
    """Factory returning the uniform-reference band for a given half-width."""
    cache = {}

    def build(eps):
        if eps not in cache:
            cache[eps] = eps_shift_band(uniform_cdf, eps)
        return cache[eps]

    return build


@pytest.fixture(scope="session")
def policy_for(band_for):
    """Factory returning a 41-point policy for a given half-width."""
    cache = {}

    def build(eps, grid_n=41):
        key = (eps, grid_n)
        if key not in cache:
            cache[key] = sweep_policy(band_for(eps), grid_n=grid_n)
        return cache[key]

    return build


@pytest.fixture(scope="session")
def dirac_band():
    return interval_band(0.2, 0.7)
