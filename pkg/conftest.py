# conftest.py

import numpy as np
import pytest

from bergman_geometry.core import DomainSpec


@pytest.fixture
def disk():
    return DomainSpec.unit_disk()


@pytest.fixture
def annulus():
    return DomainSpec.annulus(0.2)


@pytest.fixture
def thin_annulus():
    return DomainSpec.annulus(1e-8)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def annulus_points(rng):
    def sample(r, count, low=None, high=0.95, max_angle=2 * np.pi):
        """Points with modulus in [low, high] (low defaults to r + 0.05) and angle in [0, max_angle]."""
        low = r + 0.05 if low is None else low
        radius = rng.uniform(low, high, count)
        angle = rng.uniform(0.0, max_angle, count)
        return radius * np.exp(1j * angle)

    return sample
