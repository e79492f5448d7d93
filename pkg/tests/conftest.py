import math

import numpy as np
import pytest

from tangtorsion.atlas import sample_random
from tangtorsion.polygon import from_angles


def random_polygons(count: int, seed: int, n_range=(3, 12), concentration: float = 1.0):
    """Seeded random tangential polygons with mixed vertex counts and unit inradius."""
    rng = np.random.default_rng(seed)
    ns = rng.integers(n_range[0], n_range[1] + 1, size=count)
    out = []
    for n in range(n_range[0], n_range[1] + 1):
        k = int((ns == n).sum())
        if k:
            out.extend(sample_random(n, k, seed * 1000 + n, concentration))
    return out


@pytest.fixture(scope="session")
def polygons_1e4():
    return random_polygons(10_000, 7)


@pytest.fixture
def equilateral():
    return from_angles([math.pi / 3] * 3, 1 / math.sqrt(3))
