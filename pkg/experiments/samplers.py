"""
Initial-opinion distributions.
"""

import numpy as np

from dynamics.seeding import rng_for

from .exceptions import UnknownDistribution


def _uniform(rng, n):
    return rng.random(n)


def _beta22(rng, n):
    return rng.beta(2, 2, n)


def _beta27(rng, n):
    return rng.beta(2, 7, n)


def _bimodal(rng, n):
    y = rng.beta(2, 10, n)
    return np.where(rng.random(n) < 0.5, y, 1.0 - y)


def _trimodal(rng, n):
    y = rng.beta(2, 17, n)
    z = rng.beta(12, 12, n)
    pick = rng.choice(3, size=n, p=[0.33, 0.33, 0.34])
    return np.choose(pick, [y, 1.0 - y, z])


def _uniform_symmetric(rng, n):
    return rng.uniform(-1.0, 1.0, n)


DISTRIBUTIONS = {
    "uniform": _uniform,
    "beta22": _beta22,
    "beta27": _beta27,
    "bimodal": _bimodal,
    "trimodal": _trimodal,
    "uniform_symmetric": _uniform_symmetric,
}

RANGES = {name: (0.0, 1.0) for name in DISTRIBUTIONS} | {"uniform_symmetric": (-1.0, 1.0)}


def sample_initial(distribution: str, n: int, seed: int) -> np.ndarray:
    """``n`` i.i.d. opinions from ``distribution``, reproducible per seed."""
    try:
        sampler = DISTRIBUTIONS[distribution]
    except KeyError:
        raise UnknownDistribution(distribution) from None
    return sampler(rng_for(seed), n)
