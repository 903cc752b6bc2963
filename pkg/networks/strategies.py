"""
Hypothesis strategies for random influence networks and opinion vectors.
"""

import numpy as np
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from .core import InfluenceNetwork, normalize_rows

weights = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def raw_matrices(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    raw = draw(arrays(np.float64, (n, n), elements=weights))
    keep = draw(arrays(np.bool_, (n, n)))
    raw = np.where(keep, raw, 0.0)
    raw[np.arange(n), np.arange(n)] += 0.05
    return raw


@st.composite
def networks(draw, min_n: int = 1, max_n: int = 8) -> InfluenceNetwork:
    return normalize_rows(draw(raw_matrices(min_n=min_n, max_n=max_n)))


@st.composite
def generic_networks(draw, min_n: int = 1, max_n: int = 8) -> InfluenceNetwork:
    """Networks with weights from a seeded uniform law, so no row subset sums to one half."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    rng = np.random.default_rng(seed)
    raw = (1.0 - rng.random((n, n))) * (rng.random((n, n)) < 0.7)
    raw[np.arange(n), np.arange(n)] = 1.0 - rng.random(n)
    return normalize_rows(raw)


def opinions(n: int, values=None):
    elements = st.sampled_from(values) if values is not None else st.floats(-10, 10, allow_nan=False)
    return st.lists(elements, min_size=n, max_size=n).map(lambda x: np.array(x, dtype=np.float64))


@st.composite
def network_and_opinions(draw, min_n: int = 1, max_n: int = 8, values=None, generic: bool = True):
    network = draw(generic_networks(min_n, max_n) if generic else networks(min_n, max_n))
    return network, draw(opinions(network.n, values))
