from enum import Enum

import numpy as np

from networks.core import InfluenceNetwork

from .exceptions import OutOfRange

# Upper edges of |x| for moderate, biased and radical; each bin includes its upper edge.
BIN_EDGES = np.array([0.25, 0.5, 0.75])


class OpinionCategory(str, Enum):
    MODERATE = "moderate"
    BIASED = "biased"
    RADICAL = "radical"
    EXTREME = "extreme"


CATEGORIES = tuple(OpinionCategory)


def category_codes(x) -> np.ndarray:
    """0 moderate ``|x| <= .25``, 1 biased ``<= .5``, 2 radical ``<= .75``, 3 extreme ``<= 1``."""
    x = np.asarray(x, dtype=np.float64)
    outside = np.flatnonzero(~(np.abs(x) <= 1.0))
    if outside.size:
        raise OutOfRange(int(outside[0]), float(x[outside[0]]))
    return np.searchsorted(BIN_EDGES, np.abs(x), side="left")


def categorize(x) -> list[OpinionCategory]:
    return [CATEGORIES[code] for code in category_codes(x)]


def extremist_focus(network: InfluenceNetwork, x) -> np.ndarray:
    """Share of each agent's non-self neighbors holding an extreme opinion (0 without such neighbors)."""
    extreme = category_codes(x) == 3
    coo = network.weights.tocoo()
    others = coo.row != coo.col
    rows, cols = coo.row[others], coo.col[others]
    counts = np.bincount(rows, minlength=network.n)
    extreme_counts = np.bincount(rows, weights=extreme[cols].astype(np.float64), minlength=network.n)
    return np.divide(extreme_counts, counts, out=np.zeros(network.n), where=counts > 0)
