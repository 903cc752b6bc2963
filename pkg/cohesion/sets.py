"""
Cohesive sets.

A set ``M`` is cohesive when every member puts at least half of its weight
inside ``M``. Its cohesive expansion keeps adding outsiders that put strictly
more than half of their weight inside; a cohesive set with no such outsider is
maximal. The ``>=`` / ``>`` asymmetry is part of the definitions.
"""

import logging

import numpy as np

from networks.core import InfluenceNetwork
from networks.subsets import subset_sums

from .exceptions import EmptySet, TooLarge

logger = logging.getLogger(__name__)

ENUMERATION_LIMIT = 22

NodeSet = tuple[int, ...]


def node_set(members, n: int) -> NodeSet:
    result = tuple(sorted({int(m) for m in members}))
    if result and not (0 <= result[0] and result[-1] < n):
        raise ValueError(f"node set {result} is not a subset of 0..{n - 1}")
    return result


def membership(network: InfluenceNetwork, members) -> np.ndarray:
    mask = np.zeros(network.n, dtype=bool)
    mask[list(node_set(members, network.n))] = True
    return mask


def in_set_weight(network: InfluenceNetwork, mask: np.ndarray) -> np.ndarray:
    """``sum_{j in M} w_ij`` for every agent ``i``."""
    return network.weights @ mask.astype(np.float64)


def is_cohesive(network: InfluenceNetwork, members) -> bool:
    mask = membership(network, members)
    if not mask.any():
        raise EmptySet()
    return bool(np.all(in_set_weight(network, mask)[mask] >= 0.5))


def is_maximal_cohesive(network: InfluenceNetwork, members) -> bool:
    mask = membership(network, members)
    if not mask.any():
        raise EmptySet()
    inside = in_set_weight(network, mask)
    return bool(np.all(inside[mask] >= 0.5) and not np.any(inside[~mask] > 0.5))


def cohesive_expansion(network: InfluenceNetwork, members, order=None) -> NodeSet:
    """
    Close ``members`` under adding outsiders with strictly more than half their weight inside.

    Without ``order`` every qualifying outsider joins in the same sweep. With
    ``order`` (a sequence of agents, earlier means higher priority) outsiders
    join one at a time. The result does not depend on the order.
    """
    mask = membership(network, members)

    if order is None:
        while True:
            joining = ~mask & (in_set_weight(network, mask) > 0.5)
            if not joining.any():
                break
            mask |= joining
    else:
        priority = [int(i) for i in order]
        while True:
            qualifying = ~mask & (in_set_weight(network, mask) > 0.5)
            chosen = next((i for i in priority if qualifying[i]), None)
            if chosen is None:
                chosen = next((int(i) for i in np.flatnonzero(qualifying)), None)
            if chosen is None:
                break
            mask[chosen] = True

    return tuple(int(i) for i in np.flatnonzero(mask))


def enumerate_maximal_cohesive(network: InfluenceNetwork, limit: int = ENUMERATION_LIMIT) -> list[NodeSet]:
    """
    Every maximal cohesive set, by testing all ``2**n - 1`` nonempty subsets.

    Subsets are bitmasks (bit ``i`` set means agent ``i`` is a member) and the
    result is ordered by mask value.
    """
    n = network.n
    if n > limit:
        raise TooLarge(n, limit)

    masks = np.arange(2**n, dtype=np.int64)
    cohesive = np.ones(masks.size, dtype=bool)
    maximal = np.ones(masks.size, dtype=bool)
    dense = network.dense()
    for i in range(n):
        sums = subset_sums(dense[i])
        member = ((masks >> i) & 1).astype(bool)
        cohesive &= ~member | (sums >= 0.5)
        maximal &= member | ~(sums > 0.5)

    found = np.flatnonzero(cohesive & maximal)
    found = found[found != 0]
    logger.debug("Enumerated %d maximal cohesive sets over %d subsets", found.size, masks.size - 1)
    return [tuple(i for i in range(n) if (int(mask) >> i) & 1) for mask in found]
