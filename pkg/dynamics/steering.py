"""
Constructive update sequences that drive any initial state to an equilibrium.

Distinct initial values ``y_1 < ... < y_r`` are processed as layers. For layer
``l`` agents holding a value ``<= y_l`` form side A and the rest side B.
First every A agent with more than half its weight on B is activated (it moves
to B), then every B agent with more than half its weight on A is activated (it
moves to A), which is the cohesive expansion of what is left of A. After the
last layer every agent sits at its weighted median.
"""

import logging

import numpy as np

from equilibria.verdicts import is_equilibrium
from kernel.median import med, opinion_vector
from networks.core import InfluenceNetwork

logger = logging.getLogger(__name__)


def _weight_on(network: InfluenceNetwork, mask: np.ndarray) -> np.ndarray:
    return network.weights @ mask.astype(np.float64)


def steering_sequence(x0, network: InfluenceNetwork) -> list[int]:
    """Agents to activate, in order, so that the weighted-median dynamics reaches an equilibrium."""
    x = opinion_vector(x0, network.n)
    if is_equilibrium(network, x):
        return []

    sequence: list[int] = []
    for y in np.unique(x)[:-1]:
        low = x <= y
        for leaving_low in (True, False):
            while True:
                if leaving_low:
                    candidates = np.flatnonzero(low & (_weight_on(network, ~low) > 0.5))
                else:
                    candidates = np.flatnonzero(~low & (_weight_on(network, low) > 0.5))
                if candidates.size == 0:
                    break
                i = int(candidates[0])
                x[i] = med(i, x, network)
                low[i] = x[i] <= y
                sequence.append(i)

    if not is_equilibrium(network, x):
        logger.warning("Steering sequence of length %d ended off equilibrium; the weights are not generic", len(sequence))
    return sequence
