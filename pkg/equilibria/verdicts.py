"""
Equilibrium checks.

Three characterizations of the same fixed points: every agent already holds
its weighted median (``is_equilibrium``), no agent can lower its dissonance
cost by moving (``is_nash``), and every threshold split of the opinions is a
pair of maximal cohesive sets (``classify``).
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from cohesion.sets import NodeSet, is_maximal_cohesive
from kernel.median import best_response_interval, med, opinion_vector
from networks.core import InfluenceNetwork


class VerdictKind(str, Enum):
    NOT_EQUILIBRIUM = "not_equilibrium"
    CONSENSUS = "consensus"
    DISAGREEMENT = "disagreement"


@dataclass(frozen=True)
class EquilibriumCheck:
    holds: bool
    witness: int | None = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class EquilibriumVerdict:
    kind: VerdictKind
    witness: int | None = None
    partitions: tuple[tuple[NodeSet, NodeSet], ...] = field(default_factory=tuple)

    @property
    def is_equilibrium(self) -> bool:
        return self.kind is not VerdictKind.NOT_EQUILIBRIUM

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "witness": self.witness,
            "partitions": [[list(lower), list(upper)] for lower, upper in self.partitions],
        }


def is_equilibrium(network: InfluenceNetwork, x) -> EquilibriumCheck:
    x = opinion_vector(x, network.n)
    for i in range(network.n):
        if med(i, x, network) != x[i]:
            return EquilibriumCheck(False, i)
    return EquilibriumCheck(True)


def is_nash(network: InfluenceNetwork, x) -> EquilibriumCheck:
    x = opinion_vector(x, network.n)
    for i in range(network.n):
        lower, upper = best_response_interval(i, x, network)
        if not lower <= x[i] <= upper:
            return EquilibriumCheck(False, i)
    return EquilibriumCheck(True)


def threshold_partitions(x) -> list[tuple[NodeSet, NodeSet]]:
    """``({i : x_i < y}, {i : x_i >= y})`` for one threshold ``y`` in each gap between distinct values."""
    x = np.asarray(x, dtype=np.float64)
    values = np.unique(x)
    partitions = []
    for upper_value in values[1:]:
        upper = x >= upper_value
        partitions.append(
            (tuple(int(i) for i in np.flatnonzero(~upper)), tuple(int(i) for i in np.flatnonzero(upper)))
        )
    return partitions


def classify(network: InfluenceNetwork, x) -> EquilibriumVerdict:
    x = opinion_vector(x, network.n)
    if np.all(x == x[0]):
        return EquilibriumVerdict(VerdictKind.CONSENSUS)

    partitions = threshold_partitions(x)
    for lower, upper in partitions:
        if not (is_maximal_cohesive(network, upper) and is_maximal_cohesive(network, lower)):
            return EquilibriumVerdict(VerdictKind.NOT_EQUILIBRIUM, witness=is_equilibrium(network, x).witness)
    return EquilibriumVerdict(VerdictKind.DISAGREEMENT, partitions=tuple(partitions))
