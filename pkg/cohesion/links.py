"""
Decisive links and the decisive subgraph.

A link ``(i, j)`` is decisive when ``j``'s opinion can make a difference to
``i``'s weighted median: some subset ``S`` of ``i``'s other neighbors has
``sum_S w_ik`` in the half-open window ``[1/2 - w_ij, 1/2)``.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import networkx as nx
import numpy as np

from networks.core import InfluenceNetwork
from networks.subsets import EXACT_LIMIT, SearchStatus, Window, find_subset_in_window, subset_sums

from .exceptions import UncheckedLinks

logger = logging.getLogger(__name__)


class LinkStatus(str, Enum):
    DECISIVE = "decisive"
    INDECISIVE = "indecisive"
    UNCHECKED = "unchecked"


@dataclass(frozen=True)
class DecisiveClassification:
    n: int
    statuses: dict[tuple[int, int], LinkStatus]

    def _with(self, status: LinkStatus) -> list[tuple[int, int]]:
        return [link for link, value in self.statuses.items() if value is status]

    @property
    def decisive(self) -> list[tuple[int, int]]:
        return self._with(LinkStatus.DECISIVE)

    @property
    def indecisive(self) -> list[tuple[int, int]]:
        return self._with(LinkStatus.INDECISIVE)

    @property
    def unchecked(self) -> list[tuple[int, int]]:
        return self._with(LinkStatus.UNCHECKED)

    @property
    def fully_checked(self) -> bool:
        return not self.unchecked

    def __getitem__(self, link: tuple[int, int]) -> LinkStatus:
        return self.statuses[link]


def classify_row(weights) -> list[LinkStatus]:
    """Status of every position in one row's positive weights."""
    weights = np.asarray(weights, dtype=np.float64)
    k = weights.size
    statuses = []

    if k <= EXACT_LIMIT:
        sums = subset_sums(weights)
        for p, w in enumerate(weights):
            # Subset sums without position p: bit p of the subset index is clear.
            without = sums.reshape(2 ** (k - 1 - p), 2, 2**p)[:, 0, :]
            hit = np.any((without >= 0.5 - w) & (without < 0.5))
            statuses.append(LinkStatus.DECISIVE if hit else LinkStatus.INDECISIVE)
        return statuses

    for p, w in enumerate(weights):
        search = find_subset_in_window(np.delete(weights, p), Window(0.5 - w, 0.5, high_closed=False))
        if search.status is SearchStatus.UNCHECKED:
            statuses.append(LinkStatus.UNCHECKED)
        else:
            statuses.append(LinkStatus.DECISIVE if search.found else LinkStatus.INDECISIVE)
    return statuses


def classify_links(network: InfluenceNetwork, threads: int = 1) -> DecisiveClassification:
    """Classify every positive link; rows run in parallel and are merged in row order."""

    def row_statuses(i):
        return classify_row(network.row(i)[1])

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_row = list(pool.map(row_statuses, range(network.n)))
    else:
        per_row = [row_statuses(i) for i in range(network.n)]

    statuses = {}
    for i, row in enumerate(per_row):
        for j, status in zip(network.out_neighbors[i], row):
            statuses[(i, j)] = status

    classification = DecisiveClassification(network.n, statuses)
    if not classification.fully_checked:
        logger.warning("%d links left unchecked by the decisive-link search", len(classification.unchecked))
    return classification


def decisive_subgraph(network: InfluenceNetwork, classification: DecisiveClassification | None = None) -> nx.DiGraph:
    """Unweighted digraph keeping only decisive links (self-loops included)."""
    if classification is None:
        classification = classify_links(network)
    if not classification.fully_checked:
        raise UncheckedLinks(classification.unchecked)

    graph = nx.DiGraph()
    graph.add_nodes_from(range(network.n))
    graph.add_edges_from(classification.decisive)
    return graph


def has_globally_reachable_node(digraph: nx.DiGraph) -> bool:
    """True iff some node can be reached from every node, i.e. the condensation has a single sink."""
    if digraph.number_of_nodes() == 0:
        return False
    condensed = nx.condensation(digraph)
    sinks = [component for component in condensed if condensed.out_degree(component) == 0]
    return len(sinks) == 1
