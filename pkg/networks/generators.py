"""
Random influence networks on Barabási-Albert, Watts-Strogatz or explicit topologies.

The undirected topology comes from networkx; every undirected edge becomes
two directed links, a self-loop is added to every agent unless disabled, each
link gets an independent uniform(0, 1] weight and rows are normalized.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum

import networkx as nx
import numpy as np
from scipy import sparse, stats

from .core import InfluenceNetwork, normalize_rows
from .exceptions import BadParameters, ZeroRow

logger = logging.getLogger(__name__)


class Family(str, Enum):
    BARABASI_ALBERT = "barabasi_albert"
    WATTS_STROGATZ = "watts_strogatz"
    EXPLICIT = "explicit"


FAMILY_ALIASES = {
    "ba": Family.BARABASI_ALBERT,
    "ws": Family.WATTS_STROGATZ,
    **{family.value: family for family in Family},
}


@dataclass(frozen=True)
class GeneratorConfig:
    family: Family
    n: int
    m: int | None = None
    d: int | None = None
    beta: float = 0.0
    self_loops: bool = True
    seed: int = 0
    connected: bool = True
    edges: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "family", FAMILY_ALIASES.get(self.family, self.family))
        self.check()

    def check(self):
        if not isinstance(self.family, Family):
            raise BadParameters(f"unknown network family {self.family!r}")
        if self.n < 2:
            raise BadParameters(f"n must be at least 2, got {self.n}")
        if not 0 <= self.seed < 2**64:
            raise BadParameters(f"seed must be an unsigned 64-bit integer, got {self.seed}")

        if self.family is Family.BARABASI_ALBERT:
            if self.m is None or not 1 <= self.m < self.n:
                raise BadParameters(f"Barabási-Albert needs 1 <= m < n, got m={self.m}, n={self.n}")
        elif self.family is Family.WATTS_STROGATZ:
            if self.d is None or self.d < 2 or self.d % 2 or self.d >= self.n:
                raise BadParameters(f"Watts-Strogatz needs an even degree 2 <= d < n, got d={self.d}, n={self.n}")
            if not 0.0 <= self.beta <= 1.0:
                raise BadParameters(f"rewiring probability must lie in [0, 1], got {self.beta}")
        else:
            for u, v in self.edges:
                if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                    raise BadParameters(f"edge ({u}, {v}) is not a link between two agents of {self.n}")

    def as_dict(self) -> dict:
        payload = {"family": self.family.value, "n": self.n, "self_loops": self.self_loops, "seed": self.seed}
        if self.family is Family.BARABASI_ALBERT:
            payload["m"] = self.m
        elif self.family is Family.WATTS_STROGATZ:
            payload.update(d=self.d, beta=self.beta, connected=self.connected)
        else:
            payload["edges"] = [list(edge) for edge in self.edges]
        return payload


def _topology(config: GeneratorConfig, seed: int) -> nx.Graph:
    if config.family is Family.BARABASI_ALBERT:
        return nx.barabasi_albert_graph(config.n, config.m, seed=seed)
    if config.family is Family.WATTS_STROGATZ:
        if config.connected:
            try:
                return nx.connected_watts_strogatz_graph(config.n, config.d, config.beta, tries=1000, seed=seed)
            except nx.NetworkXError as exc:
                raise BadParameters(f"no connected Watts-Strogatz graph found: {exc}") from exc
        return nx.watts_strogatz_graph(config.n, config.d, config.beta, seed=seed)

    graph = nx.Graph()
    graph.add_nodes_from(range(config.n))
    graph.add_edges_from(config.edges)
    return graph


def generate(config: GeneratorConfig) -> InfluenceNetwork:
    """Draw a network for ``config``; the same config always yields the same bits."""
    topology_stream, weight_stream = np.random.SeedSequence(config.seed).spawn(2)
    topology_seed = int(topology_stream.generate_state(1, dtype=np.uint32)[0])
    graph = _topology(config, topology_seed)

    links = set()
    for u, v in graph.edges():
        if u != v:
            links.update({(u, v), (v, u)})
    if config.self_loops:
        links.update((i, i) for i in range(config.n))
    ordered = sorted(links)

    rng = np.random.default_rng(weight_stream)
    raw = 1.0 - rng.random(len(ordered))  # uniform on (0, 1]
    rows = np.fromiter((i for i, _ in ordered), dtype=np.int64, count=len(ordered))
    cols = np.fromiter((j for _, j in ordered), dtype=np.int64, count=len(ordered))

    try:
        network = normalize_rows(sparse.coo_array((raw, (rows, cols)), shape=(config.n, config.n)))
    except ZeroRow as exc:
        raise BadParameters(f"agent {exc.i} has no links; enable self loops or connect it") from exc

    logger.debug("Generated %s network n=%d with %d links (seed=%d)", config.family.value, config.n, len(ordered), config.seed)
    return network


@dataclass(frozen=True)
class DegreeLawFit:
    a: float
    b: float
    b_interval: tuple[float, float]
    method: str


def undirected_degrees(network: InfluenceNetwork) -> np.ndarray:
    return np.array([sum(1 for j in neighbors if j != i) for i, neighbors in enumerate(network.out_neighbors)])


def degree_law_fit(network: InfluenceNetwork, *, method: str = "ccdf", level: float = 0.95) -> DegreeLawFit:
    """
    Fit ``count ~ a * degree**b`` on log-log axes.

    ``method="pdf"`` regresses the raw degree histogram (the usual reporting
    form, ``a`` is a node count); ``method="ccdf"`` regresses the
    complementary cumulative distribution, which is far less noisy in the tail.
    """
    degrees = undirected_degrees(network)
    degrees = degrees[degrees > 0]
    values, counts = np.unique(degrees, return_counts=True)
    if values.size < 3:
        raise BadParameters("degree law fit needs at least three distinct degrees")

    if method == "pdf":
        response = counts.astype(float)
    elif method == "ccdf":
        response = counts[::-1].cumsum()[::-1] / degrees.size
    else:
        raise BadParameters(f"unknown degree fit method {method!r}")

    fit = stats.linregress(np.log(values), np.log(response))
    spread = stats.t.ppf(0.5 + level / 2, values.size - 2) * fit.stderr
    return DegreeLawFit(
        a=float(np.exp(fit.intercept)),
        b=float(fit.slope),
        b_interval=(float(fit.slope - spread), float(fit.slope + spread)),
        method=method,
    )
