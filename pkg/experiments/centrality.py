"""
Centrality measures and the radial plotting layout.
"""

from dataclasses import dataclass

import networkx as nx
import numpy as np

from dynamics.seeding import rng_for
from networks.core import InfluenceNetwork

from .exceptions import PowerIterationDiverged

POWER_TOLERANCE = 1e-10
POWER_MAX_ITERATIONS = 1000


def in_degree_centrality(network: InfluenceNetwork) -> np.ndarray:
    """Sum of incoming link weights, self-loop included."""
    return np.asarray(network.weights.sum(axis=0)).ravel()


def eigenvector_centrality(
    network: InfluenceNetwork, tol: float = POWER_TOLERANCE, max_iterations: int = POWER_MAX_ITERATIONS
) -> np.ndarray:
    """
    Dominant left eigenvector of ``W`` normalized to sum 1.

    Iterates the lazy map ``v <- (v + W^T v) / 2``, which has the same fixed
    point and does not oscillate on periodic networks.
    """
    transposed = network.weights.T.tocsr()
    v = np.full(network.n, 1.0 / network.n)
    residual = np.inf
    for _ in range(max_iterations):
        updated = 0.5 * (v + transposed @ v)
        updated /= updated.sum()
        residual = float(np.abs(updated - v).sum())
        v = updated
        if residual < tol:
            return v
    raise PowerIterationDiverged(max_iterations, residual)


@dataclass(frozen=True)
class TopologyCentralities:
    closeness: np.ndarray
    betweenness: np.ndarray
    eigenvector: np.ndarray


def topology_centralities(network: InfluenceNetwork) -> TopologyCentralities:
    """Closeness and betweenness on the unweighted link digraph (self-loops dropped), eigenvector on ``W``."""
    graph = network.to_digraph(self_loops=False)
    closeness = nx.closeness_centrality(graph)
    betweenness = nx.betweenness_centrality(graph)
    return TopologyCentralities(
        closeness=np.array([closeness[i] for i in range(network.n)]),
        betweenness=np.array([betweenness[i] for i in range(network.n)]),
        eigenvector=eigenvector_centrality(network),
    )


@dataclass(frozen=True)
class RadialLayout:
    raw_radius: np.ndarray
    radius: np.ndarray
    angle: np.ndarray


def radial_radii(degrees) -> tuple[np.ndarray, np.ndarray]:
    """``(max_k d_k - d_i)**5`` and the same radii scaled to [0, 1]."""
    degrees = np.asarray(degrees, dtype=np.float64)
    raw = (degrees.max() - degrees) ** 5
    top = raw.max()
    return raw, (raw / top if top > 0 else np.zeros_like(raw))


def radial_layout(network: InfluenceNetwork, seed: int = 0) -> RadialLayout:
    """Radius from in-degree, hubs at the center; uniform random angle."""
    raw, radius = radial_radii(in_degree_centrality(network))
    angle = rng_for(seed).uniform(0.0, 2 * np.pi, network.n)
    return RadialLayout(raw_radius=raw, radius=radius, angle=angle)
