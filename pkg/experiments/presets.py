"""
Named experiment protocols at desk and paper scale.
"""

import networkx as nx
import numpy as np

from networks.generators import Family, GeneratorConfig

from .exceptions import ExperimentError
from .studies import (
    ConsensusStudy,
    DistributionStudy,
    ExtremenessStudy,
    GridCell,
    ManipulationStudy,
    PerturbationStudy,
    consensus_probability_experiment,
    distribution_experiment,
    extremeness_centrality_experiment,
    manipulation_experiment,
    perturbation_experiment,
)

SCALES = ("desk", "paper")


def two_community_config(size: int, d: int = 6, beta: float = 0.2, bridges: int = 5, seed: int = 0) -> GeneratorConfig:
    """Two connected Watts-Strogatz communities of ``size`` agents joined by ``bridges`` random edges."""
    first, second, bridge = np.random.SeedSequence(seed).spawn(3)
    edges = set()
    for offset, stream in ((0, first), (size, second)):
        graph = nx.connected_watts_strogatz_graph(size, d, beta, tries=1000, seed=int(stream.generate_state(1)[0]))
        edges.update((u + offset, v + offset) for u, v in graph.edges())
    rng = np.random.default_rng(bridge)
    target = len(edges) + bridges
    while len(edges) < target:
        u, v = int(rng.integers(size)), int(rng.integers(size, 2 * size))
        edges.add((u, v))
    return GeneratorConfig(Family.EXPLICIT, 2 * size, edges=tuple(sorted(edges)), seed=seed)


def fig5(scale: str, seed: int) -> ConsensusStudy:
    if scale == "paper":
        sizes = [GridCell(n, d, 1.0) for d in (4, 6, 8) for n in (10, 20, 50, 100, 200, 500, 1000)]
        clustering = [GridCell(n, d, round(0.1 * b, 1)) for n in (30, 60) for d in (4, 6, 8) for b in range(11)]
        return ConsensusStudy(tuple(sizes + clustering), trials=5000, models=("wm", "degroot", "nbc"), master_seed=seed)
    sizes = [GridCell(n, 6, 1.0) for n in (10, 20, 40)]
    clustering = [GridCell(30, 6, beta) for beta in (0.1, 0.5, 1.0)]
    return ConsensusStudy(tuple(sizes + clustering), trials=500, models=("wm", "degroot"), master_seed=seed)


def fig3(scale: str, seed: int) -> ExtremenessStudy:
    if scale == "paper":
        network = GeneratorConfig(Family.BARABASI_ALBERT, 2000, m=2, seed=seed)
        return ExtremenessStudy(network, trials=1000, models=("wm", "stubborn", "fj"), master_seed=seed)
    network = GeneratorConfig(Family.BARABASI_ALBERT, 500, m=2, seed=seed)
    return ExtremenessStudy(network, trials=200, models=("wm",), master_seed=seed)


def fig4(scale: str, seed: int) -> DistributionStudy:
    # A tight steady-state stop so that averaging models show their limit.
    if scale == "paper":
        network = GeneratorConfig(Family.BARABASI_ALBERT, 5000, m=2, seed=seed)
        distributions = ("uniform", "beta22", "beta27", "bimodal", "trimodal")
        return DistributionStudy(network, distributions, trials=1, master_seed=seed, tol=1e-12)
    return DistributionStudy(two_community_config(100, seed=seed), ("bimodal",), trials=1, master_seed=seed, tol=1e-12)


def perturbation(scale: str, seed: int) -> PerturbationStudy:
    n = 50 if scale == "paper" else 20
    return PerturbationStudy(GeneratorConfig(Family.WATTS_STROGATZ, n, d=4, beta=0.2, seed=seed), master_seed=seed)


def manipulation(scale: str, seed: int) -> ManipulationStudy:
    return ManipulationStudy(steps=100 if scale == "paper" else 30, master_seed=seed)


PRESETS = {
    "fig3": fig3,
    "fig4": fig4,
    "fig5": fig5,
    "manipulation": manipulation,
    "perturbation": perturbation,
}

RUNNERS = {
    ConsensusStudy: consensus_probability_experiment,
    ExtremenessStudy: extremeness_centrality_experiment,
    DistributionStudy: distribution_experiment,
    PerturbationStudy: perturbation_experiment,
    ManipulationStudy: manipulation_experiment,
}

THREADED = (ConsensusStudy, ExtremenessStudy, DistributionStudy)


def preset(name: str, scale: str = "desk", seed: int = 0):
    if name not in PRESETS:
        raise ExperimentError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    if scale not in SCALES:
        raise ExperimentError(f"unknown scale {scale!r}; choose desk or paper")
    return PRESETS[name](scale, seed)


def run_study(study, *, threads: int = 1):
    runner = RUNNERS[type(study)]
    if isinstance(study, THREADED):
        return runner(study, threads=threads)
    return runner(study)
