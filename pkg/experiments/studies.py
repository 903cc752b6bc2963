"""
Monte Carlo studies over the weighted-median model and its averaging baselines.

Every study takes a frozen config, runs its trials through :func:`run_trials`
and returns a :class:`StudyResult` holding plot-ready tables and an aggregate
document. Nothing here depends on how many worker threads were used.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import networkx as nx
import numpy as np
import pandas as pd

from cohesion.links import LinkStatus, classify_row
from dynamics.baselines import MAX_ITERATIONS, STEADY_STATE_TOLERANCE, sample_baseline_params
from dynamics.engine import CONSENSUS_TOLERANCE, wm_run
from dynamics.manipulation import manipulation_run
from dynamics.models import check_models, run_model
from dynamics.schedules import UpdateSchedule
from dynamics.seeding import derive_seed, substream
from networks.core import InfluenceNetwork, perturb_add_link
from networks.formats import content_hash, write_table
from networks.generators import Family, GeneratorConfig, generate
from networks.subsets import SearchStatus, Window, find_subset_in_window

from .categories import CATEGORIES, category_codes, extremist_focus
from .centrality import in_degree_centrality, radial_layout, topology_centralities
from .exceptions import ExperimentError, UnknownDistribution
from .runner import TrialFailure, run_trials
from .samplers import DISTRIBUTIONS, RANGES, sample_initial

logger = logging.getLogger(__name__)

HISTOGRAM_BINS = 50


def _finite(value):
    value = float(value)
    return value if np.isfinite(value) else None


@dataclass(frozen=True)
class TrialOutcome:
    """One model run inside one trial; the unit stored as a ``TrialRecord``."""

    trial_index: int
    seed: int
    model: str
    converged: bool
    consensus: bool
    steps: int
    stop_reason: str
    final_opinions: list[float]
    categories: list[str] = field(default_factory=list)
    in_degree: list[float] = field(default_factory=list)
    extremist_focus: list[float] = field(default_factory=list)


def _outcome(trial_index, seed, result, consensus_tol, **extras) -> TrialOutcome:
    consensus = result.consensus if result.model == "wm" else result.is_consensus(consensus_tol)
    return TrialOutcome(
        trial_index=trial_index,
        seed=seed,
        model=result.model,
        converged=result.converged,
        consensus=consensus,
        steps=result.steps_taken,
        stop_reason=result.stop_reason.value,
        final_opinions=result.final_opinions.tolist(),
        **extras,
    )


@dataclass
class StudyResult:
    study: str
    config: dict
    tables: dict[str, pd.DataFrame]
    aggregate: dict
    outcomes: list[TrialOutcome] = field(default_factory=list)
    failures: list[TrialFailure] = field(default_factory=list)

    def aggregate_document(self) -> dict:
        return {
            "study": self.study,
            "config": self.config,
            "aggregate": self.aggregate,
            "failures": [failure.as_dict() for failure in self.failures],
        }

    def write(self, directory, fmt: str = "csv") -> list[Path]:
        """One file per table in ``fmt`` plus ``aggregate.json``; returns the written paths."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        written = [write_table(table, directory / name, fmt) for name, table in sorted(self.tables.items())]
        path = directory / "aggregate.json"
        path.write_text(json.dumps(self.aggregate_document(), indent=2, sort_keys=True) + "\n")
        written.append(path)
        logger.info("%s study wrote %d files to %s", self.study, len(written), directory)
        return written


# Consensus probability over Watts-Strogatz grids


@dataclass(frozen=True)
class GridCell:
    n: int
    d: int
    beta: float


@dataclass(frozen=True)
class ConsensusStudy:
    cells: tuple[GridCell, ...]
    trials: int = 500
    models: tuple[str, ...] = ("wm", "degroot")
    master_seed: int = 0
    distribution: str = "uniform"
    connected: bool = True
    # Consensus is judged by the spread; the squared-step stop is off.
    tol: float = 0.0
    consensus_tol: float = CONSENSUS_TOLERANCE
    max_iters: int = MAX_ITERATIONS
    max_steps: int | None = None

    def __post_init__(self):
        check_models(self.models)
        if self.trials < 0:
            raise ExperimentError(f"trials must be nonnegative, got {self.trials}")

    def as_dict(self) -> dict:
        return {
            "cells": [{"n": c.n, "d": c.d, "beta": c.beta} for c in self.cells],
            "trials": self.trials,
            "models": list(self.models),
            "master_seed": self.master_seed,
            "distribution": self.distribution,
            "connected": self.connected,
            "tol": self.tol,
            "consensus_tol": self.consensus_tol,
            "max_iters": self.max_iters,
            "max_steps": self.max_steps,
        }


def average_clustering(network: InfluenceNetwork) -> float:
    return nx.average_clustering(network.to_digraph(self_loops=False).to_undirected())


def consensus_probability_experiment(
    study: ConsensusStudy, *, threads: int = 1, network: InfluenceNetwork | None = None
) -> StudyResult:
    """
    Frequency of consensus per grid cell. Every trial draws a fresh network and
    a fresh initial vector shared by all models. A fixed ``network`` replaces
    the generated ones (the cells then only label the output).
    """
    logger.info("Consensus study: %d cells x %d trials, models %s", len(study.cells), study.trials, study.models)

    def trial(k, seed):
        cell = study.cells[k // study.trials]
        net = network
        if net is None:
            config = GeneratorConfig(
                Family.WATTS_STROGATZ, cell.n, d=cell.d, beta=cell.beta, seed=substream(seed, "network"),
                connected=study.connected,
            )
            net = generate(config)
        x0 = sample_initial(study.distribution, net.n, substream(seed, "opinions"))
        params = sample_baseline_params(net.n, seed, RANGES[study.distribution])
        runs = [
            run_model(
                model, x0, net, seed=seed, params=params, tol=study.tol, max_iters=study.max_iters,
                max_steps=study.max_steps, consensus_tol=study.consensus_tol,
            )
            for model in study.models
        ]
        return k, seed, cell, average_clustering(net), content_hash(net), runs

    batch = run_trials(
        len(study.cells) * study.trials, trial, master_seed=study.master_seed, threads=threads, label="consensus"
    )

    rows, outcomes = [], []
    for k, seed, cell, clustering, network_hash, runs in batch.ordered():
        for result in runs:
            outcome = _outcome(k, seed, result, study.consensus_tol)
            outcomes.append(outcome)
            rows.append(
                {
                    "cell": k // study.trials,
                    "n": cell.n,
                    "d": cell.d,
                    "beta": cell.beta,
                    "trial": k,
                    "seed": seed,
                    "model": result.model,
                    "consensus": outcome.consensus,
                    "converged": outcome.converged,
                    "steps": outcome.steps,
                    "stop_reason": outcome.stop_reason,
                    "clustering": clustering,
                    "network_hash": network_hash,
                }
            )
    trials = pd.DataFrame(
        rows,
        columns=["cell", "n", "d", "beta", "trial", "seed", "model", "consensus", "converged", "steps", "stop_reason",
                 "clustering", "network_hash"],
    )

    cell_rows = []
    for index, cell in enumerate(study.cells):
        for model in study.models:
            subset = trials[(trials["cell"] == index) & (trials["model"] == model)]
            count = len(subset)
            frequency = float(subset["consensus"].mean()) if count else float("nan")
            cell_rows.append(
                {
                    "n": cell.n,
                    "d": cell.d,
                    "beta": cell.beta,
                    "model": model,
                    "trials": count,
                    "consensus_frequency": frequency,
                    "standard_error": float(np.sqrt(frequency * (1 - frequency) / count)) if count else float("nan"),
                    "mean_clustering": float(subset["clustering"].mean()) if count else float("nan"),
                }
            )
    cells = pd.DataFrame(
        cell_rows, columns=["n", "d", "beta", "model", "trials", "consensus_frequency", "standard_error", "mean_clustering"]
    )

    aggregate = {
        "cells": [
            {key: (_finite(value) if isinstance(value, float) else value) for key, value in row.items()}
            for row in cell_rows
        ],
        "trials_requested": len(study.cells) * study.trials,
        "trials_completed": len(batch.results),
    }
    logger.info("Consensus study finished: %d trials, %d failures", len(batch.results), len(batch.failures))
    return StudyResult("consensus", study.as_dict(), {"trials": trials, "cells": cells}, aggregate, outcomes, batch.failures)


# Opinion extremeness against centrality on one fixed network


@dataclass(frozen=True)
class ExtremenessStudy:
    network: GeneratorConfig
    trials: int = 200
    models: tuple[str, ...] = ("wm",)
    master_seed: int = 0
    distribution: str = "uniform_symmetric"
    stubborn_probability: float = 0.05
    tol: float = STEADY_STATE_TOLERANCE
    max_iters: int = MAX_ITERATIONS
    max_steps: int | None = None
    bins: int = HISTOGRAM_BINS

    def __post_init__(self):
        check_models(self.models)
        if self.trials < 0:
            raise ExperimentError(f"trials must be nonnegative, got {self.trials}")

    def as_dict(self) -> dict:
        return {
            "network": self.network.as_dict(),
            "trials": self.trials,
            "models": list(self.models),
            "master_seed": self.master_seed,
            "distribution": self.distribution,
            "stubborn_probability": self.stubborn_probability,
            "tol": self.tol,
            "max_iters": self.max_iters,
            "max_steps": self.max_steps,
            "bins": self.bins,
        }


def _mean_and_error(values: np.ndarray) -> tuple[float | None, float | None]:
    if values.size == 0:
        return None, None
    error = float(values.std(ddof=1) / np.sqrt(values.size)) if values.size > 1 else None
    return float(values.mean()), error


def extremeness_centrality_experiment(
    study: ExtremenessStudy, *, threads: int = 1, network: InfluenceNetwork | None = None
) -> StudyResult:
    """
    Final opinion categories against the centralities of the agents holding them.

    All trials share one network; each draws its own initial opinions and
    baseline parameters.
    """
    net = network if network is not None else generate(study.network)
    n = net.n
    in_degree = in_degree_centrality(net)
    topology = topology_centralities(net)
    layout = radial_layout(net, seed=substream(study.master_seed, "layout"))
    logger.info("Extremeness study: n=%d, %d trials, models %s", n, study.trials, study.models)

    def trial(k, seed):
        x0 = sample_initial(study.distribution, n, substream(seed, "opinions"))
        params = sample_baseline_params(
            n, seed, RANGES[study.distribution], stubborn_probability=study.stubborn_probability
        )
        runs = []
        for model in study.models:
            result = run_model(
                model, x0, net, seed=seed, params=params, tol=study.tol, max_iters=study.max_iters,
                max_steps=study.max_steps,
            )
            runs.append((result, category_codes(result.final_opinions), extremist_focus(net, result.final_opinions)))
        return k, seed, x0, runs

    batch = run_trials(study.trials, trial, master_seed=study.master_seed, threads=threads, label="extremeness")

    agent_rows, outcomes = [], []
    codes_by_model = {model: [] for model in study.models}
    focus_by_model = {model: [] for model in study.models}
    for k, seed, x0, runs in batch.ordered():
        for result, codes, focus in runs:
            codes_by_model[result.model].append(codes)
            focus_by_model[result.model].append(focus)
            outcomes.append(
                _outcome(
                    k, seed, result, CONSENSUS_TOLERANCE,
                    categories=[CATEGORIES[c].value for c in codes],
                    in_degree=in_degree.tolist(),
                    extremist_focus=focus.tolist(),
                )
            )
            agent_rows.extend(
                {
                    "trial": k,
                    "model": result.model,
                    "agent": i,
                    "initial": float(x0[i]),
                    "final": float(result.final_opinions[i]),
                    "category": CATEGORIES[codes[i]].value,
                    "in_degree": float(in_degree[i]),
                    "extremist_focus": float(focus[i]),
                }
                for i in range(n)
            )
    agents = pd.DataFrame(
        agent_rows, columns=["trial", "model", "agent", "initial", "final", "category", "in_degree", "extremist_focus"]
    )

    centralities = {
        "in_degree": in_degree,
        "closeness": topology.closeness,
        "betweenness": topology.betweenness,
        "eigenvector": topology.eigenvector,
    }
    summary_rows, category_rows, density_rows, degree_rows, models_aggregate = [], [], [], [], {}
    degree_edges = np.histogram_bin_edges(in_degree, bins=study.bins)
    for model in study.models:
        if not codes_by_model[model]:
            continue
        codes = np.vstack(codes_by_model[model])
        focus = np.vstack(focus_by_model[model])
        extreme = codes == 3
        frequency = extreme.mean(axis=0)
        for i in range(n):
            summary_rows.append(
                {
                    "model": model,
                    "agent": i,
                    **{name: float(values[i]) for name, values in centralities.items()},
                    "radius": float(layout.radius[i]),
                    "angle": float(layout.angle[i]),
                    "extreme_frequency": float(frequency[i]),
                    "mean_extremist_focus": float(focus[:, i].mean()),
                }
            )

        tiled = {name: np.broadcast_to(values, codes.shape) for name, values in centralities.items()}
        for code, category in enumerate(CATEGORIES):
            mask = codes == code
            row = {"model": model, "category": category.value, "count": int(mask.sum())}
            for name, values in tiled.items():
                row[f"mean_{name}"], row[f"se_{name}"] = _mean_and_error(values[mask])
            row["mean_extremist_focus"], row["se_extremist_focus"] = _mean_and_error(focus[mask])
            category_rows.append(row)

            counts, _ = np.histogram(tiled["in_degree"][mask], bins=degree_edges)
            degree_rows.extend(
                {"model": model, "category": category.value, "bin_left": float(lo), "bin_right": float(hi), "count": int(c)}
                for lo, hi, c in zip(degree_edges[:-1], degree_edges[1:], counts)
            )

        counts, x_edges, y_edges = np.histogram2d(
            tiled["in_degree"].ravel(), focus.ravel(), bins=study.bins, range=[[degree_edges[0], degree_edges[-1]], [0.0, 1.0]]
        )
        for a, b in zip(*np.nonzero(counts)):
            density_rows.append(
                {
                    "model": model,
                    "in_degree_left": float(x_edges[a]),
                    "in_degree_right": float(x_edges[a + 1]),
                    "focus_left": float(y_edges[b]),
                    "focus_right": float(y_edges[b + 1]),
                    "count": int(counts[a, b]),
                }
            )

        population_degree, population_degree_se = _mean_and_error(tiled["in_degree"].ravel())
        extreme_degree, extreme_degree_se = _mean_and_error(tiled["in_degree"][extreme])
        population_focus, _ = _mean_and_error(focus.ravel())
        extreme_focus, extreme_focus_se = _mean_and_error(focus[extreme])
        models_aggregate[model] = {
            "population_mean_in_degree": population_degree,
            "extreme_mean_in_degree": extreme_degree,
            "extreme_in_degree_standard_error": extreme_degree_se,
            "population_mean_extremist_focus": population_focus,
            "extreme_mean_extremist_focus": extreme_focus,
            "extreme_extremist_focus_standard_error": extreme_focus_se,
            "extreme_share": float(extreme.mean()),
        }

    tables = {
        "agents": agents,
        "agent_summary": pd.DataFrame(
            summary_rows,
            columns=["model", "agent", *centralities, "radius", "angle", "extreme_frequency", "mean_extremist_focus"],
        ),
        "categories": pd.DataFrame(category_rows),
        "in_degree_by_category": pd.DataFrame(
            degree_rows, columns=["model", "category", "bin_left", "bin_right", "count"]
        ),
        "focus_density": pd.DataFrame(
            density_rows, columns=["model", "in_degree_left", "in_degree_right", "focus_left", "focus_right", "count"]
        ),
    }
    aggregate = {
        "network_hash": content_hash(net),
        "n": n,
        "trials_requested": study.trials,
        "trials_completed": len(batch.results),
        "models": models_aggregate,
    }
    logger.info("Extremeness study finished: %d trials, %d failures", len(batch.results), len(batch.failures))
    return StudyResult("extremeness", study.as_dict(), tables, aggregate, outcomes, batch.failures)


# Initial and final opinion distributions


@dataclass(frozen=True)
class DistributionStudy:
    network: GeneratorConfig
    distributions: tuple[str, ...] = ("bimodal",)
    models: tuple[str, ...] = ("wm", "degroot", "stubborn", "fj", "nbc")
    trials: int = 1
    master_seed: int = 0
    bins: int = HISTOGRAM_BINS
    tol: float = STEADY_STATE_TOLERANCE
    max_iters: int = MAX_ITERATIONS
    max_steps: int | None = None

    def __post_init__(self):
        check_models(self.models)
        for name in self.distributions:
            if name not in DISTRIBUTIONS:
                raise UnknownDistribution(name)

    def as_dict(self) -> dict:
        return {
            "network": self.network.as_dict(),
            "distributions": list(self.distributions),
            "models": list(self.models),
            "trials": self.trials,
            "master_seed": self.master_seed,
            "bins": self.bins,
            "tol": self.tol,
            "max_iters": self.max_iters,
            "max_steps": self.max_steps,
        }


def count_modes(counts) -> int:
    """Number of maximal runs of non-empty histogram bins."""
    occupied = np.asarray(counts) > 0
    return int(np.count_nonzero(occupied[1:] & ~occupied[:-1]) + occupied[:1].sum())


def distribution_experiment(
    study: DistributionStudy, *, threads: int = 1, network: InfluenceNetwork | None = None
) -> StudyResult:
    """Histograms of the initial opinions and of every model's final opinions, binned over the initial range."""
    net = network if network is not None else generate(study.network)
    logger.info("Distribution study: n=%d, distributions %s, models %s", net.n, study.distributions, study.models)

    def trial(k, seed):
        distribution = study.distributions[k // study.trials]
        x0 = sample_initial(distribution, net.n, substream(seed, "opinions"))
        params = sample_baseline_params(net.n, seed, RANGES[distribution])
        runs = [
            run_model(
                model, x0, net, seed=seed, params=params, tol=study.tol, max_iters=study.max_iters,
                max_steps=study.max_steps,
            )
            for model in study.models
        ]
        return k, seed, distribution, x0, runs

    batch = run_trials(
        len(study.distributions) * study.trials, trial, master_seed=study.master_seed, threads=threads, label="distribution"
    )

    rows, outcomes, modes = [], [], {}
    for k, seed, distribution, x0, runs in batch.ordered():
        edges = np.histogram_bin_edges(x0, bins=study.bins)
        series = [("initial", x0)] + [(result.model, result.final_opinions) for result in runs]
        for name, values in series:
            counts, _ = np.histogram(values, bins=edges)
            modes.setdefault(distribution, {}).setdefault(name, []).append(count_modes(counts))
            rows.extend(
                {
                    "distribution": distribution,
                    "trial": k,
                    "series": name,
                    "bin": b,
                    "bin_left": float(edges[b]),
                    "bin_right": float(edges[b + 1]),
                    "count": int(c),
                }
                for b, c in enumerate(counts)
            )
        outcomes.extend(_outcome(k, seed, result, CONSENSUS_TOLERANCE) for result in runs)

    histograms = pd.DataFrame(rows, columns=["distribution", "trial", "series", "bin", "bin_left", "bin_right", "count"])
    aggregate = {
        "network_hash": content_hash(net),
        "n": net.n,
        "modes": {
            distribution: {name: {"mean": float(np.mean(found)), "min": int(min(found)), "max": int(max(found))}
                           for name, found in by_series.items()}
            for distribution, by_series in modes.items()
        },
        "trials_completed": len(batch.results),
    }
    logger.info("Distribution study finished: %d trials, %d failures", len(batch.results), len(batch.failures))
    return StudyResult("distribution", study.as_dict(), {"histograms": histograms}, aggregate, outcomes, batch.failures)


# Robustness to a small indecisive link


@dataclass(frozen=True)
class PerturbationStudy:
    network: GeneratorConfig
    delta: float = 0.01
    distribution: str = "uniform"
    master_seed: int = 0
    max_steps: int | None = None
    max_iters: int = 100_000
    fixed_point_tol: float = 1e-12

    def as_dict(self) -> dict:
        return {
            "network": self.network.as_dict(),
            "delta": self.delta,
            "distribution": self.distribution,
            "master_seed": self.master_seed,
            "max_steps": self.max_steps,
            "max_iters": self.max_iters,
            "fixed_point_tol": self.fixed_point_tol,
        }


def find_quiet_link(network: InfluenceNetwork, delta: float) -> tuple[int, int, InfluenceNetwork]:
    """
    First agent ``i`` whose row has no subset sum within ``delta`` of one half,
    linked to the first agent ``j`` it does not yet listen to.

    Moving ``delta`` of the self weight onto ``(i, j)`` then changes no
    comparison against one half, so ``i``'s weighted median is the same for
    every opinion vector and the new link is indecisive.
    """
    margin = Window(0.5 - delta, 0.5 + delta)
    for i in range(network.n):
        columns, values = network.row(i)
        if network.weight(i, i) < delta or len(columns) == network.n:
            continue
        if find_subset_in_window(values, margin).status is not SearchStatus.NOT_FOUND:
            continue
        linked = set(columns.tolist())
        j = next(j for j in range(network.n) if j not in linked)
        perturbed = perturb_add_link(network, i, j, delta)
        new_columns, new_values = perturbed.row(i)
        statuses = dict(zip(new_columns.tolist(), classify_row(new_values)))
        if statuses[j] is LinkStatus.INDECISIVE:
            return i, j, perturbed
    raise ExperimentError(f"no agent can take a {delta} link without it becoming decisive")


def perturbation_experiment(study: PerturbationStudy, *, network: InfluenceNetwork | None = None) -> StudyResult:
    """WM with one fixed schedule and DeGroot to its fixed point, before and after adding a quiet link."""
    net = network if network is not None else generate(study.network)
    i, j, perturbed = find_quiet_link(net, study.delta)
    seed = derive_seed(study.master_seed, 0)
    x0 = sample_initial(study.distribution, net.n, substream(seed, "opinions"))
    schedule_seed = substream(seed, "schedule")
    logger.info("Perturbation study: link (%d, %d) of weight %g on n=%d", i, j, study.delta, net.n)

    wm = [wm_run(x0, W, UpdateSchedule.uniform_random(schedule_seed), study.max_steps) for W in (net, perturbed)]
    degroot = [
        run_model(
            "degroot", x0, W, tol=0.0, max_iters=study.max_iters, consensus_tol=study.fixed_point_tol
        )
        for W in (net, perturbed)
    ]

    identical = wm[0].changes == wm[1].changes and np.array_equal(wm[0].final_opinions, wm[1].final_opinions)
    shift = float(np.max(np.abs(degroot[0].final_opinions - degroot[1].final_opinions)))

    rows = [
        {"network": label, "model": result.model, "agent": a, "final": float(value)}
        for label, runs in (("original", (wm[0], degroot[0])), ("perturbed", (wm[1], degroot[1])))
        for result in runs
        for a, value in enumerate(result.final_opinions)
    ]
    trajectory_rows = [
        {"network": label, "step": step, "agent": agent, "opinion": value}
        for label, result in (("original", wm[0]), ("perturbed", wm[1]))
        for step, agent, value in result.changes
    ]
    outcomes = [
        _outcome(index, seed, result, study.fixed_point_tol)
        for index, pair in enumerate(zip(wm, degroot))
        for result in pair
    ]
    aggregate = {
        "network_hash": content_hash(net),
        "perturbed_hash": content_hash(perturbed),
        "link": [i, j],
        "delta": study.delta,
        "wm_trajectory_identical": bool(identical),
        "wm_changes": len(wm[0].changes),
        "degroot_fixed_point_shift": shift,
    }
    tables = {
        "final_opinions": pd.DataFrame(rows, columns=["network", "model", "agent", "final"]),
        "wm_trajectories": pd.DataFrame(trajectory_rows, columns=["network", "step", "agent", "opinion"]),
    }
    logger.info("Perturbation study finished: WM identical=%s, DeGroot shift=%.3g", identical, shift)
    return StudyResult("perturbation", study.as_dict(), tables, aggregate, outcomes)


# Manipulation by an external signal


def follower_network() -> InfluenceNetwork:
    """Three followers forming a cohesive set that also listen to agent 3."""
    followers = [[(0, 0.3), (1, 0.2), (2, 0.2), (3, 0.3)],
                 [(0, 0.2), (1, 0.3), (2, 0.2), (3, 0.3)],
                 [(0, 0.2), (1, 0.2), (2, 0.3), (3, 0.3)]]
    return InfluenceNetwork.from_rows(4, followers + [[(k, 0.25) for k in range(4)]])


@dataclass(frozen=True)
class ManipulationStudy:
    network: GeneratorConfig | None = None
    initial: tuple[float, ...] = (6.0, 6.0, 6.0, 7.0)
    manipulated_agent: int = 3
    signal_start: float = 7.0
    signal_stop: float = 20.0
    steps: int = 30
    models: tuple[str, ...] = ("wm", "degroot")
    master_seed: int = 0

    def __post_init__(self):
        check_models(self.models)

    def signal(self) -> np.ndarray:
        return np.linspace(self.signal_start, self.signal_stop, self.steps)

    def as_dict(self) -> dict:
        return {
            "network": self.network.as_dict() if self.network else None,
            "initial": list(self.initial),
            "manipulated_agent": self.manipulated_agent,
            "signal_start": self.signal_start,
            "signal_stop": self.signal_stop,
            "steps": self.steps,
            "models": list(self.models),
            "master_seed": self.master_seed,
        }


def manipulation_experiment(study: ManipulationStudy, *, network: InfluenceNetwork | None = None) -> StudyResult:
    if network is None:
        network = generate(study.network) if study.network else follower_network()
    seed = derive_seed(study.master_seed, 0)
    if study.network is not None and len(study.initial) != network.n:
        x0 = sample_initial("uniform", network.n, substream(seed, "opinions"))
    else:
        x0 = np.asarray(study.initial, dtype=np.float64)
    m = study.manipulated_agent
    followers = np.array([i for i in range(network.n) if i != m])
    low, high = float(x0.min()), float(x0.max())

    rows, aggregate, outcomes = [], {"network_hash": content_hash(network), "initial_range": [low, high], "models": {}}, []
    for model in study.models:
        trajectory = manipulation_run(x0, network, model, m, study.signal(), seed=substream(seed, model))
        final = trajectory[-1]
        rows.extend(
            {"model": model, "step": t, "agent": a, "opinion": float(value)}
            for t, x in enumerate(trajectory)
            for a, value in enumerate(x)
        )
        moved = float(np.max(np.abs(trajectory[:, followers] - x0[followers]))) if followers.size else 0.0
        aggregate["models"][model] = {
            "followers_max_displacement": moved,
            "followers_final": final[followers].tolist(),
            "followers_beyond_initial_range": bool(np.any((final[followers] > high) | (final[followers] < low))),
        }
        outcomes.append(
            TrialOutcome(0, seed, model, True, bool(np.ptp(final) == 0), len(trajectory) - 1, "schedule_exhausted",
                         final.tolist())
        )
    tables = {"trajectories": pd.DataFrame(rows, columns=["model", "step", "agent", "opinion"])}
    logger.info("Manipulation study finished for models %s", study.models)
    return StudyResult("manipulation", study.as_dict(), tables, aggregate, outcomes)
