"""
Synchronous averaging baselines: DeGroot, DeGroot with absolutely stubborn
agents, Friedkin-Johnsen and the networked bounded-confidence model.

All of them iterate ``x <- F(x)`` until the squared step ``sum (dx)**2`` drops
below ``tol``, the opinion spread drops below ``consensus_tol`` or
``max_iters`` is reached.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from kernel.median import opinion_vector
from networks.core import InfluenceNetwork

from .engine import CONSENSUS_TOLERANCE, RunResult, StopReason
from .seeding import rng_for, substream

logger = logging.getLogger(__name__)

STEADY_STATE_TOLERANCE = 1e-3
MAX_ITERATIONS = 10_000
STUBBORN_FRACTION = 0.05


@dataclass(frozen=True)
class BaselineParams:
    stubborn_fraction: float = STUBBORN_FRACTION
    stubborn_probability: float | None = None
    attachments: np.ndarray | None = None
    radii: np.ndarray | None = None
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.stubborn_fraction <= 1.0:
            raise ValueError(f"stubborn fraction must lie in [0, 1], got {self.stubborn_fraction}")
        if self.stubborn_probability is not None and not 0.0 <= self.stubborn_probability <= 1.0:
            raise ValueError(f"stubborn probability must lie in [0, 1], got {self.stubborn_probability}")
        if self.attachments is not None and np.any((self.attachments < 0) | (self.attachments > 1)):
            raise ValueError("attachments must lie in [0, 1]")
        if self.radii is not None and np.any(self.radii < 0):
            raise ValueError("confidence radii must be nonnegative")


def sample_baseline_params(n: int, seed: int, opinion_range: tuple[float, float] = (0.0, 1.0), **overrides) -> BaselineParams:
    """
    Attachments ~ Unif[0, 1]; confidence radii ~ Unif[0, width / 2] for
    opinions spread over an interval of ``width`` (so Unif[0, 0.5] for
    Unif[0, 1] opinions and Unif[0, 1] for Unif[-1, 1] opinions).
    """
    width = opinion_range[1] - opinion_range[0]
    attachments = rng_for(substream(seed, "attach")).random(n)
    radii = rng_for(substream(seed, "radii")).uniform(0.0, width / 2, n)
    return BaselineParams(attachments=attachments, radii=radii, seed=seed, **overrides)


def choose_stubborn(n: int, seed: int, fraction: float = STUBBORN_FRACTION, probability: float | None = None) -> np.ndarray:
    """Exactly ``round(fraction * n)`` agents, or each agent independently with ``probability``."""
    rng = rng_for(substream(seed, "stubborn"))
    if probability is not None:
        return np.flatnonzero(rng.random(n) < probability)
    return np.sort(rng.choice(n, size=int(round(fraction * n)), replace=False))


def make_stubborn(
    network: InfluenceNetwork,
    fraction: float = STUBBORN_FRACTION,
    seed: int = 0,
    *,
    probability: float | None = None,
    agents=None,
) -> InfluenceNetwork:
    """Replace the rows of the chosen agents by ``w_ii = 1``."""
    if agents is None:
        agents = choose_stubborn(network.n, seed, fraction, probability)
    matrix = network.weights.tolil()
    for i in agents:
        matrix.rows[i] = [int(i)]
        matrix.data[i] = [1.0]
    return InfluenceNetwork(matrix)


def _iterate(
    model: str,
    x0,
    step: Callable[[np.ndarray], np.ndarray],
    tol: float,
    max_iters: int,
    consensus_tol: float,
    record_trajectory: bool,
) -> RunResult:
    x = np.array(x0, dtype=np.float64)
    snapshots = [(0, x.copy())] if record_trajectory else []
    reason = StopReason.MAX_STEPS
    iterations = 0
    while iterations < max_iters:
        updated = step(x)
        iterations += 1
        moved = float(np.sum((updated - x) ** 2))
        x = updated
        if record_trajectory:
            snapshots.append((iterations, x.copy()))
        if moved < tol:
            reason = StopReason.TOLERANCE
            break
        if x.max() - x.min() < consensus_tol:
            reason = StopReason.CONSENSUS
            break

    if reason is StopReason.MAX_STEPS:
        logger.warning("%s run reached %d iterations without settling", model, max_iters)
    return RunResult(model, x, iterations, reason is not StopReason.MAX_STEPS, reason, snapshots=snapshots)


def degroot_run(
    x0,
    network: InfluenceNetwork,
    tol: float = STEADY_STATE_TOLERANCE,
    max_iters: int = MAX_ITERATIONS,
    *,
    consensus_tol: float = CONSENSUS_TOLERANCE,
    record_trajectory: bool = False,
    model: str = "degroot",
) -> RunResult:
    x0 = opinion_vector(x0, network.n)
    W = network.weights
    return _iterate(model, x0, lambda x: W @ x, tol, max_iters, consensus_tol, record_trajectory)


def stubborn_run(
    x0,
    network: InfluenceNetwork,
    fraction: float = STUBBORN_FRACTION,
    seed: int = 0,
    *,
    probability: float | None = None,
    tol: float = STEADY_STATE_TOLERANCE,
    max_iters: int = MAX_ITERATIONS,
    consensus_tol: float = CONSENSUS_TOLERANCE,
    record_trajectory: bool = False,
) -> RunResult:
    stubborn = make_stubborn(network, fraction, seed, probability=probability)
    return degroot_run(
        x0, stubborn, tol, max_iters, consensus_tol=consensus_tol, record_trajectory=record_trajectory, model="stubborn"
    )


def fj_step(network: InfluenceNetwork, x0: np.ndarray, attachments) -> Callable[[np.ndarray], np.ndarray]:
    a = np.asarray(attachments, dtype=np.float64)
    W = network.weights
    anchor = (1.0 - a) * x0
    return lambda x: a * (W @ x) + anchor


def fj_run(
    x0,
    network: InfluenceNetwork,
    attachments,
    tol: float = STEADY_STATE_TOLERANCE,
    max_iters: int = MAX_ITERATIONS,
    *,
    consensus_tol: float = CONSENSUS_TOLERANCE,
    record_trajectory: bool = False,
) -> RunResult:
    """``x(t+1) = A W x(t) + (I - A) x(0)`` with ``A = diag(attachments)``."""
    x0 = opinion_vector(x0, network.n)
    attachments = opinion_vector(attachments, network.n)
    if np.any((attachments < 0) | (attachments > 1)):
        raise ValueError("attachments must lie in [0, 1]")
    return _iterate("fj", x0, fj_step(network, x0, attachments), tol, max_iters, consensus_tol, record_trajectory)


def nbc_step(network: InfluenceNetwork, radii) -> Callable[[np.ndarray], np.ndarray]:
    coo = network.weights.tocoo()
    rows, cols, weights = coo.row, coo.col, coo.data
    r = np.asarray(radii, dtype=np.float64)
    n = network.n

    def step(x):
        # The agent itself always counts as within its own confidence radius.
        trusted = (np.abs(x[cols] - x[rows]) < r[rows]) | (rows == cols)
        mass = np.bincount(rows, weights=weights * trusted, minlength=n)
        pulled = np.bincount(rows, weights=weights * trusted * x[cols], minlength=n)
        return np.divide(pulled, mass, out=x.copy(), where=mass > 0)

    return step


def nbc_run(
    x0,
    network: InfluenceNetwork,
    radii,
    tol: float = STEADY_STATE_TOLERANCE,
    max_iters: int = MAX_ITERATIONS,
    *,
    consensus_tol: float = CONSENSUS_TOLERANCE,
    record_trajectory: bool = False,
) -> RunResult:
    """Networked bounded confidence: average only neighbors closer than ``r_i``."""
    x0 = opinion_vector(x0, network.n)
    radii = opinion_vector(radii, network.n)
    if np.any(radii < 0):
        raise ValueError("confidence radii must be nonnegative")
    return _iterate("nbc", x0, nbc_step(network, radii), tol, max_iters, consensus_tol, record_trajectory)


def identity_network(n: int) -> InfluenceNetwork:
    return InfluenceNetwork(sparse.identity(n, format="csr"))
