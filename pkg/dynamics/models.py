"""
One entry point per opinion model, so studies and commands can name models by id.
"""

import numpy as np

from networks.core import InfluenceNetwork

from .baselines import (
    MAX_ITERATIONS,
    STEADY_STATE_TOLERANCE,
    BaselineParams,
    degroot_run,
    fj_run,
    fj_step,
    make_stubborn,
    nbc_run,
    nbc_step,
)
from .engine import CONSENSUS_TOLERANCE, RunResult, wm_run
from .exceptions import UnknownModel
from .schedules import UpdateSchedule
from .seeding import substream

MODELS = ("wm", "degroot", "stubborn", "fj", "nbc")


def check_models(models) -> tuple[str, ...]:
    for model in models:
        if model not in MODELS:
            raise UnknownModel(model)
    return tuple(models)


def run_model(
    model: str,
    x0,
    network: InfluenceNetwork,
    *,
    seed: int = 0,
    params: BaselineParams | None = None,
    tol: float = STEADY_STATE_TOLERANCE,
    max_iters: int = MAX_ITERATIONS,
    max_steps: int | None = None,
    consensus_tol: float = CONSENSUS_TOLERANCE,
    record_trajectory: bool = False,
) -> RunResult:
    """
    Run ``model`` from ``x0``. ``seed`` drives the WM schedule; the averaging
    models read their parameters from ``params`` (identity defaults: full
    attachment, unbounded confidence, stubborn agents drawn from ``params.seed``).
    """
    params = params or BaselineParams(seed=seed)
    averaging = dict(consensus_tol=consensus_tol, record_trajectory=record_trajectory)

    if model == "wm":
        schedule = UpdateSchedule.uniform_random(substream(seed, "schedule"))
        return wm_run(x0, network, schedule, max_steps, snapshot_every=network.n if record_trajectory else None)
    if model == "degroot":
        return degroot_run(x0, network, tol, max_iters, **averaging)
    if model == "stubborn":
        stubborn = make_stubborn(network, params.stubborn_fraction, params.seed, probability=params.stubborn_probability)
        return degroot_run(x0, stubborn, tol, max_iters, model="stubborn", **averaging)
    if model == "fj":
        attachments = params.attachments if params.attachments is not None else np.ones(network.n)
        return fj_run(x0, network, attachments, tol, max_iters, **averaging)
    if model == "nbc":
        radii = params.radii if params.radii is not None else np.full(network.n, np.inf)
        return nbc_run(x0, network, radii, tol, max_iters, **averaging)
    raise UnknownModel(model)


def synchronous_step(model: str, network: InfluenceNetwork, x0: np.ndarray, params: BaselineParams | None = None):
    """The one-step map ``x -> F(x)`` of an averaging model."""
    params = params or BaselineParams()
    if model in ("degroot", "stubborn"):
        if model == "stubborn":
            network = make_stubborn(
                network, params.stubborn_fraction, params.seed, probability=params.stubborn_probability
            )
        W = network.weights
        return lambda x: W @ x
    if model == "fj":
        attachments = params.attachments if params.attachments is not None else np.ones(network.n)
        return fj_step(network, x0, attachments)
    if model == "nbc":
        radii = params.radii if params.radii is not None else np.full(network.n, np.inf)
        return nbc_step(network, radii)
    raise UnknownModel(model)
