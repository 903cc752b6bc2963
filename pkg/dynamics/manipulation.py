"""
Opinion manipulation: one agent's opinion is overwritten by an external signal.
"""

import numpy as np

from kernel.median import med, opinion_vector
from networks.core import InfluenceNetwork

from .baselines import BaselineParams
from .exceptions import UnknownModel
from .models import MODELS, synchronous_step
from .seeding import rng_for


def manipulation_run(
    x0,
    network: InfluenceNetwork,
    model: str,
    manipulated_agent: int,
    signal,
    *,
    params: BaselineParams | None = None,
    seed: int = 0,
) -> np.ndarray:
    """
    Trajectory (one row per time step, row 0 is ``x0``) with agent
    ``manipulated_agent`` forced to ``signal[t]`` at every step.

    For ``wm`` each step is a sweep of ``n`` random activations of the other
    agents; the averaging models take one synchronous step after which the
    manipulated opinion is forced again.
    """
    if model not in MODELS:
        raise UnknownModel(model)
    x = opinion_vector(x0, network.n)
    m = int(manipulated_agent)
    if not 0 <= m < network.n:
        raise ValueError(f"manipulated agent {m} out of range for n={network.n}")
    followers = np.array([i for i in range(network.n) if i != m])

    trajectory = [x.copy()]
    if model == "wm":
        rng = rng_for(seed)
        for value in signal:
            x[m] = value
            activated = rng.choice(followers, size=network.n) if followers.size else ()
            for i in activated:
                x[i] = med(int(i), x, network)
            trajectory.append(x.copy())
    else:
        step = synchronous_step(model, network, x.copy(), params)
        for value in signal:
            x[m] = value
            x = step(x)
            x[m] = value
            trajectory.append(x.copy())
    return np.vstack(trajectory)
