"""
Asynchronous weighted-median dynamics.

At every step one agent is activated and replaces its opinion by the
tie-broken weighted median of its neighbors' opinions. Opinions never leave
the initial value set, so the exact fixed-point test is a sound stop rule.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np
import pandas as pd

from equilibria.verdicts import is_equilibrium
from kernel.median import med, opinion_vector
from networks.core import InfluenceNetwork
from networks.formats import write_table

from .exceptions import ScheduleExhausted, StepCapReached
from .schedules import UpdateSchedule

logger = logging.getLogger(__name__)

CONSENSUS_TOLERANCE = 1e-6


class StopReason(str, Enum):
    EQUILIBRIUM = "equilibrium"
    TOLERANCE = "tolerance"
    CONSENSUS = "consensus"
    MAX_STEPS = "max_steps"
    SCHEDULE_EXHAUSTED = "schedule_exhausted"


@dataclass
class RunResult:
    model: str
    final_opinions: np.ndarray
    steps_taken: int
    converged: bool
    stop_reason: StopReason
    changes: list[tuple[int, int, float]] = field(default_factory=list)
    snapshots: list[tuple[int, np.ndarray]] = field(default_factory=list)
    schedule: dict | None = None

    def is_consensus(self, tolerance: float = 0.0) -> bool:
        x = self.final_opinions
        return bool(x.max() - x.min() <= tolerance)

    @property
    def consensus(self) -> bool:
        return self.is_consensus(0.0 if self.model == "wm" else CONSENSUS_TOLERANCE)

    def raise_for_status(self):
        if self.stop_reason is StopReason.SCHEDULE_EXHAUSTED:
            raise ScheduleExhausted(self)
        if self.stop_reason is StopReason.MAX_STEPS:
            raise StepCapReached(self)

    def trajectory_rows(self) -> list[tuple[int, int, float]]:
        """``(step, agent, opinion)``: changed values for WM, every agent per recorded iteration otherwise."""
        if self.model == "wm":
            return list(self.changes)
        return [(step, i, float(value)) for step, x in self.snapshots if step > 0 for i, value in enumerate(x)]

    def as_record(self) -> dict:
        return {
            "model": self.model,
            "steps_taken": self.steps_taken,
            "converged": self.converged,
            "consensus": self.consensus,
            "stop_reason": self.stop_reason.value,
            "schedule": self.schedule,
            "final_opinions": self.final_opinions.tolist(),
        }


def write_trajectory(rows, path, fmt: str = "csv") -> Path:
    return write_table(pd.DataFrame(list(rows), columns=["step", "agent", "opinion"]), path, fmt)


def wm_step(x, network: InfluenceNetwork, i: int) -> np.ndarray:
    x = opinion_vector(x, network.n)
    x[i] = med(i, x, network)
    return x


def wm_run(
    x0,
    network: InfluenceNetwork,
    schedule: UpdateSchedule | None = None,
    max_steps: int | None = None,
    *,
    snapshot_every: int | None = None,
) -> RunResult:
    """
    Run the weighted-median dynamics along ``schedule`` until an equilibrium.

    The fixed-point test runs before the first activation and after every
    ``n`` activations, skipped when nothing changed since the last failed
    test. Runs that hit ``max_steps`` (default ``50 n**2``) or exhaust a
    prescribed schedule come back flagged, not raised.
    """
    n = network.n
    x = opinion_vector(x0, n)
    schedule = schedule or UpdateSchedule.uniform_random(0)
    cap = 50 * n * n if max_steps is None else max_steps
    changes: list[tuple[int, int, float]] = []
    snapshots = [(0, x.copy())] if snapshot_every else []

    def finish(steps, reason):
        converged = reason is StopReason.EQUILIBRIUM
        if not converged and is_equilibrium(network, x):
            reason, converged = StopReason.EQUILIBRIUM, True
        if reason is StopReason.MAX_STEPS:
            logger.warning("WM run hit the step cap of %d activations (n=%d)", cap, n)
        logger.debug("WM run stopped after %d activations: %s", steps, reason.value)
        return RunResult("wm", x, steps, converged, reason, changes, snapshots, schedule.as_dict())

    if is_equilibrium(network, x):
        return finish(0, StopReason.EQUILIBRIUM)

    activations = schedule.stream(n)
    steps, dirty = 0, False
    while steps < cap:
        try:
            i = next(activations)
        except StopIteration:
            return finish(steps, StopReason.SCHEDULE_EXHAUSTED)

        value = med(i, x, network)
        steps += 1
        if value != x[i]:
            x[i] = value
            changes.append((steps, i, value))
            dirty = True

        if snapshot_every and steps % snapshot_every == 0:
            snapshots.append((steps, x.copy()))
        if steps % n == 0 and dirty:
            if is_equilibrium(network, x):
                return finish(steps, StopReason.EQUILIBRIUM)
            dirty = False

    return finish(steps, StopReason.MAX_STEPS)
