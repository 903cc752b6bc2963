"""
Seeded Monte Carlo trials on a thread pool.

Trial ``k`` always receives ``derive_seed(master_seed, k)`` and results are
keyed by ``k``, so the output does not depend on the number of workers.
"""

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from dynamics.seeding import derive_seed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrialFailure:
    trial_index: int
    seed: int
    error: str

    def as_dict(self) -> dict:
        return {"trial_index": self.trial_index, "seed": self.seed, "error": self.error}


@dataclass
class TrialBatch:
    results: dict[int, Any] = field(default_factory=dict)
    failures: list[TrialFailure] = field(default_factory=list)

    def ordered(self) -> list[Any]:
        return [self.results[k] for k in sorted(self.results)]


def run_trials(
    count: int,
    trial: Callable[[int, int], Any],
    *,
    master_seed: int,
    threads: int = 1,
    label: str = "trial",
) -> TrialBatch:
    """
    Call ``trial(index, seed)`` for ``index`` in ``range(count)``.

    A trial that raises is recorded as a :class:`TrialFailure` and the batch
    carries on.
    """
    seeds = [derive_seed(master_seed, k) for k in range(count)]

    def attempt(k):
        try:
            return k, trial(k, seeds[k]), None
        except Exception as exc:  # noqa: BLE001
            logger.warning("%s %d (seed=%d) failed: %s", label, k, seeds[k], exc)
            return k, None, TrialFailure(k, seeds[k], f"{type(exc).__name__}: {exc}")

    if threads > 1 and count > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(attempt, range(count)))
    else:
        outcomes = [attempt(k) for k in range(count)]

    batch = TrialBatch()
    for k, result, failure in outcomes:
        if failure is None:
            batch.results[k] = result
        else:
            batch.failures.append(failure)
    logger.debug("%s batch: %d ok, %d failed", label, len(batch.results), len(batch.failures))
    return batch
