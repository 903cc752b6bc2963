"""
Per-participant least-squares fits for the inertia and anchoring rules.

Every fitted rule has the shape ``y = w * a + (1 - w) * c`` with ``a`` the
anchor answer and ``c`` the group center, so ``y - c = w * (a - c)``: a
regression through the origin of the move toward the center on the gap.
"""

import logging

import numpy as np

from .exceptions import DegenerateRegression, MissingData
from .hypotheses import Hypothesis, anchor, center

logger = logging.getLogger(__name__)

TRAINING_QUESTIONS = 20


def training(questions: int) -> slice:
    return slice(0, min(TRAINING_QUESTIONS, questions))


def testing(questions: int) -> slice:
    return slice(min(TRAINING_QUESTIONS, questions), questions)


def fit_parameter(anchors, centers, observed, *, participant: str = "?") -> float:
    anchors, centers, observed = (np.asarray(values, dtype=np.float64) for values in (anchors, centers, observed))
    gap = anchors - centers
    if gap.size < 2:
        raise DegenerateRegression(participant, f"{gap.size} training points")
    if np.ptp(gap) == 0:
        raise DegenerateRegression(participant, "constant regressor")
    return float(np.dot(gap, observed - centers) / np.dot(gap, gap))


def fit_parameters(hypothesis: Hypothesis, experiment, t: int, *, strict: bool = False) -> np.ndarray:
    """
    One weight per participant for the ``t -> t + 1`` transition, fitted on the
    training questions. Degenerate participants get NaN unless ``strict``.
    """
    hypothesis = Hypothesis(hypothesis)
    if not hypothesis.fitted:
        raise MissingData(f"{hypothesis.value} has no parameters")
    if not 1 <= t < experiment.rounds:
        raise MissingData(f"experiment {experiment.experiment_id} has no transition {t}->{t + 1}")

    window = training(experiment.questions)
    anchors = anchor(hypothesis, experiment, t)[:, window]
    centers = center(hypothesis, experiment.round(t))[:, window]
    observed = experiment.round(t + 1)[:, window]

    weights = np.full(len(experiment.participants), np.nan)
    for p, participant in enumerate(experiment.participants):
        try:
            weights[p] = fit_parameter(anchors[p], centers[p], observed[p], participant=participant)
        except DegenerateRegression as exc:
            if strict:
                raise
            logger.warning("%s, transition %d->%d: %s", hypothesis.value, t, t + 1, exc)
    return weights
