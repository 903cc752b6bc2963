"""
Candidate rules for how a participant revises an answer after seeing the group.

Median-based rules use the group median with the tie broken toward the
participant's own answer: with an even group the median set is the closed
interval between the two middle answers, and the member closest to the own
answer is the own answer clipped into it.
"""

from enum import Enum

import numpy as np

from .exceptions import MissingData, ValidationPipelineError


class Hypothesis(str, Enum):
    H1 = "H1"  # median
    H2 = "H2"  # mean
    H3 = "H3"  # median with inertia
    H4 = "H4"  # mean with inertia
    H5 = "H5"  # median anchored on the first answer
    H6 = "H6"  # mean anchored on the first answer

    @property
    def fitted(self) -> bool:
        return self not in (Hypothesis.H1, Hypothesis.H2)

    @property
    def uses_median(self) -> bool:
        return self in (Hypothesis.H1, Hypothesis.H3, Hypothesis.H5)

    @property
    def anchored(self) -> bool:
        return self in (Hypothesis.H5, Hypothesis.H6)

    @classmethod
    def parse(cls, names) -> list["Hypothesis"]:
        if isinstance(names, str):
            names = [name for name in names.split(",") if name.strip()]
        try:
            return [cls(name.strip().upper()) for name in names]
        except ValueError as exc:
            raise ValidationPipelineError(f"unknown hypothesis in {list(names)}") from exc


def group_median(answers: np.ndarray) -> np.ndarray:
    """Per-participant median of ``answers`` (participants by questions)."""
    answers = np.asarray(answers, dtype=np.float64)
    ordered = np.sort(answers, axis=0)
    size = ordered.shape[0]
    lower = ordered[(size - 1) // 2]
    upper = ordered[size // 2]
    return np.clip(answers, lower, upper)


def group_mean(answers: np.ndarray) -> np.ndarray:
    answers = np.asarray(answers, dtype=np.float64)
    return np.broadcast_to(answers.mean(axis=0), answers.shape).copy()


def center(hypothesis: Hypothesis, answers: np.ndarray) -> np.ndarray:
    return group_median(answers) if hypothesis.uses_median else group_mean(answers)


def anchor(hypothesis: Hypothesis, experiment, t: int) -> np.ndarray:
    """The answer a fitted rule keeps a share of: the first answer for anchored rules, else the current one."""
    return experiment.round(1) if hypothesis.anchored else experiment.round(t)


def predict(hypothesis: Hypothesis, experiment, t: int, params=None) -> np.ndarray:
    """
    Predicted round ``t + 1`` answers, participants by questions. Fitted rules
    take one parameter per participant; NaN parameters give NaN predictions.
    """
    hypothesis = Hypothesis(hypothesis)
    if not 1 <= t < experiment.rounds:
        raise MissingData(f"experiment {experiment.experiment_id} has no transition {t}->{t + 1}")
    current = experiment.round(t)
    middle = center(hypothesis, current)
    if not hypothesis.fitted:
        return middle
    if params is None:
        raise MissingData(f"{hypothesis.value} needs fitted parameters")
    weight = np.asarray(params, dtype=np.float64).reshape(-1, 1)
    if weight.shape[0] != current.shape[0]:
        raise MissingData(f"expected {current.shape[0]} parameters, got {weight.shape[0]}")
    return weight * anchor(hypothesis, experiment, t) + (1.0 - weight) * middle
