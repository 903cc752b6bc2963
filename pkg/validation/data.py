"""
Answers of small anonymous groups estimating the same quantity over several rounds.

CSV schema: ``experiment_id,participant_id,question,round,answer,truth,game``
with 1-based questions and rounds. ``game`` is ``counting`` (positive counts)
or ``gauging`` (percentages in [0, 100]).
"""

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from dynamics.seeding import rng_for, substream

from .exceptions import MissingData, ValidationPipelineError
from .hypotheses import group_mean, group_median

logger = logging.getLogger(__name__)

COLUMNS = ["experiment_id", "participant_id", "question", "round", "answer", "truth", "game"]
GAMES = ("counting", "gauging")
QUESTIONS = 30
ROUNDS = 3
PARTICIPANTS = 6


@dataclass(frozen=True)
class GroupExperiment:
    experiment_id: str
    game: str
    participants: tuple[str, ...]
    answers: np.ndarray  # (participant, question, round)
    truth: np.ndarray  # (question,)

    def __post_init__(self):
        if self.game not in GAMES:
            raise ValidationPipelineError(f"experiment {self.experiment_id}: unknown game {self.game!r}")
        if self.game == "counting" and np.any(self.answers <= 0):
            raise ValidationPipelineError(f"experiment {self.experiment_id}: counting answers must be positive")
        if self.game == "gauging" and np.any((self.answers < 0) | (self.answers > 100)):
            raise ValidationPipelineError(f"experiment {self.experiment_id}: gauging answers must lie in [0, 100]")

    @property
    def questions(self) -> int:
        return self.answers.shape[1]

    @property
    def rounds(self) -> int:
        return self.answers.shape[2]

    def round(self, t: int) -> np.ndarray:
        """Answers of round ``t`` (1-based), participants by questions."""
        if not 1 <= t <= self.rounds:
            raise MissingData(f"experiment {self.experiment_id} has no round {t}")
        return self.answers[:, :, t - 1]


@dataclass(frozen=True)
class RoundData:
    experiments: tuple[GroupExperiment, ...]

    def by_game(self, game: str) -> list[GroupExperiment]:
        return [experiment for experiment in self.experiments if experiment.game == game]

    @property
    def games(self) -> list[str]:
        return [game for game in GAMES if self.by_game(game)]

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "experiment_id": experiment.experiment_id,
                "participant_id": participant,
                "question": q + 1,
                "round": t + 1,
                "answer": float(experiment.answers[p, q, t]),
                "truth": float(experiment.truth[q]),
                "game": experiment.game,
            }
            for experiment in self.experiments
            for p, participant in enumerate(experiment.participants)
            for q in range(experiment.questions)
            for t in range(experiment.rounds)
        ]
        return pd.DataFrame(rows, columns=COLUMNS)


def load_rounds(path, *, questions: int = QUESTIONS, rounds: int = ROUNDS) -> RoundData:
    """
    Read the published CSV schema. Participants without every answer of every
    question and round are dropped, as are groups left with fewer than two.
    """
    frame = pd.read_csv(path, dtype={"experiment_id": str, "participant_id": str})
    missing = [column for column in COLUMNS if column not in frame.columns]
    if missing:
        raise MissingData(f"{path}: missing columns {', '.join(missing)}")
    frame = frame.dropna(subset=["answer"])

    experiments = []
    for experiment_id, group in frame.groupby("experiment_id", sort=True):
        games = group["game"].unique()
        if len(games) != 1:
            raise ValidationPipelineError(f"experiment {experiment_id} mixes games {sorted(games)}")

        cube = group.pivot_table(
            index="participant_id", columns=["question", "round"], values="answer", aggfunc="first"
        )
        wanted = pd.MultiIndex.from_product([range(1, questions + 1), range(1, rounds + 1)], names=["question", "round"])
        cube = cube.reindex(columns=wanted)
        complete = cube.dropna()
        if len(complete) < len(cube):
            logger.warning("Experiment %s: dropped %d incomplete participants", experiment_id, len(cube) - len(complete))
        if len(complete) < 2:
            logger.warning("Experiment %s: fewer than two complete participants, skipped", experiment_id)
            continue

        truth = group.groupby("question")["truth"].first().reindex(range(1, questions + 1)).to_numpy(dtype=np.float64)
        experiments.append(
            GroupExperiment(
                experiment_id=str(experiment_id),
                game=str(games[0]),
                participants=tuple(str(p) for p in complete.index),
                answers=complete.to_numpy(dtype=np.float64).reshape(len(complete), questions, rounds),
                truth=truth,
            )
        )
    if not experiments:
        raise MissingData(f"{path}: no experiment with complete answers")
    logger.info("Loaded %d experiments from %s", len(experiments), path)
    return RoundData(tuple(experiments))


def _first_round(rng, game: str, truth: np.ndarray, participants: int) -> np.ndarray:
    if game == "counting":
        return truth * np.exp(rng.normal(0.0, 0.4, (participants, truth.size)))
    return np.clip(truth + rng.normal(0.0, 15.0, (participants, truth.size)), 0.0, 100.0)


def synthetic_rounds(
    kind: str,
    seed: int = 0,
    *,
    experiments: int = 4,
    participants: int = PARTICIPANTS,
    questions: int = QUESTIONS,
    rounds: int = ROUNDS,
    game: str = "counting",
    inertia: float = 0.4,
) -> RoundData:
    """
    Noiseless fixtures: first-round answers scatter around a truth, later rounds
    follow exactly one rule. ``median`` and ``mean`` apply the group median (tie
    broken toward the own answer) or the group mean; ``inertia`` keeps the
    fraction ``inertia`` of the own answer and moves the rest to the median.
    """
    if kind not in ("median", "mean", "inertia"):
        raise ValidationPipelineError(f"unknown synthetic kind {kind!r}")
    built = []
    for e in range(experiments):
        rng = rng_for(substream(seed, f"group{e}"))
        truth = rng.uniform(100.0, 1000.0, questions) if game == "counting" else rng.uniform(5.0, 95.0, questions)
        answers = np.empty((participants, questions, rounds))
        answers[:, :, 0] = _first_round(rng, game, truth, participants)
        for t in range(1, rounds):
            current = answers[:, :, t - 1]
            if kind == "median":
                answers[:, :, t] = group_median(current)
            elif kind == "mean":
                answers[:, :, t] = group_mean(current)
            else:
                answers[:, :, t] = inertia * current + (1.0 - inertia) * group_median(current)
        built.append(
            GroupExperiment(
                experiment_id=f"synthetic-{kind}-{e}",
                game=game,
                participants=tuple(f"p{e}-{p}" for p in range(participants)),
                answers=answers,
                truth=truth,
            )
        )
    return RoundData(tuple(built))
