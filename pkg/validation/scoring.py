import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy import stats

from .data import RoundData
from .exceptions import TooFewSamples, ZeroTruth
from .fitting import fit_parameters, testing
from .hypotheses import Hypothesis, predict

logger = logging.getLogger(__name__)

MIN_CI_SAMPLES = 6
COMPARISONS = ((Hypothesis.H1, Hypothesis.H2), (Hypothesis.H3, Hypothesis.H4), (Hypothesis.H5, Hypothesis.H6))
POINT_COLUMNS = [
    "game", "experiment_id", "participant_id", "question", "transition", "hypothesis", "prediction", "observed", "error",
]


def error_metrics(predictions, observations, *, rates: bool = True) -> dict:
    """
    Per-point errors and their summaries. ``errors`` holds error rates
    ``|prediction - observed| / observed`` when ``rates`` is set, absolute
    errors otherwise.
    """
    predictions = np.asarray(predictions, dtype=np.float64)
    observations = np.asarray(observations, dtype=np.float64)
    absolute = np.abs(predictions - observations)
    metrics = {
        "mae": float(absolute.mean()) if absolute.size else None,
        "median_absolute_error": float(np.median(absolute)) if absolute.size else None,
        "mer": None,
        "median_error_rate": None,
        "errors": absolute,
    }
    if rates:
        zero = np.flatnonzero(observations == 0)
        if zero.size:
            raise ZeroTruth(int(zero[0]))
        rate = absolute / np.abs(observations)
        metrics.update(
            errors=rate,
            mer=float(rate.mean()) if rate.size else None,
            median_error_rate=float(np.median(rate)) if rate.size else None,
        )
    return metrics


def median_confidence_interval(sample, level: float = 0.95) -> tuple[float, float]:
    """Distribution-free interval for the median from order statistics and the Binomial(n, 1/2) law."""
    ordered = np.sort(np.asarray(sample, dtype=np.float64))
    n = ordered.size
    if n < MIN_CI_SAMPLES:
        raise TooFewSamples(n, MIN_CI_SAMPLES)
    tail = (1.0 - level) / 2.0
    k = np.arange(1, n // 2 + 1)
    allowed = k[stats.binom.cdf(k - 1, n, 0.5) <= tail]
    k = int(allowed.max()) if allowed.size else 1
    return float(ordered[k - 1]), float(ordered[n - k])


@dataclass
class Evaluation:
    report: dict
    points: pd.DataFrame


def _summary(errors: np.ndarray, rates: bool) -> dict:
    summary = {
        "metric": "error_rate" if rates else "absolute_error",
        "points": int(errors.size),
        "median_error": float(np.median(errors)) if errors.size else None,
        "ci_low": None,
        "ci_high": None,
        "MER" if rates else "MAE": float(errors.mean()) if errors.size else None,
    }
    try:
        summary["ci_low"], summary["ci_high"] = median_confidence_interval(errors)
    except TooFewSamples as exc:
        logger.warning("No confidence interval: %s", exc)
    return summary


def _improvement(better: dict, worse: dict):
    if better is None or worse is None or not worse["median_error"]:
        return None
    return (worse["median_error"] - better["median_error"]) / worse["median_error"]


def evaluate(data: RoundData, hypotheses=tuple(Hypothesis), transitions=(1, 2)) -> Evaluation:
    """
    Score each rule per game and round transition. Counting games are scored by
    error rate, gauging games (answers already in percent) by absolute error.
    Rules with fitted weights are scored on the held-out questions only.
    """
    hypotheses = [Hypothesis(h) for h in hypotheses]
    report = {"hypotheses": [h.value for h in hypotheses], "transitions": list(transitions), "games": {}}
    rows = []
    for game in data.games:
        rates = game == "counting"
        experiments = data.by_game(game)
        per_transition = {}
        for t in transitions:
            key = f"{t}->{t + 1}"
            collected = {h: [] for h in hypotheses}
            parameters = {h: [] for h in hypotheses if h.fitted}
            for experiment in experiments:
                observed = experiment.round(t + 1)
                for h in hypotheses:
                    params = None
                    questions = slice(0, experiment.questions)
                    if h.fitted:
                        params = fit_parameters(h, experiment, t)
                        parameters[h].extend(params.tolist())
                        questions = testing(experiment.questions)
                    predicted = predict(h, experiment, t, params)[:, questions]
                    actual = observed[:, questions]
                    keep = np.isfinite(predicted)
                    errors = error_metrics(predicted[keep], actual[keep], rates=rates)["errors"]
                    collected[h].append(errors)

                    participant, question = np.nonzero(keep)
                    for error, p, q, prediction, value in zip(
                        errors, participant, question + questions.start, predicted[keep], actual[keep]
                    ):
                        rows.append(
                            (game, experiment.experiment_id, experiment.participants[p], int(q) + 1, key, h.value,
                             float(prediction), float(value), float(error))
                        )

            summaries = {}
            for h in hypotheses:
                summaries[h.value] = _summary(np.concatenate(collected[h]) if collected[h] else np.empty(0), rates)
                if h.fitted:
                    fitted = np.asarray(parameters[h], dtype=np.float64)
                    fitted = fitted[np.isfinite(fitted)]
                    summaries[h.value]["median_parameter"] = float(np.median(fitted)) if fitted.size else None
                    summaries[h.value]["degenerate_participants"] = int(len(parameters[h]) - fitted.size)
            improvements = {
                f"{a.value} vs {b.value}": _improvement(summaries.get(a.value), summaries.get(b.value))
                for a, b in COMPARISONS
                if a in hypotheses and b in hypotheses
            }
            per_transition[key] = {"hypotheses": summaries, "improvements": improvements}
            logger.info("Scored %s transition %s over %d experiments", game, key, len(experiments))
        report["games"][game] = {"experiments": len(experiments), "transitions": per_transition}
    return Evaluation(report=report, points=pd.DataFrame(rows, columns=POINT_COLUMNS))
