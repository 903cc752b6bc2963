import numpy as np
import pytest

from .data import GroupExperiment, RoundData, load_rounds, synthetic_rounds
from .exceptions import DegenerateRegression, MissingData, TooFewSamples, ValidationPipelineError, ZeroTruth
from .fitting import fit_parameter, fit_parameters
from .hypotheses import Hypothesis, group_mean, group_median, predict
from .scoring import error_metrics, evaluate, median_confidence_interval


def six_answers() -> GroupExperiment:
    answers = np.arange(1.0, 7.0).reshape(6, 1, 1).repeat(2, axis=2)
    return GroupExperiment("e1", "counting", tuple(f"p{p}" for p in range(6)), answers, np.array([3.0]))


def summary(report: dict, hypothesis: str, transition: str = "1->2", game: str = "counting") -> dict:
    return report["games"][game]["transitions"][transition]["hypotheses"][hypothesis]


class TestHypotheses:
    def test_median_breaks_ties_toward_own_answer(self):
        predicted = predict(Hypothesis.H1, six_answers(), 1)
        assert predicted[2, 0] == 3.0
        np.testing.assert_array_equal(predicted[:, 0], [3, 3, 3, 4, 4, 4])

    def test_mean(self):
        predicted = predict(Hypothesis.H2, six_answers(), 1)
        np.testing.assert_array_equal(predicted[:, 0], np.full(6, 3.5))

    def test_odd_group_median(self):
        np.testing.assert_array_equal(group_median([[5.0], [1.0], [9.0]]), [[5.0], [5.0], [5.0]])
        np.testing.assert_array_equal(group_mean([[5.0], [1.0], [9.0]]), [[5.0], [5.0], [5.0]])

    def test_zero_inertia_is_the_median(self):
        experiment = synthetic_rounds("mean", seed=2).experiments[0]
        np.testing.assert_array_equal(
            predict(Hypothesis.H3, experiment, 1, np.zeros(6)), predict(Hypothesis.H1, experiment, 1)
        )

    def test_fitted_rules_need_parameters(self):
        with pytest.raises(MissingData):
            predict(Hypothesis.H3, six_answers(), 1)

    def test_missing_transition(self):
        with pytest.raises(MissingData):
            predict(Hypothesis.H1, six_answers(), 2)

    def test_parse(self):
        assert Hypothesis.parse("h1, H3") == [Hypothesis.H1, Hypothesis.H3]
        with pytest.raises(ValidationPipelineError):
            Hypothesis.parse("H1,H9")


class TestFitting:
    def test_recovers_inertia(self):
        data = synthetic_rounds("inertia", seed=5, inertia=0.4)
        for experiment in data.experiments:
            for t in (1, 2):
                np.testing.assert_allclose(fit_parameters(Hypothesis.H3, experiment, t), 0.4, atol=1e-9)

    def test_non_mover_keeps_everything(self):
        anchors = np.array([10.0, 20.0, 35.0])
        assert fit_parameter(anchors, [15.0, 15.0, 15.0], anchors) == pytest.approx(1.0)

    def test_constant_regressor(self):
        with pytest.raises(DegenerateRegression):
            fit_parameter([4.0, 4.0], [4.0, 4.0], [5.0, 6.0])

    def test_too_few_points(self):
        with pytest.raises(DegenerateRegression):
            fit_parameter([1.0], [2.0], [3.0])

    def test_degenerate_participants_get_nan(self):
        # After one median round every answer already sits inside the median interval.
        experiment = synthetic_rounds("median", seed=1).experiments[0]
        assert np.isnan(fit_parameters(Hypothesis.H3, experiment, 2)).all()
        with pytest.raises(DegenerateRegression):
            fit_parameters(Hypothesis.H3, experiment, 2, strict=True)

    def test_unfitted_rule(self):
        with pytest.raises(MissingData):
            fit_parameters(Hypothesis.H1, six_answers(), 1)


class TestErrorMetrics:
    def test_error_rate(self):
        assert error_metrics([11.0], [10.0])["mer"] == pytest.approx(0.1)

    def test_summaries(self):
        metrics = error_metrics([1.0, 2.0], [2.0, 2.0])
        assert metrics["mer"] == pytest.approx(0.25)
        assert metrics["mae"] == pytest.approx(0.5)
        np.testing.assert_allclose(metrics["errors"], [0.5, 0.0])

    def test_absolute_errors(self):
        metrics = error_metrics([1.0, 2.0], [2.0, 2.0], rates=False)
        assert metrics["mer"] is None
        np.testing.assert_allclose(metrics["errors"], [1.0, 0.0])

    def test_zero_truth(self):
        with pytest.raises(ZeroTruth) as excinfo:
            error_metrics([1.0, 1.0], [1.0, 0.0])
        assert excinfo.value.index == 1


class TestConfidenceInterval:
    def test_needs_six_samples(self):
        with pytest.raises(TooFewSamples):
            median_confidence_interval(range(5))

    def test_constant_sample(self):
        assert median_confidence_interval([2.5] * 10) == (2.5, 2.5)

    def test_order_statistics(self):
        assert median_confidence_interval(np.arange(10.0, 0.0, -1.0)) == (2.0, 9.0)


class TestEvaluate:
    def test_median_fixture_favours_the_median(self):
        report = evaluate(synthetic_rounds("median", seed=3), [Hypothesis.H1, Hypothesis.H2]).report
        assert summary(report, "H1")["median_error"] == 0.0
        assert summary(report, "H2")["median_error"] > 0.0
        assert report["games"]["counting"]["transitions"]["1->2"]["improvements"]["H1 vs H2"] == pytest.approx(1.0)

    def test_mean_fixture_favours_the_mean(self):
        report = evaluate(synthetic_rounds("mean", seed=3), [Hypothesis.H1, Hypothesis.H2]).report
        assert summary(report, "H2")["median_error"] == 0.0
        assert summary(report, "H1")["median_error"] > 0.0

    def test_gauging_uses_absolute_errors(self):
        report = evaluate(synthetic_rounds("median", seed=3, game="gauging"), [Hypothesis.H1]).report
        assert summary(report, "H1", game="gauging")["metric"] == "absolute_error"
        assert "MAE" in summary(report, "H1", game="gauging")

    def test_fitted_rules_score_held_out_questions(self):
        evaluation = evaluate(synthetic_rounds("inertia", seed=4), [Hypothesis.H3], transitions=(1,))
        fitted = summary(evaluation.report, "H3")
        assert fitted["median_parameter"] == pytest.approx(0.4)
        assert fitted["degenerate_participants"] == 0
        assert evaluation.points["question"].min() == 21


class TestLoadRounds:
    def test_round_trip(self, tmp_path):
        data = synthetic_rounds("inertia", seed=6, experiments=2)
        path = tmp_path / "rounds.csv"
        data.to_frame().to_csv(path, index=False)

        loaded = load_rounds(path)

        assert [e.experiment_id for e in loaded.experiments] == [e.experiment_id for e in data.experiments]
        for original, restored in zip(data.experiments, loaded.experiments):
            assert restored.participants == original.participants
            np.testing.assert_allclose(restored.answers, original.answers, rtol=1e-12)

    def test_incomplete_participants_are_dropped(self, tmp_path):
        frame = synthetic_rounds("median", seed=6, experiments=1).to_frame()
        gap = (frame["participant_id"] == "p0-4") & (frame["question"] == 7) & (frame["round"] == 3)
        frame[~gap].to_csv(tmp_path / "rounds.csv", index=False)

        experiment = load_rounds(tmp_path / "rounds.csv").experiments[0]

        assert "p0-4" not in experiment.participants
        assert experiment.answers.shape == (5, 30, 3)

    def test_missing_columns(self, tmp_path):
        synthetic_rounds("median").to_frame().drop(columns=["truth"]).to_csv(tmp_path / "rounds.csv", index=False)
        with pytest.raises(MissingData):
            load_rounds(tmp_path / "rounds.csv")

    def test_games_are_checked(self):
        with pytest.raises(ValidationPipelineError):
            GroupExperiment("e", "gauging", ("a", "b"), np.full((2, 1, 1), 120.0), np.array([50.0]))
        with pytest.raises(ValidationPipelineError):
            synthetic_rounds("mode")

    def test_by_game(self):
        data = RoundData(synthetic_rounds("median").experiments + synthetic_rounds("mean", game="gauging").experiments)
        assert data.games == ["counting", "gauging"]
        assert len(data.by_game("gauging")) == 4
