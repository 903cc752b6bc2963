import json

import numpy as np
import pandas as pd
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dynamics.baselines import identity_network
from dynamics.exceptions import UnknownModel
from dynamics.seeding import derive_seed
from networks.core import InfluenceNetwork
from networks.factories import disjoint_triangles, uniform_network
from networks.generators import GeneratorConfig

from .categories import OpinionCategory, categorize, category_codes, extremist_focus
from .centrality import (
    eigenvector_centrality,
    in_degree_centrality,
    radial_layout,
    radial_radii,
    topology_centralities,
)
from .exceptions import ExperimentError, OutOfRange, PowerIterationDiverged, UnknownDistribution
from .models import ExperimentRun
from .presets import PRESETS, SCALES, preset, run_study
from .runner import run_trials
from .samplers import DISTRIBUTIONS, sample_initial
from .serializers import ExperimentConfigSerializer
from .studies import (
    ConsensusStudy,
    DistributionStudy,
    ExtremenessStudy,
    GridCell,
    consensus_probability_experiment,
    count_modes,
    distribution_experiment,
    extremeness_centrality_experiment,
    find_quiet_link,
)

SMALL_BA = GeneratorConfig("ba", n=30, m=2, seed=1)


def star(n: int = 5) -> InfluenceNetwork:
    """Leaves put half their weight on hub 0; the hub only listens to itself."""
    return InfluenceNetwork.from_rows(n, [[(0, 1.0)]] + [[(0, 0.5), (i, 0.5)] for i in range(1, n)])


def path() -> InfluenceNetwork:
    return InfluenceNetwork.from_rows(
        3, [[(0, 0.5), (1, 0.5)], [(0, 1 / 3), (1, 1 / 3), (2, 1 / 3)], [(1, 0.5), (2, 0.5)]]
    )


class TestCentrality:
    def test_in_degree(self, k3u):
        np.testing.assert_allclose(in_degree_centrality(k3u), [1, 1, 1])
        np.testing.assert_array_equal(in_degree_centrality(identity_network(4)), np.ones(4))
        np.testing.assert_allclose(in_degree_centrality(star()), [3.0, 0.5, 0.5, 0.5, 0.5])

    def test_complete_graph_closeness(self):
        closeness = topology_centralities(uniform_network(4)).closeness
        assert np.all(closeness == closeness[0])

    def test_path_betweenness(self):
        betweenness = topology_centralities(path()).betweenness
        assert betweenness[1] > betweenness[0] == betweenness[2]

    def test_eigenvector_of_doubly_stochastic(self, k3u):
        np.testing.assert_allclose(eigenvector_centrality(k3u), [1 / 3, 1 / 3, 1 / 3])

    def test_eigenvector_sums_to_one(self):
        assert eigenvector_centrality(star()).sum() == pytest.approx(1.0)

    def test_power_iteration_budget(self):
        with pytest.raises(PowerIterationDiverged):
            eigenvector_centrality(star(), max_iterations=1)


class TestRadialLayout:
    def test_radii(self):
        raw, radius = radial_radii([10, 9])
        np.testing.assert_array_equal(raw, [0.0, 1.0])
        np.testing.assert_array_equal(radius, [0.0, 1.0])

    def test_equal_degrees(self):
        raw, radius = radial_radii([2, 2, 2])
        np.testing.assert_array_equal(radius, [0, 0, 0])

    def test_hub_sits_at_the_center(self):
        layout = radial_layout(star(), seed=1)
        assert layout.radius[0] == 0.0
        assert np.all(layout.radius[1:] == 1.0)
        assert np.all((layout.angle >= 0) & (layout.angle < 2 * np.pi))


class TestCategories:
    @pytest.mark.parametrize(
        "value, category",
        [
            (0.0, OpinionCategory.MODERATE),
            (-0.8, OpinionCategory.EXTREME),
            (0.25, OpinionCategory.MODERATE),
            (0.251, OpinionCategory.BIASED),
            (-0.5, OpinionCategory.BIASED),
            (0.75, OpinionCategory.RADICAL),
            (1.0, OpinionCategory.EXTREME),
        ],
    )
    def test_bins(self, value, category):
        assert categorize([value]) == [category]

    @pytest.mark.parametrize("value", [1.01, -2.0, float("nan")])
    def test_out_of_range(self, value):
        with pytest.raises(OutOfRange):
            categorize([0.0, value])

    @given(st.lists(st.floats(-1.0, 1.0, allow_nan=False), min_size=1))
    def test_bins_cover_the_interval(self, values):
        codes = category_codes(values)
        assert np.all((codes >= 0) & (codes <= 3))

    def test_extremist_focus(self):
        network = InfluenceNetwork.from_rows(5, [[(j, 0.2) for j in range(5)]] + [[(i, 1.0)] for i in range(1, 5)])
        focus = extremist_focus(network, [0.0, 0.9, -0.9, 0.0, 0.1])
        np.testing.assert_allclose(focus, [0.5, 0, 0, 0, 0])

    def test_focus_without_extremes(self, k3u):
        np.testing.assert_array_equal(extremist_focus(k3u, [0.1, -0.2, 0.3]), [0, 0, 0])

    def test_focus_all_extreme(self, k3u):
        np.testing.assert_array_equal(extremist_focus(k3u, [0.9, -0.9, 1.0]), [1, 1, 1])


class TestSamplers:
    def test_uniform_mean(self):
        assert abs(sample_initial("uniform", 100_000, 1).mean() - 0.5) < 0.01

    def test_beta22(self):
        x = sample_initial("beta22", 100_000, 2)
        assert abs(x.mean() - 0.5) < 0.01
        assert np.mean(x < 0.02) < 0.005

    def test_bimodal_modes(self):
        x = sample_initial("bimodal", 100_000, 3)
        counts, edges = np.histogram(x, bins=20, range=(0, 1))
        centers = (edges[:-1] + edges[1:]) / 2
        assert 0.05 <= centers[np.argmax(counts[:10])] <= 0.15
        assert 0.85 <= centers[10 + np.argmax(counts[10:])] <= 0.95
        assert abs(np.mean(x < 0.5) - 0.5) < 0.01

    def test_symmetric_range(self):
        x = sample_initial("uniform_symmetric", 1000, 4)
        assert x.min() >= -1 and x.max() <= 1 and x.min() < 0

    @pytest.mark.parametrize("name", sorted(DISTRIBUTIONS))
    def test_reproducible(self, name):
        np.testing.assert_array_equal(sample_initial(name, 50, 9), sample_initial(name, 50, 9))

    def test_unknown(self):
        with pytest.raises(UnknownDistribution):
            sample_initial("cauchy", 5, 0)


class TestRunTrials:
    def test_seeds_and_order(self):
        batch = run_trials(5, lambda k, seed: (k, seed), master_seed=11, threads=3)
        assert batch.ordered() == [(k, derive_seed(11, k)) for k in range(5)]

    def test_failures_are_recorded(self):
        def trial(k, seed):
            if k == 2:
                raise ValueError("boom")
            return k

        batch = run_trials(4, trial, master_seed=0)
        assert batch.ordered() == [0, 1, 3]
        (failure,) = batch.failures
        assert failure.trial_index == 2
        assert failure.error == "ValueError: boom"


class TestConsensusStudy:
    def test_single_maximal_cohesive_set(self):
        study = ConsensusStudy((GridCell(5, 4, 0.0),), trials=10, models=("wm",))
        result = consensus_probability_experiment(study, network=uniform_network(5))
        assert result.tables["cells"]["consensus_frequency"].tolist() == [1.0]

    def test_two_triangles_never_agree(self):
        study = ConsensusStudy((GridCell(6, 2, 0.0),), trials=10, models=("wm",))
        result = consensus_probability_experiment(study, network=disjoint_triangles())
        assert result.tables["cells"]["consensus_frequency"].tolist() == [0.0]

    def test_degroot_on_connected_grids(self):
        study = ConsensusStudy((GridCell(20, 4, 0.2), GridCell(20, 6, 1.0)), trials=4, models=("degroot",))
        result = consensus_probability_experiment(study)
        assert result.tables["cells"]["consensus_frequency"].tolist() == [1.0, 1.0]
        assert result.aggregate["trials_completed"] == 8

    def test_threads_do_not_change_results(self):
        study = ConsensusStudy((GridCell(12, 4, 0.3),), trials=6, models=("wm", "degroot"), master_seed=5)
        single = consensus_probability_experiment(study, threads=1)
        pooled = consensus_probability_experiment(study, threads=4)
        pd.testing.assert_frame_equal(single.tables["trials"], pooled.tables["trials"])
        assert single.aggregate == pooled.aggregate

    def test_unknown_model(self):
        with pytest.raises(UnknownModel):
            ConsensusStudy((GridCell(10, 4, 0.1),), models=("voter",))


class TestExtremenessStudy:
    def test_no_trials(self):
        result = extremeness_centrality_experiment(ExtremenessStudy(SMALL_BA, trials=0))
        assert result.aggregate["models"] == {}
        assert result.aggregate["trials_completed"] == 0
        assert result.failures == []
        assert result.tables["agents"].empty

    def test_frozen_dynamics_keep_categories(self):
        study = ExtremenessStudy(SMALL_BA, trials=3, models=("wm", "degroot"))
        result = extremeness_centrality_experiment(study, network=identity_network(30))
        agents = result.tables["agents"]
        assert (agents["initial"] == agents["final"]).all()
        assert [c.value for c in categorize(agents["initial"])] == agents["category"].tolist()

    def test_outcomes_carry_per_agent_data(self):
        result = extremeness_centrality_experiment(ExtremenessStudy(SMALL_BA, trials=2))
        assert len(result.outcomes) == 2
        outcome = result.outcomes[0]
        assert len(outcome.categories) == len(outcome.in_degree) == len(outcome.extremist_focus) == 30
        assert set(result.tables) == {"agents", "agent_summary", "categories", "in_degree_by_category", "focus_density"}


class TestDistributionStudy:
    def test_frozen_dynamics(self):
        study = DistributionStudy(SMALL_BA, ("uniform",), models=("wm", "degroot"), trials=2)
        histograms = distribution_experiment(study, network=identity_network(30)).tables["histograms"]
        for (trial, series), counts in histograms.groupby(["trial", "series"])["count"]:
            initial = histograms[(histograms["trial"] == trial) & (histograms["series"] == "initial")]["count"]
            assert counts.tolist() == initial.tolist()

    def test_degroot_collapses_to_one_bin(self):
        study = DistributionStudy(
            GeneratorConfig("ws", n=40, d=4, beta=0.2, seed=2), ("uniform",), models=("degroot",), tol=0.0
        )
        result = distribution_experiment(study)
        degroot = result.tables["histograms"].query("series == 'degroot'")
        assert (degroot["count"] > 0).sum() == 1
        assert result.aggregate["modes"]["uniform"]["degroot"]["max"] == 1

    @pytest.mark.parametrize("counts, modes", [([0, 1, 1, 0, 2, 0], 2), ([1, 1], 1), ([0, 0], 0), ([3, 0, 0, 1], 2)])
    def test_count_modes(self, counts, modes):
        assert count_modes(counts) == modes


class TestPerturbationStudy:
    def test_quiet_link_leaves_weighted_median_run_unchanged(self):
        result = run_study(preset("perturbation", "desk", seed=0))
        assert result.aggregate["wm_trajectory_identical"] is True
        assert result.aggregate["degroot_fixed_point_shift"] > 1e-6
        assert result.aggregate["network_hash"] != result.aggregate["perturbed_hash"]

    def test_no_room_for_a_quiet_link(self, k3u):
        with pytest.raises(ExperimentError):
            find_quiet_link(k3u, 0.01)


class TestManipulationStudy:
    def test_cohesive_followers_resist(self):
        result = run_study(preset("manipulation", "desk"))
        models = result.aggregate["models"]
        assert models["wm"]["followers_max_displacement"] == 0.0
        assert models["degroot"]["followers_beyond_initial_range"] is True


class TestPresets:
    @pytest.mark.parametrize("name", sorted(PRESETS))
    @pytest.mark.parametrize("scale", SCALES)
    def test_every_preset_builds(self, name, scale):
        study = preset(name, scale, seed=3)
        assert study.master_seed == 3
        json.dumps(study.as_dict())

    def test_unknown_preset(self):
        with pytest.raises(ExperimentError):
            preset("fig9")

    def test_unknown_scale(self):
        with pytest.raises(ExperimentError):
            preset("fig5", "huge")


class TestExperimentConfigSerializer:
    def test_preset_with_overrides(self):
        serializer = ExperimentConfigSerializer(data={"preset": "fig5", "trials": 3, "master_seed": 8, "models": ["wm"]})
        assert serializer.is_valid(), serializer.errors
        study = serializer.to_study()
        assert (study.trials, study.master_seed, study.models) == (3, 8, ("wm",))

    def test_explicit_study(self):
        data = {
            "study": "distribution",
            "network": {"family": "ws", "n": 20, "d": 4, "beta": 0.1},
            "distributions": ["beta22"],
        }
        serializer = ExperimentConfigSerializer(data=data)
        assert serializer.is_valid(), serializer.errors
        study = serializer.to_study()
        assert isinstance(study, DistributionStudy)
        assert study.network.n == 20
        assert study.distributions == ("beta22",)

    def test_consensus_cells(self):
        serializer = ExperimentConfigSerializer(
            data={"study": "consensus", "cells": [{"n": 10, "d": 4, "beta": 0.5}], "trials": 2}
        )
        assert serializer.is_valid(), serializer.errors
        assert serializer.to_study().cells == (GridCell(10, 4, 0.5),)

    @pytest.mark.parametrize(
        "data",
        [
            {},
            {"study": "extremeness"},
            {"study": "consensus"},
            {"preset": "fig5", "models": ["voter"]},
            {"preset": "fig5", "trials": -1},
        ],
    )
    def test_invalid(self, data):
        assert not ExperimentConfigSerializer(data=data).is_valid()


class TestStudyResult:
    def test_write(self, tmp_path):
        study = ConsensusStudy((GridCell(6, 2, 0.0),), trials=2, models=("wm",))
        result = consensus_probability_experiment(study, network=disjoint_triangles())
        written = result.write(tmp_path)
        assert [path.name for path in written] == ["cells.csv", "trials.csv", "aggregate.json"]
        document = json.loads((tmp_path / "aggregate.json").read_text())
        assert document["study"] == "consensus"
        assert document["config"]["trials"] == 2
        assert len(pd.read_csv(tmp_path / "trials.csv")) == 2

    def test_write_json_tables(self, tmp_path):
        study = ConsensusStudy((GridCell(6, 2, 0.0),), trials=2, models=("wm",))
        result = consensus_probability_experiment(study, network=disjoint_triangles())
        written = result.write(tmp_path, fmt="json")
        assert [path.name for path in written] == ["cells.json", "trials.json", "aggregate.json"]
        cells = json.loads((tmp_path / "cells.json").read_text())
        assert cells[0]["trials"] == 2
        assert cells[0]["model"] == "wm"

    @pytest.mark.django_db
    def test_record(self):
        study = ConsensusStudy((GridCell(6, 2, 0.0),), trials=3, models=("wm", "degroot"), master_seed=2**64 - 1)
        result = consensus_probability_experiment(study, network=disjoint_triangles())
        run = ExperimentRun.record(result, preset="", scale="")
        assert run.trials.count() == 6
        assert run.master_seed == str(2**64 - 1)
        assert run.to_dict()["master_seed"] == 2**64 - 1
        assert set(run.trials.values_list("model", flat=True)) == {"wm", "degroot"}


@pytest.mark.slow
class TestAtScale:
    def test_extreme_agents_have_low_in_degree(self):
        result = run_study(preset("fig3", "desk", seed=0), threads=4)
        wm = result.aggregate["models"]["wm"]
        margin = 2 * wm["extreme_in_degree_standard_error"]
        assert wm["extreme_mean_in_degree"] + margin < wm["population_mean_in_degree"]
        margin = 2 * wm["extreme_extremist_focus_standard_error"]
        assert wm["extreme_mean_extremist_focus"] > wm["population_mean_extremist_focus"] + margin

    def test_weighted_median_keeps_two_modes(self):
        result = run_study(preset("fig4", "desk", seed=0))
        assert result.aggregate["modes"]["bimodal"]["wm"]["min"] >= 2

    def test_consensus_falls_with_size_and_rises_with_rewiring(self):
        cells = run_study(preset("fig5", "desk", seed=0), threads=4).tables["cells"].set_index(["n", "beta", "model"])

        def gap_in_errors(low, high):
            first, second = cells.loc[low], cells.loc[high]
            error = np.hypot(first["standard_error"], second["standard_error"])
            return (second["consensus_frequency"] - first["consensus_frequency"]) / error

        assert gap_in_errors((20, 1.0, "wm"), (10, 1.0, "wm")) > 2
        assert gap_in_errors((40, 1.0, "wm"), (20, 1.0, "wm")) > 2
        assert gap_in_errors((30, 0.1, "wm"), (30, 1.0, "wm")) >= 2
        assert (cells.xs("degroot", level="model")["consensus_frequency"] == 1.0).all()

    def test_consensus_grid_is_reproducible(self):
        study = preset("fig5", "desk", seed=1)
        first = run_study(study, threads=1)
        second = run_study(study, threads=4)
        pd.testing.assert_frame_equal(first.tables["cells"], second.tables["cells"])
