import numpy as np
import pandas as pd
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equilibria.verdicts import VerdictKind, classify, is_equilibrium
from networks.core import InfluenceNetwork
from networks.factories import uniform_network
from networks.generators import GeneratorConfig, generate
from networks.strategies import generic_networks, network_and_opinions, opinions

from .baselines import (
    BaselineParams,
    choose_stubborn,
    degroot_run,
    fj_run,
    identity_network,
    make_stubborn,
    nbc_run,
    sample_baseline_params,
    stubborn_run,
)
from .engine import StopReason, wm_run, wm_step, write_trajectory
from .exceptions import ScheduleExhausted, StepCapReached, UnknownModel
from .manipulation import manipulation_run
from .models import MODELS, check_models, run_model
from .schedules import UpdateSchedule
from .seeding import derive_seed, rng_for, splitmix64, substream
from .steering import steering_sequence

PAIR = InfluenceNetwork.from_rows(2, [[(0, 0.5), (1, 0.5)], [(0, 0.5), (1, 0.5)]])
INTEGERS = [float(v) for v in range(4)]


def bridged_triangles() -> InfluenceNetwork:
    """Two triangles with 0.9 of every row inside its own triangle and a 0.1 bridge across."""
    rows = [[(j, 0.3) for j in range(3)] + [(3, 0.1)] for _ in range(3)]
    rows += [[(0, 0.1)] + [(j, 0.3) for j in range(3, 6)] for _ in range(3)]
    return InfluenceNetwork.from_rows(6, rows)


def followers_and_signal() -> InfluenceNetwork:
    """Agents 0-2 keep 0.9 among themselves and listen to agent 3 with 0.1; agent 3 listens to nobody."""
    rows = [[(j, 0.3) for j in range(3)] + [(3, 0.1)] for _ in range(3)] + [[(3, 1.0)]]
    return InfluenceNetwork.from_rows(4, rows)


def apply_sequence(x, network, sequence):
    for i in sequence:
        x = wm_step(x, network, i)
    return x


class TestSeeding:
    def test_splitmix64_reference_value(self):
        assert splitmix64(0) == 0xE220A8397B1DCDAF

    def test_trial_seeds(self):
        assert derive_seed(42, 7) == derive_seed(42, 7)
        assert len({derive_seed(42, t) for t in range(1000)}) == 1000
        assert derive_seed(42, 0) != derive_seed(43, 0)

    def test_substreams_are_independent(self):
        assert substream(5, "opinions") != substream(5, "schedule")
        a, b = rng_for(substream(5, "opinions")).random(4), rng_for(substream(5, "opinions")).random(4)
        np.testing.assert_array_equal(a, b)


class TestWmStep:
    def test_only_the_activated_agent_moves(self, k3u):
        np.testing.assert_array_equal(wm_step([0, 1, 2], k3u, 0), [1, 1, 2])

    def test_tie_keeps_own_opinion(self):
        np.testing.assert_array_equal(wm_step([0, 1], PAIR, 0), [0, 1])

    def test_equilibrium_is_fixed(self, two_triangles):
        x = np.array([0, 0, 0, 1, 1, 1], dtype=float)
        for i in range(6):
            np.testing.assert_array_equal(wm_step(x, two_triangles, i), x)


class TestWmRun:
    def test_uniform_triangle_reaches_consensus(self, k3u):
        result = wm_run([0, 1, 2], k3u, UpdateSchedule.uniform_random(1))
        assert result.converged
        assert result.stop_reason is StopReason.EQUILIBRIUM
        assert result.consensus
        assert result.final_opinions[0] in (0.0, 1.0, 2.0)

    def test_two_triangles_disagree(self, two_triangles):
        result = wm_run([0, 1, 2, 3, 4, 5], two_triangles, UpdateSchedule.uniform_random(4))
        assert result.converged
        assert classify(two_triangles, result.final_opinions).kind is VerdictKind.DISAGREEMENT

    def test_equilibrium_start(self, two_triangles):
        result = wm_run([0, 0, 0, 1, 1, 1], two_triangles)
        assert result.converged
        assert result.steps_taken == 0
        assert result.changes == []

    def test_prescribed_schedule_reaching_equilibrium(self, k3u):
        result = wm_run([0, 1, 2], k3u, UpdateSchedule.prescribed([0, 2]))
        assert result.converged
        assert result.changes == [(1, 0, 1.0), (2, 2, 1.0)]
        result.raise_for_status()

    def test_prescribed_schedule_exhausted(self, k3u):
        result = wm_run([0, 1, 2], k3u, UpdateSchedule.prescribed([1]))
        assert result.stop_reason is StopReason.SCHEDULE_EXHAUSTED
        assert not result.converged
        with pytest.raises(ScheduleExhausted):
            result.raise_for_status()

    def test_step_cap(self, k3u):
        result = wm_run([0, 1, 2], k3u, UpdateSchedule.prescribed([1, 1, 1]), max_steps=2)
        assert result.stop_reason is StopReason.MAX_STEPS
        assert result.steps_taken == 2
        with pytest.raises(StepCapReached):
            result.raise_for_status()

    def test_prescribed_agent_out_of_range(self, k3u):
        with pytest.raises(ValueError):
            wm_run([0, 1, 2], k3u, UpdateSchedule.prescribed([3]))

    def test_fixed_seed_is_reproducible(self, two_triangles):
        first = wm_run([5, 1, 4, 2, 0, 3], two_triangles, UpdateSchedule.uniform_random(9))
        second = wm_run([5, 1, 4, 2, 0, 3], two_triangles, UpdateSchedule.uniform_random(9))
        assert first.changes == second.changes
        assert first.as_record() == second.as_record()

    @given(network_and_opinions(max_n=8, values=INTEGERS, generic=False), st.integers(0, 2**32))
    def test_values_stay_in_the_initial_set(self, case, seed):
        network, x0 = case
        result = wm_run(x0, network, UpdateSchedule.uniform_random(seed), snapshot_every=1)
        initial = set(x0.tolist())
        lows = [x.min() for _, x in result.snapshots]
        highs = [x.max() for _, x in result.snapshots]
        for _, x in result.snapshots:
            assert set(x.tolist()) <= initial
        assert lows == sorted(lows)
        assert highs == sorted(highs, reverse=True)

    @given(opinions(3, INTEGERS), st.integers(0, 2**32))
    def test_unanimous_cohesive_set_never_moves(self, outside, seed):
        x0 = np.concatenate(([7.0, 7.0, 7.0], outside))
        result = wm_run(x0, bridged_triangles(), UpdateSchedule.uniform_random(seed), snapshot_every=1)
        for _, x in result.snapshots:
            np.testing.assert_array_equal(x[:3], 7.0)

    @pytest.mark.parametrize("seed", range(10))
    def test_single_maximal_cohesive_set_means_consensus(self, seed):
        x0 = rng_for(seed).permutation(5).astype(float)
        assert wm_run(x0, uniform_network(5), UpdateSchedule.uniform_random(seed)).consensus

    @pytest.mark.parametrize("seed", range(10))
    def test_separated_cohesive_sets_never_agree(self, seed):
        rng = rng_for(seed)
        x0 = np.concatenate((rng.random(3), 2.0 + rng.random(3)))
        result = wm_run(x0, bridged_triangles(), UpdateSchedule.uniform_random(seed))
        assert not result.consensus
        assert result.final_opinions[:3].max() < 2.0 <= result.final_opinions[3:].min()

    @pytest.mark.parametrize("seed", range(10))
    def test_two_sinks_give_disagreement(self, two_triangles, seed):
        x0 = rng_for(seed).permutation(6).astype(float)
        result = wm_run(x0, two_triangles, UpdateSchedule.uniform_random(seed))
        assert result.converged
        assert classify(two_triangles, result.final_opinions).kind is VerdictKind.DISAGREEMENT

    @given(network_and_opinions(max_n=8, values=INTEGERS, generic=False), st.integers(0, 2**32))
    def test_ordinal_equivariance(self, case, seed):
        network, x0 = case

        def phi(v):
            return np.exp(np.asarray(v) / 4.0) - 7.0

        plain = wm_run(x0, network, UpdateSchedule.uniform_random(seed))
        mapped = wm_run(phi(x0), network, UpdateSchedule.uniform_random(seed))
        np.testing.assert_array_equal(mapped.final_opinions, phi(plain.final_opinions))
        assert [(step, i) for step, i, _ in mapped.changes] == [(step, i) for step, i, _ in plain.changes]

    def test_trajectory_csv(self, k3u, tmp_path):
        result = wm_run([0, 1, 2], k3u, UpdateSchedule.prescribed([0, 2]))
        frame = pd.read_csv(write_trajectory(result.trajectory_rows(), tmp_path / "trajectory.csv"))
        assert list(frame.columns) == ["step", "agent", "opinion"]
        assert frame.values.tolist() == [[1, 0, 1.0], [2, 2, 1.0]]


class TestSteering:
    def test_uniform_triangle(self, k3u):
        sequence = steering_sequence([0, 1, 2], k3u)
        assert len(sequence) <= 9
        final = apply_sequence(np.array([0.0, 1.0, 2.0]), k3u, sequence)
        assert is_equilibrium(k3u, final)
        assert np.all(final == final[0])

    def test_equilibrium_needs_no_steps(self, two_triangles):
        assert steering_sequence([0, 0, 0, 1, 1, 1], two_triangles) == []

    def test_mixed_triangles_split(self, two_triangles):
        x0 = np.array([0, 0, 1, 1, 1, 0], dtype=float)
        final = apply_sequence(x0, two_triangles, steering_sequence(x0, two_triangles))
        np.testing.assert_array_equal(final, [0, 0, 0, 1, 1, 1])

    def test_sequence_replays_through_the_engine(self, two_triangles):
        x0 = [3, 0, 1, 5, 4, 2]
        result = wm_run(x0, two_triangles, UpdateSchedule.prescribed(steering_sequence(x0, two_triangles)))
        assert result.converged

    @settings(max_examples=1000)
    @given(generic_networks(max_n=20), st.data())
    def test_always_ends_at_an_equilibrium(self, network, data):
        x0 = data.draw(opinions(network.n, INTEGERS))
        sequence = steering_sequence(x0, network)
        assert len(sequence) <= network.n * len(np.unique(x0))
        assert is_equilibrium(network, apply_sequence(x0, network, sequence))

    @settings(max_examples=1000)
    @given(generic_networks(max_n=20), st.data())
    def test_continuous_opinions_end_at_an_equilibrium(self, network, data):
        x0 = data.draw(opinions(network.n))
        sequence = steering_sequence(x0, network)
        assert len(sequence) <= network.n * len(np.unique(x0))
        assert is_equilibrium(network, apply_sequence(x0, network, sequence))


class TestDeGroot:
    def test_identical_rows_average_in_one_step(self, k3u):
        result = degroot_run([0, 1, 2], k3u)
        assert result.steps_taken == 1
        assert result.stop_reason is StopReason.CONSENSUS
        np.testing.assert_allclose(result.final_opinions, [1, 1, 1])

    def test_consensus_start(self, k3u):
        np.testing.assert_allclose(degroot_run([4, 4, 4], k3u).final_opinions, [4, 4, 4])

    def test_identity_freezes(self):
        result = degroot_run([3, 1, 2], identity_network(3))
        np.testing.assert_array_equal(result.final_opinions, [3, 1, 2])
        assert result.stop_reason is StopReason.TOLERANCE

    def test_strongly_connected_aperiodic_network_agrees(self):
        network = generate(GeneratorConfig("ws", n=30, d=4, beta=0.1, seed=1))
        x0 = rng_for(3).random(30)
        result = degroot_run(x0, network, tol=0.0)
        assert result.stop_reason is StopReason.CONSENSUS
        assert result.is_consensus(1e-6)

    def test_iteration_cap(self):
        result = degroot_run([0, 1], InfluenceNetwork.from_rows(2, [[(1, 1.0)], [(0, 1.0)]]), max_iters=5)
        assert result.stop_reason is StopReason.MAX_STEPS
        assert not result.converged
        assert result.steps_taken == 5


class TestStubborn:
    def test_no_stubborn_agents(self, k3u):
        assert make_stubborn(k3u, 0.0, seed=1) == k3u

    def test_everyone_stubborn(self, k3u):
        np.testing.assert_array_equal(make_stubborn(k3u, 1.0).dense(), np.eye(3))

    def test_count_rule(self):
        network = generate(GeneratorConfig("ws", n=100, d=4, beta=0.2, seed=0))
        stubborn = make_stubborn(network, 0.05, seed=3)
        unit_rows = [i for i in range(100) if stubborn.weight(i, i) == 1.0]
        assert len(unit_rows) == 5
        assert unit_rows == choose_stubborn(100, 3, 0.05).tolist()
        assert make_stubborn(network, 0.05, seed=3) == stubborn

    def test_bernoulli_selection(self):
        assert choose_stubborn(50, 1, probability=0.0).size == 0
        assert choose_stubborn(50, 1, probability=1.0).size == 50

    def test_stubborn_agents_hold_their_opinion(self):
        result = stubborn_run([0.0, 1.0, 2.0], uniform_network(3), fraction=1.0)
        np.testing.assert_array_equal(result.final_opinions, [0, 1, 2])


class TestFriedkinJohnsen:
    def test_full_attachment_is_degroot(self, two_triangles):
        x0 = [0, 1, 2, 3, 4, 5]
        fj = fj_run(x0, two_triangles, np.ones(6))
        degroot = degroot_run(x0, two_triangles)
        np.testing.assert_array_equal(fj.final_opinions, degroot.final_opinions)
        assert fj.steps_taken == degroot.steps_taken

    def test_no_attachment_freezes(self, k3u):
        np.testing.assert_array_equal(fj_run([0, 1, 2], k3u, np.zeros(3)).final_opinions, [0, 1, 2])

    def test_half_attachment_fixed_point(self, k3u):
        result = fj_run([0, 1, 2], k3u, np.full(3, 0.5), tol=1e-20)
        np.testing.assert_allclose(result.final_opinions, [0.5, 1.0, 1.5], atol=1e-6)

    def test_attachments_out_of_range(self, k3u):
        with pytest.raises(ValueError):
            fj_run([0, 1, 2], k3u, [0.5, 1.5, 0.5])


class TestBoundedConfidence:
    def test_close_agents_merge(self, k3u):
        result = nbc_run([0, 0.1, 1], k3u, np.full(3, 0.2))
        np.testing.assert_allclose(result.final_opinions, [0.05, 0.05, 1.0])

    def test_zero_radius_freezes(self, k3u):
        np.testing.assert_allclose(nbc_run([0, 0.1, 1], k3u, np.zeros(3)).final_opinions, [0, 0.1, 1])

    def test_wide_radius_is_a_degroot_step(self, two_triangles):
        x0 = [0, 1, 2, 3, 4, 5]
        nbc = nbc_run(x0, two_triangles, np.full(6, 10.0), max_iters=1)
        degroot = degroot_run(x0, two_triangles, max_iters=1)
        np.testing.assert_allclose(nbc.final_opinions, degroot.final_opinions)

    def test_negative_radius(self, k3u):
        with pytest.raises(ValueError):
            nbc_run([0, 1, 2], k3u, [-1, 0, 0])


class TestModels:
    def test_sampled_parameters(self):
        params = sample_baseline_params(200, seed=4, opinion_range=(-1.0, 1.0))
        assert np.all((params.attachments >= 0) & (params.attachments <= 1))
        assert np.all((params.radii >= 0) & (params.radii <= 1))
        np.testing.assert_array_equal(params.radii, sample_baseline_params(200, seed=4, opinion_range=(-1, 1)).radii)

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            BaselineParams(stubborn_fraction=1.5)

    def test_unknown_model(self):
        with pytest.raises(UnknownModel):
            check_models(["wm", "voter"])
        with pytest.raises(UnknownModel):
            run_model("voter", [0, 1, 2], uniform_network(3))

    @pytest.mark.parametrize("model", MODELS)
    def test_every_model_settles_on_the_uniform_triangle(self, model):
        result = run_model(model, [0.0, 0.5, 1.0], uniform_network(3), seed=2)
        assert result.model == model
        assert result.converged


class TestManipulation:
    def test_unanimous_followers_ignore_the_signal(self):
        signal = np.linspace(-10, 10, 40)
        trajectory = manipulation_run([2, 2, 2, 0], followers_and_signal(), "wm", 3, signal, seed=5)
        assert trajectory.shape == (41, 4)
        np.testing.assert_array_equal(trajectory[:, :3], 2.0)
        np.testing.assert_array_equal(trajectory[1:, 3], signal)

    def test_averaging_followers_are_dragged_along(self):
        target = 10.0 * 2.0
        signal = np.concatenate((np.linspace(0, target, 50), np.full(500, target)))
        trajectory = manipulation_run([0, 1, 2, 0], followers_and_signal(), "degroot", 3, signal)
        np.testing.assert_allclose(trajectory[-1, :3], target, atol=1e-6)

    @pytest.mark.parametrize("model", MODELS)
    def test_signal_at_the_consensus_value(self, model):
        trajectory = manipulation_run([2, 2, 2, 2], followers_and_signal(), model, 3, np.full(10, 2.0))
        np.testing.assert_allclose(trajectory, 2.0)

    def test_unknown_model(self):
        with pytest.raises(UnknownModel):
            manipulation_run([0, 0, 0, 0], followers_and_signal(), "voter", 3, [1.0])

    def test_agent_out_of_range(self):
        with pytest.raises(ValueError):
            manipulation_run([0, 0, 0, 0], followers_and_signal(), "wm", 4, [1.0])
