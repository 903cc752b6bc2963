import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from networks.core import InfluenceNetwork
from networks.factories import uniform_network
from networks.strategies import network_and_opinions

from .median import BadWeights, best_response_interval, cost, med, median_result, weighted_median, weighted_median_set

PAIR = InfluenceNetwork.from_rows(2, [[(0, 0.5), (1, 0.5)], [(0, 0.5), (1, 0.5)]])
SMALL_INTEGERS = [float(v) for v in range(-5, 6)]


class TestWeightedMedianSet:
    def test_single_median(self):
        assert weighted_median_set([1, 2, 3], [0.4, 0.3, 0.3]) == (2.0,)

    def test_both_halves(self):
        assert weighted_median_set([0, 1], [0.5, 0.5]) == (0.0, 1.0)

    def test_unanimous(self):
        assert weighted_median_set([5, 5, 5], [0.2, 0.7, 0.1]) == (5.0,)

    def test_equal_values_share_their_mass(self):
        # Sorted positions alone would put 0.3 below the second 2 and call it a median twice.
        assert weighted_median_set([2, 2, 9], [0.3, 0.3, 0.4]) == (2.0,)

    @pytest.mark.parametrize(
        "x, w",
        [
            ([1, 2], [0.5, 0.6]),
            ([1, 2], [-0.5, 1.5]),
            ([1, 2, 3], [0.5, 0.5]),
            ([], []),
        ],
    )
    def test_bad_weights(self, x, w):
        with pytest.raises(BadWeights):
            weighted_median_set(x, w)


class TestTieBreak:
    def test_own_below_takes_smallest(self):
        result = weighted_median([0, 1], [0.5, 0.5], own=-3)
        assert result.value == 0.0
        assert not result.unique
        assert result.median_set_bounds == (0.0, 1.0)

    def test_own_above_takes_largest(self):
        assert weighted_median([0, 1], [0.5, 0.5], own=4).value == 1.0

    def test_own_inside_stays(self):
        assert weighted_median([0, 0.4, 1], [0.5, 0.0, 0.5], own=0.4).value == 0.4


class TestMed:
    def test_uniform_triangle(self, k3u):
        assert med(0, [0, 1, 2], k3u) == 1.0

    def test_tie_keeps_own(self):
        assert med(0, [0, 1], PAIR) == 0.0
        assert med(1, [0, 1], PAIR) == 1.0

    def test_consensus(self, two_triangles):
        x = np.full(6, 2.5)
        assert all(med(i, x, two_triangles) == 2.5 for i in range(6))

    def test_result_is_unique_on_uniform_triangle(self, k3u):
        assert median_result(0, [0, 1, 2], k3u).unique

    @given(network_and_opinions(values=SMALL_INTEGERS, generic=False))
    def test_value_is_a_neighbor_or_own_opinion(self, case):
        network, x = case
        for i in range(network.n):
            columns, _ = network.row(i)
            assert med(i, x, network) in set(x[columns]) | {x[i]}

    @given(network_and_opinions(values=SMALL_INTEGERS))
    def test_matches_the_cost_minimizer(self, case):
        network, x = case
        for i in range(network.n):
            lower, upper = best_response_interval(i, x, network)
            assert lower == upper == med(i, x, network)

    @given(network_and_opinions(values=SMALL_INTEGERS, generic=False))
    def test_ordinal_equivariance(self, case):
        network, x = case

        def phi(v):
            return np.exp(np.asarray(v) / 4.0) - 7.0

        for i in range(network.n):
            assert med(i, phi(x), network) == phi(med(i, x, network))

    @given(network_and_opinions(values=SMALL_INTEGERS), st.randoms(use_true_random=False))
    def test_permutation_equivariance(self, case, random):
        network, x = case
        perm = np.array(random.sample(range(network.n), network.n))
        relabeled = InfluenceNetwork(network.dense()[np.ix_(perm, perm)])
        for k in range(network.n):
            assert med(k, x[perm], relabeled) == med(int(perm[k]), x, network)


class TestCost:
    def test_linear(self, k3u):
        assert cost(0, 1.0, [0, 1, 2], k3u) == pytest.approx(2 / 3)

    def test_zero_at_consensus(self, k3u):
        assert cost(1, 4.0, [4, 4, 4], k3u, alpha=1.7) == 0.0

    def test_quadratic(self, k3u):
        assert cost(0, 1.0, [0, 0, 3], k3u, alpha=2) == pytest.approx(2.0)

    def test_alpha_must_be_positive(self, k3u):
        with pytest.raises(ValueError):
            cost(0, 1.0, [0, 1, 2], k3u, alpha=0)

    @given(network_and_opinions(max_n=6))
    def test_quadratic_minimizer_is_the_weighted_mean(self, case):
        network, x = case
        for i in range(network.n):
            columns, weights = network.row(i)
            mean = float(weights @ x[columns])
            found = minimize_scalar(
                lambda z: cost(i, z, x, network, alpha=2),
                bracket=(x.min() - 1.0, x.max() + 1.0),
                method="golden",
                options={"xtol": 1e-11},
            )
            assert found.x == pytest.approx(mean, abs=1e-8)


class TestBestResponseInterval:
    def test_unique_minimizer(self, k3u):
        assert best_response_interval(0, [0, 1, 2], k3u) == (1.0, 1.0)

    def test_minimizer_at_the_majority(self, k3u):
        assert best_response_interval(0, [0, 0, 3], k3u) == (0.0, 0.0)

    def test_flat_cost(self):
        assert best_response_interval(0, [0, 1], PAIR) == (0.0, 1.0)

    def test_uniform_network_helper(self):
        assert best_response_interval(2, [3, 3, 3, 3], uniform_network(4)) == (3.0, 3.0)

    @given(st.lists(st.integers(-100, 100), min_size=4, max_size=4, unique=True))
    def test_flat_piece_survives_rounding(self, tenths):
        x = np.array(tenths) / 10
        middle = np.sort(x)[1:3]
        assert best_response_interval(0, x, uniform_network(4)) == (middle[0], middle[1])
