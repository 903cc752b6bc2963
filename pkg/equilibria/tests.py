import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from networks.strategies import generic_networks, network_and_opinions, networks

from .verdicts import VerdictKind, classify, is_equilibrium, is_nash, threshold_partitions

FACTIONS = (0, 0, 0, 1, 1, 1)


class TestIsEquilibrium:
    def test_consensus(self, k3u):
        assert is_equilibrium(k3u, [7, 7, 7])

    def test_two_factions(self, two_triangles):
        assert is_equilibrium(two_triangles, FACTIONS)

    def test_lone_dissenter_moves(self, k3u):
        check = is_equilibrium(k3u, [0, 0, 1])
        assert not check
        assert check.witness == 2


class TestIsNash:
    def test_consensus(self, k3u):
        assert is_nash(k3u, [7, 7, 7])

    def test_two_factions(self, two_triangles):
        assert is_nash(two_triangles, FACTIONS)

    def test_lone_dissenter_improves(self, k3u):
        assert is_nash(k3u, [0, 0, 1]).witness == 2


class TestClassify:
    def test_consensus(self, two_triangles):
        verdict = classify(two_triangles, np.full(6, 0.25))
        assert verdict.kind is VerdictKind.CONSENSUS
        assert verdict.as_dict() == {"kind": "consensus", "witness": None, "partitions": []}

    def test_disagreement(self, two_triangles):
        verdict = classify(two_triangles, FACTIONS)
        assert verdict.kind is VerdictKind.DISAGREEMENT
        assert verdict.partitions == (((0, 1, 2), (3, 4, 5)),)

    def test_not_equilibrium(self, k3u):
        verdict = classify(k3u, [0, 1, 2])
        assert verdict.kind is VerdictKind.NOT_EQUILIBRIUM
        assert not verdict.is_equilibrium
        assert verdict.witness == 0

    def test_one_threshold_per_gap(self):
        assert threshold_partitions([2, 0, 2, 1]) == [((1,), (0, 2, 3)), ((1, 3), (0, 2))]


class TestCharacterizationsAgree:
    @given(network_and_opinions(values=[0.0, 1.0, 2.0]))
    def test_three_way_equivalence(self, case):
        network, x = case
        fixed_point = bool(is_equilibrium(network, x))
        assert bool(is_nash(network, x)) == fixed_point
        assert classify(network, x).is_equilibrium == fixed_point

    @given(networks(), st.floats(-100, 100, allow_nan=False))
    def test_consensus_passes_everything(self, network, c):
        x = np.full(network.n, c)
        assert is_equilibrium(network, x)
        assert is_nash(network, x)
        assert classify(network, x).kind is VerdictKind.CONSENSUS

    @given(generic_networks(max_n=8), st.data())
    def test_disagreement_is_a_fixed_point(self, network, data):
        x = np.array(data.draw(st.lists(st.sampled_from([0.0, 1.0]), min_size=network.n, max_size=network.n)))
        if classify(network, x).kind is VerdictKind.DISAGREEMENT:
            assert is_equilibrium(network, x)
