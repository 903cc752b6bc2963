from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from networks.core import InfluenceNetwork
from networks.factories import uniform_network
from networks.strategies import generic_networks

from .exceptions import EmptySet, TooLarge, UncheckedLinks
from .links import LinkStatus, classify_links, classify_row, decisive_subgraph, has_globally_reachable_node
from .report import cohesion_report
from .sets import cohesive_expansion, enumerate_maximal_cohesive, is_cohesive, is_maximal_cohesive, node_set

TRIANGLE_1, TRIANGLE_2 = (0, 1, 2), (3, 4, 5)


def subsets_of(n: int):
    return st.sets(st.integers(min_value=0, max_value=n - 1), min_size=1).map(lambda s: node_set(s, n))


def wide_row_network(n: int = 42) -> InfluenceNetwork:
    rows = [[(j, 1.0 / n) for j in range(n)]] + [[(i, 1.0)] for i in range(1, n)]
    return InfluenceNetwork.from_rows(n, rows)


class TestCohesiveSets:
    def test_whole_population_is_cohesive(self, k3u):
        assert is_cohesive(k3u, (0, 1, 2))

    def test_triangle_is_cohesive(self, two_triangles):
        assert is_cohesive(two_triangles, TRIANGLE_1)

    def test_singleton_of_uniform_triangle(self, k3u):
        assert not is_cohesive(k3u, (0,))

    def test_empty_set(self, k3u):
        with pytest.raises(EmptySet):
            is_cohesive(k3u, ())

    def test_out_of_range_members(self, k3u):
        with pytest.raises(ValueError):
            is_cohesive(k3u, (0, 3))

    def test_expansion_adds_strict_majorities(self, k3u):
        assert cohesive_expansion(k3u, (0, 1)) == (0, 1, 2)

    def test_expansion_of_everyone(self, two_triangles):
        assert cohesive_expansion(two_triangles, range(6)) == tuple(range(6))

    def test_expansion_stops_at_the_triangle(self, two_triangles):
        assert cohesive_expansion(two_triangles, TRIANGLE_1) == TRIANGLE_1

    def test_exactly_half_does_not_join(self):
        network = InfluenceNetwork.from_rows(2, [[(0, 1.0)], [(0, 0.5), (1, 0.5)]])
        assert cohesive_expansion(network, (0,)) == (0,)
        assert is_maximal_cohesive(network, (0,))

    def test_maximality(self, k3u, two_triangles):
        assert not is_maximal_cohesive(k3u, (0, 1))
        assert is_maximal_cohesive(two_triangles, TRIANGLE_1)
        assert is_maximal_cohesive(k3u, (0, 1, 2))

    def test_enumeration(self, k3u, two_triangles):
        assert enumerate_maximal_cohesive(k3u) == [(0, 1, 2)]
        assert enumerate_maximal_cohesive(two_triangles) == [TRIANGLE_1, TRIANGLE_2, tuple(range(6))]

    def test_enumeration_limit(self):
        with pytest.raises(TooLarge):
            enumerate_maximal_cohesive(uniform_network(23))


class TestExpansionProperties:
    @given(generic_networks(max_n=10), st.data())
    def test_order_does_not_matter(self, network, data):
        members = data.draw(subsets_of(network.n))
        expected = cohesive_expansion(network, members)
        for _ in range(5):
            order = data.draw(st.permutations(range(network.n)))
            assert cohesive_expansion(network, members, order=order) == expected

    @given(generic_networks(max_n=10), st.data())
    def test_monotone(self, network, data):
        small = data.draw(subsets_of(network.n))
        large = node_set(set(small) | set(data.draw(subsets_of(network.n))), network.n)
        assert set(cohesive_expansion(network, small)) <= set(cohesive_expansion(network, large))

    @given(generic_networks(max_n=10), st.data())
    def test_union_of_expansions(self, network, data):
        first = data.draw(subsets_of(network.n))
        second = data.draw(subsets_of(network.n))
        union = cohesive_expansion(network, set(first) | set(second))
        assert set(cohesive_expansion(network, first)) | set(cohesive_expansion(network, second)) <= set(union)

    @given(generic_networks(max_n=8), st.data())
    def test_expansion_of_cohesive_set(self, network, data):
        members = data.draw(subsets_of(network.n))
        if not is_cohesive(network, members):
            members = tuple(range(network.n))
        expanded = cohesive_expansion(network, members)

        assert is_cohesive(network, expanded)
        for maximal in enumerate_maximal_cohesive(network):
            if set(members) <= set(maximal):
                assert set(expanded) <= set(maximal)

        complement = tuple(sorted(set(range(network.n)) - set(expanded)))
        if complement:
            assert is_maximal_cohesive(network, expanded)
            assert is_maximal_cohesive(network, complement)


def decisive_by_definition(weights: np.ndarray, p: int) -> bool:
    """Some theta containing p weighs at least one half and drops below it without p."""
    others = [q for q in range(weights.size) if q != p]
    for size in range(len(others) + 1):
        for rest in combinations(others, size):
            theta = weights[list(rest)].sum() + weights[p]
            if theta >= 0.5 and theta - weights[p] < 0.5:
                return True
    return False


class TestDecisiveLinks:
    def test_window_examples(self):
        row = [(0, 0.3), (1, 0.1), (2, 0.6)]
        classification = classify_links(InfluenceNetwork.from_rows(3, [row, row, row]))
        assert classification[(0, 2)] is LinkStatus.DECISIVE
        assert classification[(0, 1)] is LinkStatus.INDECISIVE
        assert classification[(0, 0)] is LinkStatus.INDECISIVE
        assert classification.fully_checked

    def test_heavy_link_is_decisive(self):
        assert classify_row([0.2, 0.55, 0.25])[1] is LinkStatus.DECISIVE

    def test_uniform_triangle_is_all_decisive(self, k3u):
        classification = classify_links(k3u)
        assert sorted(classification.decisive) == [(i, j) for i in range(3) for j in range(3)]
        assert classification.indecisive == []

    def test_threads_do_not_change_the_result(self):
        row = [(0, 0.3), (1, 0.1), (2, 0.6)]
        network = InfluenceNetwork.from_rows(3, [row, row, row])
        assert classify_links(network, threads=3) == classify_links(network)

    @given(generic_networks(max_n=10))
    def test_window_matches_the_definition(self, network):
        for i in range(network.n):
            _, weights = network.row(i)
            statuses = classify_row(weights)
            for p, status in enumerate(statuses):
                assert (status is LinkStatus.DECISIVE) == decisive_by_definition(weights, p)

    def test_long_rows_are_unchecked(self):
        network = wide_row_network()
        classification = classify_links(network)
        assert len(classification.unchecked) == 42
        with pytest.raises(UncheckedLinks):
            decisive_subgraph(network, classification)


class TestDecisiveSubgraph:
    def test_uniform_triangle(self, k3u):
        graph = decisive_subgraph(k3u)
        assert set(graph.edges) == {(i, j) for i in range(3) for j in range(3)}

    def test_two_triangles(self, two_triangles):
        graph = decisive_subgraph(two_triangles)
        assert nx.number_weakly_connected_components(graph) == 2
        assert not has_globally_reachable_node(graph)

    def test_indecisive_link_is_dropped(self):
        row = [(0, 0.3), (1, 0.1), (2, 0.6)]
        graph = decisive_subgraph(InfluenceNetwork.from_rows(3, [row, row, row]))
        assert not graph.has_edge(0, 1)
        assert graph.has_edge(0, 2)


class TestGlobalReachability:
    def test_single_node(self):
        graph = nx.DiGraph()
        graph.add_node(0)
        assert has_globally_reachable_node(graph)

    def test_in_star(self):
        assert has_globally_reachable_node(nx.DiGraph([(i, 0) for i in range(1, 6)]))

    def test_out_star(self):
        assert not has_globally_reachable_node(nx.DiGraph([(0, i) for i in range(1, 6)]))

    @given(
        st.integers(min_value=1, max_value=30).flatmap(
            lambda n: st.tuples(
                st.just(n),
                st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n),
            )
        )
    )
    def test_matches_reverse_reachability(self, case):
        n, edges = case
        graph = nx.DiGraph()
        graph.add_nodes_from(range(n))
        graph.add_edges_from(edges)
        brute = any(len(nx.ancestors(graph, v)) == n - 1 for v in range(n))
        assert has_globally_reachable_node(graph) == brute


class TestReport:
    def test_two_triangles(self, two_triangles):
        report = cohesion_report(two_triangles)
        assert report["maximal_cohesive"] == [[0, 1, 2], [3, 4, 5], [0, 1, 2, 3, 4, 5]]
        assert report["globally_reachable"] is False
        assert len(report["decisive"]) == 18

    def test_large_networks_skip_enumeration(self):
        report = cohesion_report(wide_row_network())
        assert report["maximal_cohesive"] is None
        assert report["globally_reachable"] is None
        assert len(report["unchecked"]) == 42
