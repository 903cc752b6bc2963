import json

import numpy as np
import pandas as pd
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from .core import (
    Genericity,
    InfluenceNetwork,
    is_generic,
    normalize_rows,
    perturb_add_link,
    strip_self_loops,
    validate,
)
from .exceptions import (
    BadParameters,
    InsufficientSelfWeight,
    IsolatedAgent,
    NegativeWeight,
    ParseError,
    RowSumOff,
    ZeroRow,
)
from .factories import disjoint_triangles, uniform_network
from .formats import content_hash, deserialize, serialize, write_table
from .generators import GeneratorConfig, degree_law_fit, generate
from .models import Network
from .strategies import networks, raw_matrices
from .subsets import SearchStatus, Window, _meet_in_the_middle, find_subset_in_window, subset_sums


class TestValidate:
    def test_uniform_rows_pass(self):
        assert validate(np.full((3, 3), 1 / 3)).ok

    def test_row_sum_off_is_reported(self):
        report = validate(np.array([[0.5, 0.6, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))
        assert not report.ok
        (violation,) = report.violations
        assert isinstance(violation, RowSumOff)
        assert violation.i == 0
        assert violation.total == pytest.approx(1.1)

    def test_negative_weight_is_reported(self):
        report = validate(np.array([[-0.1, 1.1, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))
        assert any(isinstance(v, NegativeWeight) and (v.i, v.j) == (0, 0) for v in report.violations)

    def test_constructor_rejects_invalid_rows(self):
        with pytest.raises(RowSumOff):
            InfluenceNetwork(np.array([[0.5, 0.6], [0.0, 1.0]]))

    def test_out_neighbors_are_positive_support(self):
        network = InfluenceNetwork(np.array([[0.5, 0.0, 0.5], [0.0, 1.0, 0.0], [0.2, 0.3, 0.5]]))
        assert network.out_neighbors == ((0, 2), (1,), (0, 1, 2))
        assert network.weight(0, 1) == 0.0


class TestNormalizeRows:
    def test_examples(self):
        network = normalize_rows(np.array([[2.0, 2.0, 0.0], [1.0, 0.0, 0.0], [1.0, 2.0, 1.0]]))
        np.testing.assert_array_equal(network.dense(), [[0.5, 0.5, 0.0], [1.0, 0.0, 0.0], [0.25, 0.5, 0.25]])

    def test_zero_row(self):
        with pytest.raises(ZeroRow) as excinfo:
            normalize_rows(np.array([[1.0, 0.0], [0.0, 0.0]]))
        assert excinfo.value.i == 1

    def test_negative_entry(self):
        with pytest.raises(NegativeWeight):
            normalize_rows(np.array([[1.0, -1.0], [0.0, 1.0]]))

    @given(raw_matrices())
    def test_idempotent(self, raw):
        once = normalize_rows(raw)
        twice = normalize_rows(once.dense())
        np.testing.assert_allclose(twice.dense(), once.dense(), rtol=0, atol=1e-15)
        assert validate(twice.weights).ok


class TestGenericity:
    def test_uniform_network_is_generic(self):
        assert is_generic(uniform_network(3)).status is Genericity.GENERIC

    def test_exact_half_is_found(self):
        network = InfluenceNetwork.from_rows(2, [[(0, 0.5), (1, 0.5)], [(0, 0.5), (1, 0.5)]])
        report = is_generic(network)
        assert not report
        assert report.row == 0
        assert report.subset == (0,)

    def test_row_avoiding_half(self):
        row = [(0, 0.3), (1, 0.1), (2, 0.6)]
        assert is_generic(InfluenceNetwork.from_rows(3, [row, row, row]))

    def test_epsilon_widens_the_window(self):
        row = [(0, 0.3), (1, 0.1), (2, 0.6)]
        network = InfluenceNetwork.from_rows(3, [row, row, row])
        assert is_generic(network, epsilon=0.05)
        assert not is_generic(network, epsilon=0.11)

    def test_long_rows_use_meet_in_the_middle(self):
        values = np.full(30, 1 / 30)
        search = find_subset_in_window(values, Window(0.49, 0.51))
        assert search.status is SearchStatus.FOUND
        assert values[list(search.subset)].sum() == pytest.approx(0.5)

    def test_rows_beyond_search_limit_are_unchecked(self):
        assert find_subset_in_window(np.full(41, 1 / 41), Window(0.5, 0.5)).status is SearchStatus.UNCHECKED

    @given(st.lists(st.floats(0.0, 1.0, allow_nan=False), min_size=2, max_size=12), st.floats(0.0, 2.0), st.booleans())
    def test_meet_in_the_middle_agrees_with_enumeration(self, values, low, high_closed):
        values = np.array(values)
        window = Window(low, low + 0.05, high_closed=high_closed)
        sums = subset_sums(values)
        assume(np.all(np.abs(sums - window.low) > 1e-9) and np.all(np.abs(sums - window.high) > 1e-9))
        search = _meet_in_the_middle(values, window)
        assert search.found == bool(np.any(window.contains(sums)))
        if search.found:
            assert window.contains(np.array([values[list(search.subset)].sum()]))[0]


class TestPerturbAddLink:
    def test_moves_self_weight(self):
        perturbed = perturb_add_link(uniform_network(3), 0, 2, 0.01)
        assert perturbed.weight(0, 2) == pytest.approx(1 / 3 + 0.01)
        assert perturbed.weight(0, 0) == pytest.approx(1 / 3 - 0.01)
        assert perturbed.weight(1, 1) == 1 / 3
        assert abs(perturbed.dense()[0].sum() - 1.0) <= 1e-12

    def test_new_link(self):
        perturbed = perturb_add_link(disjoint_triangles(), 0, 4, 0.01)
        assert perturbed.out_neighbors[0] == (0, 1, 2, 4)

    def test_zero_delta_is_identity(self):
        network = uniform_network(3)
        assert perturb_add_link(network, 0, 1, 0.0) == network

    def test_insufficient_self_weight(self):
        network = InfluenceNetwork.from_rows(2, [[(0, 0.005), (1, 0.995)], [(1, 1.0)]])
        with pytest.raises(InsufficientSelfWeight):
            perturb_add_link(network, 0, 1, 0.01)

    def test_self_link_rejected(self):
        with pytest.raises(BadParameters):
            perturb_add_link(uniform_network(3), 1, 1, 0.01)


class TestStripSelfLoops:
    def test_renormalizes_remaining_mass(self):
        network = InfluenceNetwork.from_rows(
            3, [[(0, 0.4), (1, 0.3), (2, 0.3)], [(0, 0.5), (2, 0.5)], [(0, 0.5), (1, 0.5)]]
        )
        stripped = strip_self_loops(network)
        np.testing.assert_allclose(stripped.dense()[0], [0.0, 0.5, 0.5])
        np.testing.assert_array_equal(stripped.dense()[1:], network.dense()[1:])
        assert np.all(stripped.self_weights == 0)

    def test_isolated_agent(self):
        network = InfluenceNetwork.from_rows(2, [[(0, 1.0)], [(0, 0.5), (1, 0.5)]])
        with pytest.raises(IsolatedAgent):
            strip_self_loops(network)


class TestGenerate:
    def test_ring_lattice_without_rewiring(self):
        network = generate(GeneratorConfig("ws", n=10, d=4, beta=0.0, seed=3))
        for i in range(10):
            expected = tuple(sorted({i, (i - 2) % 10, (i - 1) % 10, (i + 1) % 10, (i + 2) % 10}))
            assert network.out_neighbors[i] == expected

    def test_fixed_seed_is_reproducible(self):
        config = GeneratorConfig("ba", n=500, m=2, seed=7)
        first, second = generate(config), generate(config)
        assert first == second
        assert content_hash(first) == content_hash(second)

    def test_seeds_differ(self):
        assert generate(GeneratorConfig("ba", n=50, m=2, seed=1)) != generate(GeneratorConfig("ba", n=50, m=2, seed=2))

    def test_without_self_loops(self):
        network = generate(GeneratorConfig("ba", n=30, m=2, self_loops=False, seed=1))
        assert np.all(network.self_weights == 0)

    def test_explicit_edges(self):
        network = generate(GeneratorConfig("explicit", n=3, edges=((0, 1), (1, 2)), seed=0))
        assert network.out_neighbors == ((0, 1), (0, 1, 2), (1, 2))

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(family="ba", n=10, m=0),
            dict(family="ba", n=10, m=10),
            dict(family="ws", n=10, d=3),
            dict(family="ws", n=10, d=4, beta=1.5),
            dict(family="ws", n=1, d=2),
            dict(family="explicit", n=3, edges=((0, 0),)),
            dict(family="er", n=10),
        ],
    )
    def test_bad_parameters(self, kwargs):
        with pytest.raises(BadParameters):
            GeneratorConfig(**kwargs)

    def test_scale_free_degree_law(self):
        fit = degree_law_fit(generate(GeneratorConfig("ba", n=1000, m=2, seed=11)))
        assert -3.0 <= fit.b <= -1.8
        assert fit.b_interval[0] <= fit.b <= fit.b_interval[1]

    def test_degree_law_needs_spread(self):
        with pytest.raises(BadParameters):
            degree_law_fit(uniform_network(4))


class TestFormats:
    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_uniform_round_trip_is_bit_identical(self, fmt):
        network = uniform_network(3)
        assert deserialize(serialize(network, fmt), fmt) == network

    @given(networks(), st.sampled_from(["json", "csv"]))
    def test_round_trip(self, network, fmt):
        assert deserialize(serialize(network, fmt), fmt) == network

    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_empty_document(self, fmt):
        with pytest.raises(ParseError):
            deserialize(b"", fmt)

    def test_duplicate_link(self):
        with pytest.raises(ParseError, match="duplicate"):
            deserialize(b"i,j,w\n0,0,0.5\n0,1,0.5\n0,1,0.5\n1,1,1.0\n", "csv")

    def test_malformed_json_reports_position(self):
        with pytest.raises(ParseError) as excinfo:
            deserialize(b'{"n": 2,', "json")
        assert excinfo.value.line == 1

    def test_bad_header(self):
        with pytest.raises(ParseError) as excinfo:
            deserialize(b"a,b,c\n0,0,1\n", "csv")
        assert excinfo.value.line == 1

    def test_unsorted_rows(self):
        document = b'{"n": 2, "rows": [[{"j": 1, "w": 0.5}, {"j": 0, "w": 0.5}], [{"j": 1, "w": 1.0}]]}'
        with pytest.raises(ParseError):
            deserialize(document, "json")

    def test_json_layout(self):
        assert serialize(InfluenceNetwork.from_rows(1, [[(0, 1.0)]]), "json") == b'{"n":1,"rows":[[{"j":0,"w":1.0}]]}'

    def test_tables(self, tmp_path):
        frame = pd.DataFrame({"agent": [0, 1], "opinion": [0.5, 1.0]})
        assert write_table(frame, tmp_path / "x.csv", "json").name == "x.json"
        assert json.loads((tmp_path / "x.json").read_text()) == [{"agent": 0, "opinion": 0.5}, {"agent": 1, "opinion": 1.0}]
        pd.testing.assert_frame_equal(pd.read_csv(write_table(frame, tmp_path / "x", "csv")), frame)
        with pytest.raises(ValueError):
            write_table(frame, tmp_path / "x", "xml")


class TestNetworkModel:
    def test_round_trip_through_payload(self):
        network = generate(GeneratorConfig("ws", n=12, d=4, beta=0.3, seed=5))
        row = Network.from_influence(network, name="ws", family="watts_strogatz", seed=2**64 - 1)
        assert row.influence == network
        assert row.n == 12
        assert row.seed == str(2**64 - 1)
        assert row.content_hash == content_hash(network)
