"""
Influence networks: row-stochastic weighted digraphs stored as CSR matrices.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import networkx as nx
import numpy as np
from scipy import sparse

from .exceptions import (
    BadParameters,
    InsufficientSelfWeight,
    IsolatedAgent,
    NegativeWeight,
    NetworkError,
    RowSumOff,
    ZeroRow,
)
from .subsets import SearchStatus, Window, find_subset_in_window

logger = logging.getLogger(__name__)

ROW_SUM_TOLERANCE = 1e-9


def as_csr(weights) -> sparse.csr_array:
    """Coerce a dense or sparse square matrix of finite reals into a canonical CSR array."""
    matrix = sparse.csr_array(weights, dtype=np.float64, copy=True)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"influence matrix must be square, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix.data)):
        raise ValueError("influence matrix contains non-finite entries")
    matrix.eliminate_zeros()
    matrix.sort_indices()
    return matrix


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[NetworkError, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_for_violations(self):
        if self.violations:
            raise self.violations[0]


def validate(weights) -> ValidationReport:
    """Check non-negativity and row sums; every violation is reported, not only the first."""
    matrix = as_csr(weights)
    violations: list[NetworkError] = []

    coo = matrix.tocoo()
    for i, j, w in zip(coo.row, coo.col, coo.data):
        if w < 0:
            violations.append(NegativeWeight(int(i), int(j), float(w)))

    totals = np.asarray(matrix.sum(axis=1)).ravel()
    for i in np.flatnonzero(np.abs(totals - 1.0) > ROW_SUM_TOLERANCE):
        violations.append(RowSumOff(int(i), float(totals[i])))

    return ValidationReport(tuple(violations))


class InfluenceNetwork:
    """
    Immutable row-stochastic influence matrix ``W``.

    ``w_ij`` is the weight agent ``i`` puts on agent ``j``'s opinion; the
    out-neighbors of ``i`` are the positive support of row ``i``.
    """

    def __init__(self, weights, *, check: bool = True):
        matrix = as_csr(weights)
        if check:
            validate(matrix).raise_for_violations()
        for array in (matrix.data, matrix.indices, matrix.indptr):
            array.setflags(write=False)
        self._matrix = matrix

    @classmethod
    def from_rows(cls, n: int, rows, *, check: bool = True) -> "InfluenceNetwork":
        """Build from ``rows[i] = [(j, w), ...]``."""
        row_ids, col_ids, values = [], [], []
        for i, entries in enumerate(rows):
            for j, w in entries:
                row_ids.append(i)
                col_ids.append(j)
                values.append(w)
        matrix = sparse.coo_array((values, (row_ids, col_ids)), shape=(n, n), dtype=np.float64)
        return cls(matrix, check=check)

    @property
    def n(self) -> int:
        return self._matrix.shape[0]

    @property
    def weights(self) -> sparse.csr_array:
        return self._matrix

    def dense(self) -> np.ndarray:
        return self._matrix.toarray()

    def row(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Column indices and weights of row ``i`` (read-only views, indices ascending)."""
        start, stop = self._matrix.indptr[i], self._matrix.indptr[i + 1]
        return self._matrix.indices[start:stop], self._matrix.data[start:stop]

    def weight(self, i: int, j: int) -> float:
        columns, values = self.row(i)
        position = np.searchsorted(columns, j)
        if position < columns.size and columns[position] == j:
            return float(values[position])
        return 0.0

    @cached_property
    def out_neighbors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(j) for j in self.row(i)[0]) for i in range(self.n))

    @cached_property
    def self_weights(self) -> np.ndarray:
        diagonal = self._matrix.diagonal()
        diagonal.setflags(write=False)
        return diagonal

    @cached_property
    def links(self) -> tuple[tuple[int, int], ...]:
        """Every ``(i, j)`` with ``w_ij > 0``, row-major."""
        return tuple((i, j) for i in range(self.n) for j in self.out_neighbors[i])

    def to_digraph(self, *, self_loops: bool = True) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        coo = self._matrix.tocoo()
        graph.add_weighted_edges_from(
            (int(i), int(j), float(w)) for i, j, w in zip(coo.row, coo.col, coo.data) if self_loops or i != j
        )
        return graph

    def __eq__(self, other):
        if not isinstance(other, InfluenceNetwork):
            return NotImplemented
        a, b = self._matrix, other._matrix
        return (
            a.shape == b.shape
            and np.array_equal(a.indptr, b.indptr)
            and np.array_equal(a.indices, b.indices)
            and np.array_equal(a.data, b.data)
        )

    def __hash__(self):
        return hash((self.n, self._matrix.data.tobytes(), self._matrix.indices.tobytes()))

    def __repr__(self):
        return f"InfluenceNetwork(n={self.n}, links={self._matrix.nnz})"


def normalize_rows(raw) -> InfluenceNetwork:
    """Scale each row of a nonnegative matrix to sum to one."""
    matrix = as_csr(raw)
    coo = matrix.tocoo()
    for i, j, w in zip(coo.row, coo.col, coo.data):
        if w < 0:
            raise NegativeWeight(int(i), int(j), float(w))

    totals = np.asarray(matrix.sum(axis=1)).ravel()
    empty = np.flatnonzero(totals <= 0)
    if empty.size:
        raise ZeroRow(int(empty[0]))

    # Rows already summing to exactly one are left bit-for-bit intact.
    divisors = np.where(totals == 1.0, 1.0, totals)
    scaled = sparse.coo_array((coo.data / divisors[coo.row], (coo.row, coo.col)), shape=matrix.shape)
    return InfluenceNetwork(scaled)


def perturb_add_link(network: InfluenceNetwork, i: int, j: int, delta: float) -> InfluenceNetwork:
    """Move ``delta`` of agent ``i``'s self weight onto the link ``(i, j)``."""
    if i == j:
        raise BadParameters(f"perturbation needs two distinct agents, got i = j = {i}")
    if not 0 <= i < network.n or not 0 <= j < network.n:
        raise BadParameters(f"agents ({i}, {j}) out of range for n={network.n}")
    if delta < 0:
        raise BadParameters(f"delta must be nonnegative, got {delta}")
    if delta == 0:
        return network

    self_weight = network.weight(i, i)
    if self_weight < delta:
        raise InsufficientSelfWeight(i, self_weight, delta)

    matrix = network.weights.tolil()
    matrix[i, j] = matrix[i, j] + delta
    matrix[i, i] = self_weight - delta
    return InfluenceNetwork(matrix)


def strip_self_loops(network: InfluenceNetwork) -> InfluenceNetwork:
    """Drop every self weight and renormalize the remaining row mass."""
    matrix = network.weights.tolil()
    for i in range(network.n):
        self_weight = network.weight(i, i)
        if self_weight == 0:
            continue
        columns, values = network.row(i)
        others = columns != i
        if not np.any(others):
            raise IsolatedAgent(i)
        remaining = float(values[others].sum())
        matrix[i, i] = 0.0
        for j, w in zip(columns[others], values[others]):
            matrix[i, int(j)] = w / remaining
    return InfluenceNetwork(matrix)


class Genericity(str, Enum):
    GENERIC = "generic"
    NON_GENERIC = "non_generic"
    UNCHECKED = "unchecked"


@dataclass(frozen=True)
class GenericityReport:
    status: Genericity
    row: int | None = None
    subset: tuple[int, ...] | None = None
    unchecked_rows: tuple[int, ...] = field(default_factory=tuple)

    def __bool__(self):
        return self.status is Genericity.GENERIC


def is_generic(network: InfluenceNetwork, epsilon: float = 0.0) -> GenericityReport:
    """
    Look for a row whose weights have a subset summing into ``[1/2 - epsilon, 1/2 + epsilon]``.

    The offending subset is reported as agent indices. Rows too long to search
    leave the verdict ``UNCHECKED`` unless another row is already non-generic.
    """
    window = Window(0.5 - epsilon, 0.5 + epsilon)
    unchecked = []
    for i in range(network.n):
        columns, values = network.row(i)
        search = find_subset_in_window(values, window)
        if search.status is SearchStatus.FOUND:
            return GenericityReport(Genericity.NON_GENERIC, i, tuple(int(columns[p]) for p in search.subset))
        if search.status is SearchStatus.UNCHECKED:
            unchecked.append(i)

    if unchecked:
        logger.warning("Genericity unchecked for %d rows with too many neighbors", len(unchecked))
        return GenericityReport(Genericity.UNCHECKED, unchecked_rows=tuple(unchecked))
    return GenericityReport(Genericity.GENERIC)
