"""
Weighted medians, the closest-to-own tie-break, and the dissonance cost they minimize.
"""

from dataclasses import dataclass

import numpy as np

from networks.core import ROW_SUM_TOLERANCE, InfluenceNetwork

# Relative slack when collecting every minimizer of the piecewise-linear cost.
ARGMIN_TOLERANCE = 1e-12


class BadWeights(ValueError):
    """Weights that are negative, mis-shaped or do not sum to one."""


def opinion_vector(values, n: int | None = None) -> np.ndarray:
    """Copy ``values`` into a float vector of finite opinions, optionally of length ``n``."""
    x = np.array(values, dtype=np.float64)
    if x.ndim != 1 or (n is not None and x.size != n):
        raise ValueError(f"expected {n if n is not None else 'a vector of'} opinions, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("opinions must be finite")
    return x


@dataclass(frozen=True)
class MedianResult:
    value: float
    unique: bool
    lower: float
    upper: float

    @property
    def median_set_bounds(self) -> tuple[float, float]:
        return self.lower, self.upper


def _check(x, w) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    if x.ndim != 1 or x.shape != w.shape or x.size == 0:
        raise BadWeights(f"opinions and weights must be matching non-empty vectors, got {x.shape} and {w.shape}")
    if np.any(w < 0):
        raise BadWeights("weights must be nonnegative")
    total = w.sum()
    if abs(total - 1.0) > ROW_SUM_TOLERANCE:
        raise BadWeights(f"weights sum to {total!r}, expected 1")
    return x, w


def _median_values(x: np.ndarray, w: np.ndarray) -> np.ndarray:
    # Mass is grouped per distinct value: the definition sums over {j : x_j < x*}, not sorted positions.
    values, inverse = np.unique(x, return_inverse=True)
    mass = np.bincount(inverse, weights=w, minlength=values.size)
    below = np.concatenate(([0.0], np.cumsum(mass)[:-1]))
    above = np.concatenate((np.cumsum(mass[::-1])[::-1][1:], [0.0]))
    valid = (below <= 0.5) & (above <= 0.5)
    if not np.any(valid):
        # Only reachable through rounding in the prefix sums of a non-generic row.
        valid = np.maximum(below, above) == np.maximum(below, above).min()
    return values[valid]


def weighted_median_set(x, w) -> tuple[float, ...]:
    """Every ``x*`` among the opinions with at most half the weight strictly below and strictly above it."""
    x, w = _check(x, w)
    return tuple(float(v) for v in _median_values(x, w))


def weighted_median(x, w, own: float | None = None) -> MedianResult:
    """
    Weighted median with the tie-break rule: when the median set is not a
    singleton, pick the member closest to ``own`` (``own`` itself when it lies
    strictly between the smallest and the largest median).
    """
    x, w = _check(x, w)
    return _resolve(_median_values(x, w), own)


def _resolve(medians: np.ndarray, own: float | None) -> MedianResult:
    lower, upper = float(medians[0]), float(medians[-1])
    if lower == upper:
        return MedianResult(lower, True, lower, upper)
    if own is None or own <= lower:
        value = lower
    elif own >= upper:
        value = upper
    else:
        value = float(own)
    return MedianResult(value, False, lower, upper)


def median_result(i: int, x, network: InfluenceNetwork) -> MedianResult:
    x = np.asarray(x, dtype=np.float64)
    columns, weights = network.row(i)
    return _resolve(_median_values(x[columns], weights), float(x[i]))


def med(i: int, x, network: InfluenceNetwork) -> float:
    """Agent ``i``'s updated opinion: the tie-broken weighted median of its neighbors' opinions."""
    return median_result(i, x, network).value


def cost(i: int, z: float, x, network: InfluenceNetwork, alpha: float = 1.0) -> float:
    """Dissonance ``sum_j w_ij |z - x_j|**alpha`` of agent ``i`` holding opinion ``z``."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    x = np.asarray(x, dtype=np.float64)
    columns, weights = network.row(i)
    return float(weights @ np.abs(z - x[columns]) ** alpha)


def best_response_interval(i: int, x, network: InfluenceNetwork) -> tuple[float, float]:
    """
    Smallest and largest minimizer of the ``alpha = 1`` cost.

    The cost is piecewise linear with kinks at the opinions, so its minimum is
    attained on them; scanning every opinion value gives the exact interval.

    Costs are compared within a relative ``ARGMIN_TOLERANCE`` of the best one.
    Points of one flat piece have equal costs in exact arithmetic, but each is
    summed from different distances and may round a few ulps apart; an exact
    comparison would then drop an end of the interval. The weighted median
    compares masses against one half exactly and never uses this tolerance.
    """
    x = np.asarray(x, dtype=np.float64)
    columns, weights = network.row(i)
    candidates = np.unique(x)
    costs = np.abs(candidates[:, None] - x[columns][None, :]) @ weights
    best = costs.min()
    minimizers = candidates[costs <= best + ARGMIN_TOLERANCE * max(1.0, abs(best))]
    return float(minimizers.min()), float(minimizers.max())
