"""
Subset-sum searches over the weights of one influence-matrix row.

Both genericity (does any subset of a row sum to one half?) and link
decisiveness (does some subset without ``j`` land in ``[1/2 - w_ij, 1/2)``?)
reduce to the question "does a subset sum fall into a window". Rows with up to
``EXACT_LIMIT`` entries are enumerated outright, rows with up to
``MEET_IN_THE_MIDDLE_LIMIT`` entries are split in two halves whose sorted sums
are matched with binary search, and longer rows are reported as unchecked.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

EXACT_LIMIT = 24
MEET_IN_THE_MIDDLE_LIMIT = 40


class SearchStatus(str, Enum):
    FOUND = "found"
    NOT_FOUND = "not_found"
    UNCHECKED = "unchecked"


@dataclass(frozen=True)
class WindowSearch:
    status: SearchStatus
    subset: tuple[int, ...] | None = None

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND


@dataclass(frozen=True)
class Window:
    low: float
    high: float
    low_closed: bool = True
    high_closed: bool = True

    def contains(self, sums: np.ndarray) -> np.ndarray:
        above = sums >= self.low if self.low_closed else sums > self.low
        below = sums <= self.high if self.high_closed else sums < self.high
        return above & below


def subset_sums(values: np.ndarray) -> np.ndarray:
    """All 2**k subset sums; bit ``b`` of the index says whether ``values[b]`` is in the subset."""
    sums = np.zeros(1, dtype=np.float64)
    for value in np.asarray(values, dtype=np.float64):
        sums = np.concatenate((sums, sums + value))
    return sums


def members(index: int, count: int) -> tuple[int, ...]:
    return tuple(b for b in range(count) if (index >> b) & 1)


def find_subset_in_window(values, window: Window) -> WindowSearch:
    """Return some subset (positions into ``values``) whose sum lies in ``window``."""
    values = np.asarray(values, dtype=np.float64)
    k = values.size
    if k <= EXACT_LIMIT:
        hits = np.flatnonzero(window.contains(subset_sums(values)))
        if hits.size:
            return WindowSearch(SearchStatus.FOUND, members(int(hits[0]), k))
        return WindowSearch(SearchStatus.NOT_FOUND)
    if k <= MEET_IN_THE_MIDDLE_LIMIT:
        return _meet_in_the_middle(values, window)
    return WindowSearch(SearchStatus.UNCHECKED)


def _meet_in_the_middle(values: np.ndarray, window: Window) -> WindowSearch:
    half = values.size // 2
    left = subset_sums(values[:half])
    right = subset_sums(values[half:])
    order = np.argsort(right, kind="stable")
    sorted_right = right[order]

    first = np.searchsorted(sorted_right, window.low - left, side="left" if window.low_closed else "right")
    stop = np.searchsorted(sorted_right, window.high - left, side="right" if window.high_closed else "left")
    candidates = np.flatnonzero(stop > first)
    if candidates.size == 0:
        return WindowSearch(SearchStatus.NOT_FOUND)

    # The shifted bounds can round differently from the true sum, so confirm both ends of each range.
    for a in candidates:
        for position in (first[a], stop[a] - 1):
            b = int(order[position])
            if window.contains(np.array([left[a] + right[b]]))[0]:
                picked = members(int(a), half) + tuple(half + p for p in members(b, values.size - half))
                return WindowSearch(SearchStatus.FOUND, picked)
    return WindowSearch(SearchStatus.NOT_FOUND)
