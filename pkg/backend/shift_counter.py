"""
Counters maintaining the array ``A`` of per-shift costs during the level sweep.

Both backends start from ``A = [0]`` and support three mutations: add 1 on a
half-open range, double the array by appending a copy of itself, and report
the leftmost minimum.
"""

import logging
from abc import ABC, abstractmethod
from typing import List, Tuple

import numpy as np

from backend.errors import InvalidInputError

NULL = -1

logger = logging.getLogger(__name__)


class ShiftCounter(ABC):
    """Abstract array of nonnegative counters over ``[0, size)``."""

    @property
    @abstractmethod
    def size(self) -> int:
        ...

    @abstractmethod
    def add(self, start: int, stop: int):
        """Add 1 to every cell in ``[start, stop)``."""

    @abstractmethod
    def extend(self):
        """Double the array: ``A <- A ++ A``."""

    @abstractmethod
    def argmin(self) -> Tuple[int, int]:
        """Returns ``(index, value)`` of the leftmost minimum."""

    @abstractmethod
    def values(self) -> np.ndarray:
        """Materialize the whole array."""

    def add_many(self, starts: np.ndarray, stops: np.ndarray):
        for start, stop in zip(starts.tolist(), stops.tolist()):
            self.add(start, stop)

    def _check_range(self, start: int, stop: int):
        if not 0 <= start < stop <= self.size:
            raise InvalidInputError(f"range [{start}, {stop}) is not a nonempty part of [0, {self.size})")


class DiffArrayCounter(ShiftCounter):
    """
    Counter stored as adjacent differences: ``A[a] = Δ[0] + ... + Δ[a]``.

    Range adds touch two cells; ``extend`` copies ``Δ`` and repairs the seam
    so that the second half restarts at ``A[0]``.
    """

    def __init__(self):
        self.delta = np.zeros(1, dtype=np.int64)

    @property
    def size(self) -> int:
        return len(self.delta)

    def add(self, start: int, stop: int):
        self._check_range(start, stop)
        self.delta[start] += 1
        if stop < self.size:
            self.delta[stop] -= 1

    def add_many(self, starts: np.ndarray, stops: np.ndarray):
        if len(starts) == 0:
            return
        starts = np.asarray(starts, dtype=np.int64)
        stops = np.asarray(stops, dtype=np.int64)
        if starts.min() < 0 or stops.max() > self.size or np.any(starts >= stops):
            raise InvalidInputError(f"batch holds a range outside [0, {self.size}) or an empty range")
        np.add.at(self.delta, starts, 1)
        inner = stops[stops < self.size]
        np.add.at(self.delta, inner, -1)

    def extend(self):
        size = self.size
        total = self.delta.sum()
        self.delta = np.concatenate([self.delta, self.delta])
        # Δ[size] currently holds Δ[0]; it must become A[0] - A[size-1].
        self.delta[size] -= total

    def values(self) -> np.ndarray:
        return np.cumsum(self.delta)

    def argmin(self) -> Tuple[int, int]:
        values = self.values()
        index = int(np.argmin(values))
        return index, int(values[index])


class DagSegTree(ShiftCounter):
    """
    Segment tree with range add and leftmost-argmin, stored as a DAG.

    ``extend`` creates a new root whose two children are the old root, so a
    doubling costs O(1). Shared nodes are copied before they are modified
    (copy on write), tracked through per-node reference counts. Nodes live in
    a struct-of-arrays arena; freed nodes are not reclaimed.

    Attributes:
        root (int): Arena index of the root node
        height (int): Tree height; the array has ``2^(height-1)`` cells
    """

    def __init__(self):
        self._val: List[int] = []
        self._min: List[int] = []
        self._argmin: List[int] = []
        self._ref: List[int] = []
        self._left: List[int] = []
        self._right: List[int] = []
        self.root = self._allocate_leaf()
        self.height = 1

    @property
    def size(self) -> int:
        return 1 << (self.height - 1)

    @property
    def node_count(self) -> int:
        """Number of nodes ever allocated."""
        return len(self._val)

    def _allocate_leaf(self) -> int:
        self._val.append(0)
        self._min.append(0)
        self._argmin.append(0)
        self._ref.append(1)
        self._left.append(NULL)
        self._right.append(NULL)
        return len(self._val) - 1

    def _reallocate_node(self, source: int, left: int, right: int) -> int:
        """Copy ``source`` into a fresh node pointing at ``left`` and ``right``."""
        self._val.append(self._val[source])
        self._min.append(self._min[source])
        self._argmin.append(self._argmin[source])
        self._ref.append(1)
        self._left.append(left)
        self._right.append(right)
        self._ref[source] -= 1
        if left != NULL:
            self._ref[left] += 1
        if right != NULL:
            self._ref[right] += 1
        return len(self._val) - 1

    def extend(self):
        root = self._reallocate_node(self.root, self.root, self.root)
        self._val[root] = 0
        self.root = root
        self.height += 1

    def add(self, start: int, stop: int):
        self._check_range(start, stop)
        self.root = self._increment(self.root, start, stop, self.height)

    def _increment(self, node: int, start: int, stop: int, height: int) -> int:
        if self._ref[node] > 1:
            node = self._reallocate_node(node, self._left[node], self._right[node])
        span = 1 << (height - 1)
        if start == 0 and stop == span:
            self._val[node] += 1
            self._min[node] += 1
            return node

        half = span >> 1
        if start < half:
            self._left[node] = self._increment(self._left[node], start, min(stop, half), height - 1)
        if stop > half:
            self._right[node] = self._increment(self._right[node], max(start - half, 0), stop - half, height - 1)

        left, right = self._left[node], self._right[node]
        if self._min[left] <= self._min[right]:
            self._min[node] = self._val[node] + self._min[left]
            self._argmin[node] = self._argmin[left]
        else:
            self._min[node] = self._val[node] + self._min[right]
            self._argmin[node] = self._argmin[right] + half
        return node

    def argmin(self) -> Tuple[int, int]:
        return self._argmin[self.root], self._min[self.root]

    def values(self) -> np.ndarray:
        out = np.empty(self.size, dtype=np.int64)
        stack = [(self.root, self.height, 0, 0)]
        while stack:
            node, height, offset, pending = stack.pop()
            pending += self._val[node]
            if height == 1:
                out[offset] = pending
                continue
            half = 1 << (height - 2)
            stack.append((self._right[node], height - 1, offset + half, pending))
            stack.append((self._left[node], height - 1, offset, pending))
        return out

    def reference_count_mismatches(self) -> List[Tuple[int, int, int]]:
        """
        Compare every stored ``ref`` with the node's in-degree in the reachable DAG.

        Returns:
            list: ``(node, expected, stored)`` for each disagreeing node; the
            root counts one extra reference
        """
        expected = [0] * self.node_count
        expected[self.root] = 1
        seen = {self.root}
        stack = [self.root]
        while stack:
            node = stack.pop()
            for child in (self._left[node], self._right[node]):
                if child == NULL:
                    continue
                expected[child] += 1
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
        mismatches = [
            (node, count, self._ref[node])
            for node, count in enumerate(expected)
            if node in seen and count != self._ref[node]
        ]
        if mismatches:
            logger.warning(f"{len(mismatches)} DAG nodes carry a stale reference count")
        return mismatches
