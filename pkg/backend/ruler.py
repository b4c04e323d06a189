"""
Ruler sequence and the periodic cost intervals of consecutive pairs.

``c_j`` counts how many trailing levels the codes of ``j`` and ``j + 1``
diverge on; it splits into level bits ``c^(k)_j``, each periodic with period
``2^(k-1)``. For a consecutive pair ``(x, x')`` of a set, the shifts that pay
one trie edge at level ``k`` form one or two intervals modulo ``2^(k-1)``.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from backend.bits import trailing_zero_bits, universe_bits
from backend.errors import InvalidInputError


def ruler_level_bit(j: int, k: int) -> int:
    """Returns ``c^(k)_j``: 1 when ``j + 1`` is a multiple of ``2^(k-1)``, else 0."""
    if k < 1:
        raise InvalidInputError(f"level must be at least 1, got {k}")
    if j < 0:
        raise InvalidInputError(f"position must be nonnegative, got {j}")
    return 1 if (j + 1) % (1 << (k - 1)) == 0 else 0


def ruler_value(j: int, log_universe: int) -> int:
    """Returns ``c_j = sum of c^(k)_j for k in [1, log u]``."""
    return min(trailing_zero_bits(j + 1) + 1, log_universe)


@dataclass(frozen=True)
class LevelIntervals:
    """
    Shifts, modulo ``2^(level-1)``, at which a consecutive pair pays an edge at ``level``.

    Attributes:
        level (int): Trie level ``k``
        segments (tuple): One or two disjoint, nonempty half-open ``(start, stop)`` pairs
    """
    level: int
    segments: Tuple[Tuple[int, int], ...]

    @property
    def period(self) -> int:
        return 1 << (self.level - 1)

    @property
    def is_full(self) -> bool:
        return self.segments == ((0, self.period),)

    def covered_length(self) -> int:
        return sum(stop - start for start, stop in self.segments)

    def contains(self, shift: int) -> bool:
        position = shift % self.period
        return any(start <= position < stop for start, stop in self.segments)


def level_intervals(x: int, x_next: int, k: int, universe_size: int) -> LevelIntervals:
    """
    Build ``I_k(x, x_next)``.

    Args:
        x (int): The smaller element of the pair
        x_next (int): The next element, or ``x_1 + u`` for the wrap-around pair
        k (int): Level in ``[1, log u]``
        universe_size (int): Power-of-two universe size ``u``

    Returns:
        LevelIntervals: ``[0, 2^(k-1))`` when the gap reaches the period,
        otherwise ``[l, r)`` or ``[0, r) ∪ [l, 2^(k-1))`` with empty parts dropped

    Raises:
        InvalidInputError: If ``0 <= x < x_next <= min(x + u, 2u)`` or
            ``1 <= k <= log u`` does not hold
    """
    log_u = universe_bits(universe_size)
    if not 1 <= k <= log_u:
        raise InvalidInputError(f"level {k} outside [1, {log_u}]")
    if not (0 <= x < x_next <= x + universe_size and x_next <= 2 * universe_size):
        raise InvalidInputError(f"({x}, {x_next}) is not a consecutive pair for u={universe_size}")

    period = 1 << (k - 1)
    if x_next - x >= period:
        return LevelIntervals(level=k, segments=((0, period),))
    start = (2 * universe_size - x_next) % period
    stop = (2 * universe_size - x) % period
    if start < stop:
        return LevelIntervals(level=k, segments=((start, stop),))
    segments = tuple(segment for segment in ((0, stop), (start, period)) if segment[0] < segment[1])
    return LevelIntervals(level=k, segments=segments)


def level_interval_arrays(xs: np.ndarray, x_nexts: np.ndarray, k: int, universe_size: int):
    """
    Vectorized ``level_intervals`` over many pairs at once.

    Args:
        xs (np.ndarray): Left elements of the pairs
        x_nexts (np.ndarray): Right elements of the pairs
        k (int): Level in ``[1, log u]``
        universe_size (int): Power-of-two universe size

    Returns:
        tuple: ``(starts, stops)`` int64 arrays listing every nonempty segment
        of every pair, in no particular order
    """
    period = 1 << (k - 1)
    full = (x_nexts - xs) >= period
    starts = (2 * universe_size - x_nexts) % period
    stops = (2 * universe_size - xs) % period
    partial = ~full
    single = partial & (starts < stops)
    split = partial & (starts >= stops)

    head = split & (stops > 0)
    all_starts = np.concatenate([
        np.zeros(int(full.sum()), dtype=np.int64),
        starts[single],
        np.zeros(int(head.sum()), dtype=np.int64),
        starts[split],
    ])
    all_stops = np.concatenate([
        np.full(int(full.sum()), period, dtype=np.int64),
        stops[single],
        stops[head],
        np.full(int(split.sum()), period, dtype=np.int64),
    ])
    return all_starts, all_stops
