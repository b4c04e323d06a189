import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np

from backend.errors import InvalidInputError, ResourceLimitError
from backend.ruler import level_interval_arrays
from backend.set_sequence import SetSequence
from backend.shift_counter import DagSegTree, DiffArrayCounter, ShiftCounter

logger = logging.getLogger(__name__)

LevelCallback = Callable[[int, ShiftCounter], None]


class ShiftBackend(Enum):
    """Counter implementation used by the level sweep."""
    ARRAY = "array"
    DAG = "dag"


class ShiftOptimum(NamedTuple):
    shift: int
    cost: int


@dataclass(frozen=True, eq=False)
class ShiftProfile:
    """
    ``trie(S + a)`` for every shift ``a`` in ``[0, u)``.

    Attributes:
        values (np.ndarray): int64 array of length ``u``
    """
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, shift: int) -> int:
        return int(self.values[shift])

    def tolist(self):
        return self.values.tolist()

    def optimum(self) -> ShiftOptimum:
        """Smallest shift reaching the minimum."""
        index = int(np.argmin(self.values))
        return ShiftOptimum(index, int(self.values[index]))

    def worst(self) -> ShiftOptimum:
        """Smallest shift reaching the maximum."""
        index = int(np.argmax(self.values))
        return ShiftOptimum(index, int(self.values[index]))

    def average(self) -> float:
        return float(self.values.mean())


def new_counter(backend: ShiftBackend) -> ShiftCounter:
    """Returns a counter holding ``A = [0]``."""
    if backend is ShiftBackend.DAG:
        return DagSegTree()
    return DiffArrayCounter()


def consecutive_pairs(seq: SetSequence) -> Tuple[np.ndarray, np.ndarray]:
    """
    Every pair ``(x_i, x_{i+1})`` of every nonempty set, plus ``(x_m, x_1 + u)``.

    Returns:
        tuple: ``(lefts, rights)`` int64 arrays of equal length ``N``
    """
    lefts, rights = [], []
    for elements in seq.nonempty_sets:
        lefts.extend(elements)
        rights.extend(elements[1:])
        rights.append(elements[0] + seq.universe_size)
    return np.asarray(lefts, dtype=np.int64), np.asarray(rights, dtype=np.int64)


def _require_shiftable(seq: SetSequence):
    seq.require_power_of_two()
    if seq.is_empty():
        raise InvalidInputError("every set is empty; there is no encoding to optimize")


def _check_array_universe(seq: SetSequence, max_universe: Optional[int]):
    if max_universe is not None and seq.universe_size > max_universe:
        raise ResourceLimitError(
            f"universe {seq.universe_size} exceeds the shift array cap {max_universe}",
            limit=max_universe,
            requested=seq.universe_size,
        )


def build_shift_counter(seq: SetSequence, counter: ShiftCounter,
                        on_level: Optional[LevelCallback] = None) -> ShiftCounter:
    """
    Run the level sweep, leaving ``C_{log u}`` in ``counter``.

    At level ``k`` the counter is extended to ``2^(k-1)`` cells and every pair
    adds its ``I_k`` segments, so afterwards cell ``a`` holds ``trie(S + a)``
    for every ``a`` congruent to it modulo ``u / 2``.

    Args:
        seq (SetSequence): Sets over a power-of-two universe
        counter (ShiftCounter): A freshly initialized counter
        on_level (callable, optional): Called as ``on_level(k, counter)`` after each level

    Returns:
        ShiftCounter: The same counter, for chaining
    """
    _require_shiftable(seq)
    lefts, rights = consecutive_pairs(seq)
    for k in range(1, seq.log_universe + 1):
        if k > 1:
            counter.extend()
        starts, stops = level_interval_arrays(lefts, rights, k, seq.universe_size)
        counter.add_many(starts, stops)
        logger.debug(f"Level {k}: {len(starts)} segments over {counter.size} cells")
        if on_level is not None:
            on_level(k, counter)
    return counter


def optimal_shift(seq: SetSequence, backend: ShiftBackend = ShiftBackend.ARRAY,
                  max_universe: Optional[int] = None) -> ShiftOptimum:
    """
    Find the smallest shift ``a`` minimizing ``trie(S + a)``.

    Args:
        seq (SetSequence): Sets over a power-of-two universe, at least one nonempty
        backend (ShiftBackend): Counter implementation; both give the same answer
        max_universe (int, optional): Refuse larger universes on the array backend;
            the DAG backend ignores it

    Returns:
        ShiftOptimum: ``(shift, cost)``

    Raises:
        InvalidInputError: If ``u`` is not a power of two or every set is empty
        ResourceLimitError: If the array backend would exceed ``max_universe``
    """
    _require_shiftable(seq)
    if backend is ShiftBackend.ARRAY:
        _check_array_universe(seq, max_universe)
    counter = build_shift_counter(seq, new_counter(backend))
    shift, cost = counter.argmin()
    logger.debug(f"Optimal shift via {backend.value}: a={shift}, cost={cost}")
    return ShiftOptimum(int(shift), int(cost))


def shift_profile(seq: SetSequence, max_universe: Optional[int] = None) -> ShiftProfile:
    """
    Compute ``trie(S + a)`` for all ``a`` with the difference-array counter.

    Returns:
        ShiftProfile: Length-``u`` profile; the counter's half-length array tiled twice

    Raises:
        ResourceLimitError: If ``u`` exceeds ``max_universe``
    """
    _require_shiftable(seq)
    _check_array_universe(seq, max_universe)
    counter = build_shift_counter(seq, DiffArrayCounter())
    values = counter.values()
    if len(values) < seq.universe_size:
        values = np.tile(values, seq.universe_size // len(values))
    return ShiftProfile(values=values)
