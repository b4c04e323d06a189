import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Tuple

from backend.bits import power_of_two_above, universe_bits, is_power_of_two
from backend.errors import InvalidInputError

# Counters are 64-bit; these bounds keep every measure representable.
MAX_TOTAL_SIZE = 1 << 40
MAX_MEASURE = 1 << 63

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SetSequence:
    """
    A sequence of integer sets over the universe ``[0, u)``.

    Each set is stored as a strictly increasing tuple. The class validates
    its invariants on construction, so any instance that exists is well formed.

    Attributes:
        universe_size (int): The universe size ``u`` (positive)
        sets (tuple): ``n`` strictly increasing tuples of elements in ``[0, u)``
    """
    universe_size: int
    sets: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.universe_size < 1:
            raise InvalidInputError(f"universe size must be positive, got {self.universe_size}")
        for index, elements in enumerate(self.sets, start=1):
            previous = -1
            for x in elements:
                if x <= previous:
                    raise InvalidInputError(f"set {index} is not strictly increasing at element {x}")
                previous = x
            if elements and elements[-1] >= self.universe_size:
                raise InvalidInputError(
                    f"set {index} holds {elements[-1]}, outside universe [0, {self.universe_size})"
                )
        total = self.total_size
        if total > MAX_TOTAL_SIZE:
            raise InvalidInputError(f"total cardinality {total} exceeds {MAX_TOTAL_SIZE}")
        if total * max(self.universe_size - 1, 1).bit_length() >= MAX_MEASURE:
            raise InvalidInputError("N * log u does not fit a 64-bit counter")

    @classmethod
    def from_iterables(cls, sets: Iterable[Iterable[int]], universe_size=None) -> "SetSequence":
        """
        Build a sequence from arbitrary iterables, deduplicating and sorting.

        Args:
            sets: One iterable of nonnegative integers per set
            universe_size (int, optional): Explicit universe size. When omitted
                the smallest power of two strictly greater than the largest
                element is used (1 for a sequence without elements).

        Returns:
            SetSequence: The validated sequence

        Raises:
            InvalidInputError: If an element is negative or outside the universe
        """
        normalized = []
        for elements in sets:
            unique = sorted(set(elements))
            if unique and unique[0] < 0:
                raise InvalidInputError(f"negative element {unique[0]}")
            normalized.append(tuple(unique))
        if universe_size is None:
            largest = max((s[-1] for s in normalized if s), default=-1)
            universe_size = power_of_two_above(largest)
        return cls(universe_size=universe_size, sets=tuple(normalized))

    @property
    def num_sets(self) -> int:
        return len(self.sets)

    @property
    def total_size(self) -> int:
        return sum(len(s) for s in self.sets)

    @property
    def nonempty_sets(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(s for s in self.sets if s)

    @property
    def log_universe(self) -> int:
        return universe_bits(self.universe_size)

    def is_empty(self) -> bool:
        return self.total_size == 0

    def require_power_of_two(self):
        """Raise unless the universe size is a power of two."""
        if not is_power_of_two(self.universe_size):
            raise InvalidInputError(
                f"shifted encodings need a power-of-two universe, got u={self.universe_size}"
            )


@dataclass(frozen=True)
class OccurrenceSets:
    """
    Inverted index of a set sequence: ``A_x`` lists the sets containing ``x``.

    Set indices are 1-based, so ``i in sets[x]`` iff ``x`` belongs to ``S_i``.

    Attributes:
        num_sets (int): ``n``, the number of input sets the indices refer to
        sets (tuple): ``A_0, ..., A_{u-1}``, each a strictly increasing tuple
    """
    num_sets: int
    sets: Tuple[Tuple[int, ...], ...]

    @property
    def universe_size(self) -> int:
        return len(self.sets)

    def __getitem__(self, x) -> Tuple[int, ...]:
        return self.sets[x]

    def is_dense(self) -> bool:
        """True when no ``A_x`` is empty and every set index occurs somewhere."""
        if any(not occurrences for occurrences in self.sets):
            return False
        used = set()
        for occurrences in self.sets:
            used.update(occurrences)
        return len(used) == self.num_sets

    def require_dense(self):
        if not self.is_dense():
            raise InvalidInputError(
                "occurrence sets must be dense (no empty A_x, every set index used); densify first"
            )

    def doubled(self) -> "OccurrenceSets":
        """Returns ``A_0, ..., A_{u-1}, A_0, ..., A_{u-1}``."""
        return OccurrenceSets(num_sets=self.num_sets, sets=self.sets + self.sets)

    def rotated(self, offset: int) -> "OccurrenceSets":
        """Returns the sequence ``A_offset, ..., A_{u-1}, A_0, ..., A_{offset-1}``."""
        offset %= max(self.universe_size, 1)
        return OccurrenceSets(num_sets=self.num_sets, sets=self.sets[offset:] + self.sets[:offset])

    def to_set_sequence(self) -> SetSequence:
        buckets = [[] for _ in range(self.num_sets)]
        for x, occurrences in enumerate(self.sets):
            for i in occurrences:
                buckets[i - 1].append(x)
        return SetSequence(universe_size=max(self.universe_size, 1), sets=tuple(tuple(b) for b in buckets))


def build_occurrence_sets(seq: SetSequence) -> OccurrenceSets:
    """
    Invert a set sequence into the occurrence sets ``A_x``.

    Args:
        seq (SetSequence): The input sequence

    Returns:
        OccurrenceSets: ``A_x`` for every ``x`` in ``[0, u)``, with 1-based set indices
    """
    buckets = [[] for _ in range(seq.universe_size)]
    for i, elements in enumerate(seq.sets, start=1):
        for x in elements:
            buckets[x].append(i)
    return OccurrenceSets(num_sets=seq.num_sets, sets=tuple(tuple(b) for b in buckets))


def densify(seq: SetSequence) -> Tuple[OccurrenceSets, Dict[int, int]]:
    """
    Remove unused universe positions and empty sets, preserving order.

    Args:
        seq (SetSequence): The input sequence

    Returns:
        tuple: ``(occ, mapping)`` where ``occ`` is dense and ``mapping`` sends
        every used element to its position in the dense universe. The mapping
        is strictly increasing.

    Raises:
        InvalidInputError: If every set is empty
    """
    nonempty = seq.nonempty_sets
    if not nonempty:
        raise InvalidInputError("every set is empty; there is nothing to encode")

    used = sorted({x for elements in nonempty for x in elements})
    mapping = {x: position for position, x in enumerate(used)}
    buckets = [[] for _ in used]
    for i, elements in enumerate(nonempty, start=1):
        for x in elements:
            buckets[mapping[x]].append(i)

    dropped = seq.universe_size - len(used)
    if dropped or len(nonempty) != seq.num_sets:
        logger.debug(
            f"Densified universe {seq.universe_size} -> {len(used)}, sets {seq.num_sets} -> {len(nonempty)}"
        )
    occ = OccurrenceSets(num_sets=len(nonempty), sets=tuple(tuple(b) for b in buckets))
    return occ, mapping
