"""
Brute-force references for every fast computation.

Everything here follows the definitions literally and is only meant for small
universes; the callers cross-check the fast paths against it.
"""

from functools import lru_cache
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from backend.bits import universe_bits
from backend.code_tree import CodeTree, tree_cost
from backend.encoding import BitString, Encoder, shifted_encoder
from backend.errors import InvalidInputError
from backend.resource_limits import ENUMERATION_MAX_U, ResourceLimits
from backend.ruler import level_intervals, ruler_level_bit
from backend.set_sequence import OccurrenceSets, SetSequence


class ExplicitTrie:
    """
    Pointer-based binary trie built by inserting codewords one by one.

    Attributes:
        root (dict): Nested ``{bit: child}`` dictionaries; a leaf is an empty dict
        edge_count (int): Number of edges, i.e. nodes minus one
    """
    def __init__(self):
        self.root: Dict[int, dict] = {}
        self.edge_count = 0
        self._terminal = set()

    @classmethod
    def from_codes(cls, codes: Sequence[BitString]) -> "ExplicitTrie":
        trie = cls()
        for code in codes:
            trie.insert(code)
        return trie

    def insert(self, code: BitString):
        """
        Add a codeword.

        Raises:
            InvalidInputError: If the code is a prefix of, or extends, a stored code
        """
        node = self.root
        for bit in code:
            if id(node) in self._terminal:
                raise InvalidInputError(f"{code.to01()!r} extends a stored codeword")
            if bit not in node:
                node[bit] = {}
                self.edge_count += 1
            node = node[bit]
        if node or id(node) in self._terminal:
            raise InvalidInputError(f"{code.to01()!r} is a prefix of a stored codeword")
        self._terminal.add(id(node))


def brute_encoded_measure(enc: Union[CodeTree, Encoder], seq: SetSequence) -> int:
    """Sum of the edge counts of explicit tries, one per nonempty set."""
    encoder = enc.encoder() if isinstance(enc, CodeTree) else enc
    return sum(
        ExplicitTrie.from_codes([encoder(x) for x in elements]).edge_count
        for elements in seq.nonempty_sets
    )


def brute_trie_measure(seq: SetSequence, a: int) -> int:
    """``trie(S + a)`` from explicit tries over the shifted fixed-length codewords."""
    seq.require_power_of_two()
    return brute_encoded_measure(shifted_encoder(a, seq.universe_size), seq)


def brute_shift_profile(seq: SetSequence, max_universe: Optional[int] = None) -> List[int]:
    """
    ``trie(S + a)`` for every shift by building each trie explicitly.

    Raises:
        ResourceLimitError: If ``u`` exceeds the oracle cap
    """
    ResourceLimits.check_oracle(seq.universe_size, max_universe).raise_if_invalid()
    seq.require_power_of_two()
    return [brute_trie_measure(seq, a) for a in range(seq.universe_size)]


def brute_level_cost(x: int, y: int, k: int, a: int, universe_size: Optional[int] = None) -> int:
    """``max over j in [x + a, y + a) of c^(k)_j``; 1 iff the pair pays at level ``k`` under shift ``a``."""
    if y <= x:
        raise InvalidInputError(f"empty pair range [{x}, {y})")
    if universe_size is not None and not 1 <= k <= universe_bits(universe_size):
        raise InvalidInputError(f"level {k} outside [1, log {universe_size}]")
    return max(ruler_level_bit(j, k) for j in range(x + a, y + a))


def _pairs(elements: Tuple[int, ...], universe_size: int):
    following = list(elements[1:]) + [elements[0] + universe_size]
    return zip(elements, following)


def ruler_decomposition_measure(seq: SetSequence, a: int) -> int:
    """``trie(S + a)`` as the sum over levels and pairs of the level costs."""
    total = 0
    for elements in seq.nonempty_sets:
        for x, y in _pairs(elements, seq.universe_size):
            total += sum(brute_level_cost(x, y, k, a, seq.universe_size) for k in range(1, seq.log_universe + 1))
    return total


def interval_depth_measure(seq: SetSequence, a: int) -> int:
    """``trie(S + a)`` as the sum over levels of how many ``I_k`` segments cover ``a``."""
    total = 0
    for elements in seq.nonempty_sets:
        for x, y in _pairs(elements, seq.universe_size):
            for k in range(1, seq.log_universe + 1):
                total += int(level_intervals(x, y, k, seq.universe_size).contains(a))
    return total


def brute_union_matrix(occ: OccurrenceSets) -> np.ndarray:
    """``a[x, y]`` by explicit unions; zero below the diagonal."""
    size = occ.universe_size
    values = np.zeros((size, size), dtype=np.int64)
    for x in range(size):
        union = set()
        for y in range(x, size):
            union.update(occ[y])
            values[x, y] = len(union)
    return values


@lru_cache(maxsize=None)
def _ordered_trees(first: int, last: int) -> Tuple[CodeTree, ...]:
    if first == last:
        return (CodeTree.leaf(first),)
    trees = []
    for split in range(first + 1, last + 1):
        for left in _ordered_trees(first, split - 1):
            for right in _ordered_trees(split, last):
                trees.append(CodeTree.node(left, right))
    return tuple(trees)


def enumerate_ordered_trees(universe_size: int) -> Iterator[CodeTree]:
    """
    Iterate over every binary tree whose in-order leaves are ``0 .. u-1``.

    There are Catalan(u - 1) of them.

    Raises:
        ResourceLimitError: If ``u`` exceeds the enumeration cap
        InvalidInputError: If ``u < 1``
    """
    if universe_size < 1:
        raise InvalidInputError("cannot enumerate trees over an empty universe")
    ResourceLimits.check_oracle(universe_size, hard_limit=ENUMERATION_MAX_U).raise_if_invalid()
    return iter(_ordered_trees(0, universe_size - 1))


class BruteOptimum(NamedTuple):
    offset: int
    tree: CodeTree
    cost: int


def brute_ordered_optimum(occ: OccurrenceSets) -> BruteOptimum:
    """Cheapest ordered tree by exhaustive enumeration; first minimum wins."""
    best = None
    for tree in enumerate_ordered_trees(occ.universe_size):
        cost = tree_cost(tree, occ)
        if best is None or cost < best.cost:
            best = BruteOptimum(offset=0, tree=tree, cost=cost)
    return best


def brute_shifted_ordered_optimum(occ: OccurrenceSets) -> BruteOptimum:
    """Cheapest ordered tree over every rotation of the universe; smallest offset wins ties."""
    best = None
    for offset in range(occ.universe_size):
        candidate = brute_ordered_optimum(occ.rotated(offset))
        if best is None or candidate.cost < best.cost:
            size = occ.universe_size
            tree = candidate.tree.relabel(lambda position: (position + offset) % size)
            best = BruteOptimum(offset=offset, tree=tree, cost=candidate.cost)
    return best

