"""
Optimal ordered and shifted-ordered encodings.

An ordered code tree keeps the leaves ``0 .. u-1`` in order, so its subtrees
are intervals ``[x, y]``. With ``a[x, y] = |A_x ∪ ... ∪ A_y|`` the cost of a
tree obeys ``d[x, y] = a[x, y] + min over x < z <= y of d[x, z-1] + d[z, y]``,
and the tree cost is ``d[0, u-1] - a[0, u-1]``.
"""

import logging
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from backend.code_tree import CodeTree
from backend.errors import InvalidInputError, ResourceLimitError, VerificationError
from backend.set_sequence import OccurrenceSets

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class UnionMatrix:
    """
    Union cardinalities ``a[x, y]`` for ``0 <= x <= y < size``.

    Attributes:
        values (np.ndarray): ``size x size`` int64 matrix, zero below the diagonal
        num_sets (int): ``n``, the number of set indices
    """
    values: np.ndarray
    num_sets: int

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def __getitem__(self, cell) -> int:
        x, y = cell
        return int(self.values[x, y])

    def is_monotone(self) -> bool:
        """True when widening an interval never shrinks its union."""
        upper = np.triu(self.values)
        grows_down = np.all(np.triu(upper[:-1, :] - upper[1:, :], 1) >= 0)
        grows_right = np.all(np.triu(upper[:, 1:] - upper[:, :-1]) >= 0)
        return bool(grows_down and grows_right)


@dataclass(frozen=True, eq=False)
class DpTables:
    """
    Tables of the interval DP.

    Attributes:
        cost (np.ndarray): ``d[x, y]``; only cells with ``y - x < max_span`` are filled
        split (np.ndarray): ``z[x, y]``, the first leaf of the right subtree
        max_span (int): Longest interval length solved
    """
    cost: np.ndarray
    split: np.ndarray
    max_span: int


class OrderedEncoding(NamedTuple):
    tree: CodeTree
    cost: int


class ShiftedOrderedEncoding(NamedTuple):
    offset: int
    tree: CodeTree
    cost: int


def stamp_block_update(matrix: np.ndarray, x: int, y: int):
    """
    Register ``+1`` on the square block ``[x+1, y-1]^2`` as four corner cells.

    Indices are already offset by the caller; after ``suffix_partial_sums`` the
    block, and only the block, has grown by one.
    """
    matrix[y - 1, y - 1] += 1
    matrix[x, x] += 1
    matrix[x, y - 1] -= 1
    matrix[y - 1, x] -= 1


def suffix_partial_sums(matrix: np.ndarray) -> np.ndarray:
    """Row-wise right-to-left, then column-wise bottom-up running sums."""
    rows = np.flip(np.cumsum(np.flip(matrix, axis=1), axis=1), axis=1)
    return np.flip(np.cumsum(np.flip(rows, axis=0), axis=0), axis=0)


def compute_union_matrix(occ: OccurrenceSets) -> UnionMatrix:
    """
    Compute every ``a[x, y]`` in ``O(N + u^2)``.

    For each set index ``i``, each maximal run of positions avoiding ``i``
    stamps its block; the partial sums then count, per interval, the indices
    it avoids, and the union size is ``n`` minus that count. Positions ``-1``
    and ``u`` act as sentinels holding every index.

    Args:
        occ (OccurrenceSets): Dense occurrence sets

    Returns:
        UnionMatrix: The union cardinalities

    Raises:
        InvalidInputError: If some ``A_x`` is empty or some index is never used
    """
    occ.require_dense()
    size = occ.universe_size
    n = occ.num_sets
    # Row and column 0 stand for the sentinel at position -1.
    stamps = np.zeros((size + 1, size + 1), dtype=np.int64)
    previous = [0] * (n + 1)
    for y in range(size + 1):
        holders = occ[y] if y < size else range(1, n + 1)
        for i in holders:
            x = previous[i]
            if x < y:
                stamp_block_update(stamps, x, y + 1)
            previous[i] = y + 1
    avoided = suffix_partial_sums(stamps)[1:, 1:]
    values = np.triu(n - avoided)
    logger.debug(f"Union matrix over {size} positions and {n} sets ready")
    return UnionMatrix(values=values, num_sets=n)


def solve_ordered_dp(unions: UnionMatrix, max_span: Optional[int] = None) -> DpTables:
    """
    Fill ``d`` and ``z`` by increasing interval length.

    Args:
        unions (UnionMatrix): The constants ``a[x, y]``
        max_span (int, optional): Longest interval to solve, defaults to the whole domain

    Returns:
        DpTables: Cost and split tables; ties pick the smallest split
    """
    size = unions.size
    max_span = size if max_span is None else min(max_span, size)
    cost = np.zeros((size, size), dtype=np.int64)
    split = np.zeros((size, size), dtype=np.int64)
    diagonal = np.arange(size)
    cost[diagonal, diagonal] = unions.values[diagonal, diagonal]

    for length in range(2, max_span + 1):
        xs = np.arange(size - length + 1)
        ys = xs + length - 1
        offsets = np.arange(length - 1)[:, None]
        candidates = cost[xs, xs + offsets] + cost[xs + offsets + 1, ys]
        best = np.argmin(candidates, axis=0)
        cost[xs, ys] = unions.values[xs, ys] + candidates[best, np.arange(len(xs))]
        split[xs, ys] = xs + best + 1
    return DpTables(cost=cost, split=split, max_span=max_span)


def backtrack_tree(tables: DpTables, first: int, last: int,
                   label: Callable[[int], int] = int) -> CodeTree:
    """
    Rebuild the optimal tree over positions ``[first, last]``.

    Args:
        tables (DpTables): Solved DP tables
        first (int): Leftmost position
        last (int): Rightmost position
        label (callable): Maps a position to its leaf label

    Returns:
        CodeTree: The tree whose left subtree holds ``z - first`` leaves at every node
    """
    built = []
    stack = [(first, last, False)]
    while stack:
        x, y, expanded = stack.pop()
        if x == y:
            built.append(CodeTree.leaf(label(x)))
        elif expanded:
            right = built.pop()
            left = built.pop()
            built.append(CodeTree.node(left, right))
        else:
            z = int(tables.split[x, y])
            stack.append((x, y, True))
            stack.append((z, y, False))
            stack.append((x, z - 1, False))
    return built[0]


def _check_universe(occ: OccurrenceSets, max_universe: Optional[int]):
    if occ.universe_size == 0:
        raise InvalidInputError("the ordered optimizer needs a nonempty universe")
    if max_universe is not None and occ.universe_size > max_universe:
        raise ResourceLimitError(
            f"universe {occ.universe_size} exceeds the ordered optimizer cap {max_universe}",
            limit=max_universe,
            requested=occ.universe_size,
        )
    occ.require_dense()


def optimal_ordered(occ: OccurrenceSets, max_universe: Optional[int] = None) -> OrderedEncoding:
    """
    Find an ordered code tree of minimal cost.

    Args:
        occ (OccurrenceSets): Dense occurrence sets
        max_universe (int, optional): Refuse universes larger than this

    Returns:
        OrderedEncoding: ``(tree, cost)`` with in-order leaves ``0 .. u-1``

    Raises:
        InvalidInputError: If the universe is empty or ``occ`` is not dense
        ResourceLimitError: If ``u`` exceeds ``max_universe``
    """
    _check_universe(occ, max_universe)
    size = occ.universe_size
    unions = compute_union_matrix(occ)
    tables = solve_ordered_dp(unions)
    cost = int(tables.cost[0, size - 1]) - unions[0, size - 1]
    tree = backtrack_tree(tables, 0, size - 1)
    logger.debug(f"Optimal ordered cost {cost} over {size} leaves")
    return OrderedEncoding(tree=tree, cost=cost)


def optimal_shifted_ordered(occ: OccurrenceSets, max_universe: Optional[int] = None) -> ShiftedOrderedEncoding:
    """
    Find the rotation ``a'`` and ordered tree minimizing the cost together.

    The sets are doubled to ``A_0 .. A_{u-1}, A_0 .. A_{u-1}`` and the DP is
    solved for every interval up to ``u`` positions; window ``[a, a+u-1]``
    is the ordered problem on the universe rotated by ``a``.

    Args:
        occ (OccurrenceSets): Dense occurrence sets
        max_universe (int, optional): Refuse universes larger than this

    Returns:
        ShiftedOrderedEncoding: ``(offset, tree, cost)``; the tree's leaves
        carry the original positions ``p mod u`` and the smallest optimal
        offset wins

    Raises:
        InvalidInputError: If the universe is empty or ``occ`` is not dense
        ResourceLimitError: If ``u`` exceeds ``max_universe``
        VerificationError: If the doubled union matrix is inconsistent
    """
    _check_universe(occ, max_universe)
    size = occ.universe_size
    unions = compute_union_matrix(occ.doubled())
    if not np.array_equal(unions.values[:size, :size], unions.values[size:, size:]):
        raise VerificationError("doubled union matrix differs between its two copies")

    starts = np.arange(size)
    window_unions = unions.values[starts, starts + size - 1]
    full_union = unions[0, size - 1]
    if np.any(window_unions != full_union):
        bad = int(np.flatnonzero(window_unions != full_union)[0])
        raise VerificationError(
            "window unions differ from the full union",
            counterexample=f"a[{bad},{bad + size - 1}]={int(window_unions[bad])} vs {full_union}",
        )

    tables = solve_ordered_dp(unions, max_span=size)
    window_costs = tables.cost[starts, starts + size - 1]
    offset = int(np.argmin(window_costs))
    cost = int(window_costs[offset]) - full_union
    tree = backtrack_tree(tables, offset, offset + size - 1, label=lambda position: position % size)
    logger.debug(f"Optimal shifted-ordered cost {cost} at offset {offset}")
    return ShiftedOrderedEncoding(offset=offset, tree=tree, cost=cost)
