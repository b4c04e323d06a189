import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Union

from backend.encoding import BitString, Encoder, bits
from backend.errors import InvalidInputError
from backend.set_sequence import OccurrenceSets

_TOKEN = re.compile(r"\s*(?:(\d+)|([(),]))")
_OPEN = "("
_COMMA = ","


@dataclass(frozen=True)
class CodeTree:
    """
    Binary tree whose labeled leaves define a prefix-free encoding.

    A leaf carries a label and no children; an internal node carries two
    children and no label. Reading ``0`` for a left edge and ``1`` for a
    right edge, the root-to-leaf path of a label is its codeword.

    Attributes:
        label (int, optional): Leaf label, ``None`` for internal nodes
        left (CodeTree, optional): Left subtree of an internal node
        right (CodeTree, optional): Right subtree of an internal node
    """
    label: Optional[int] = None
    left: Optional["CodeTree"] = None
    right: Optional["CodeTree"] = None

    def __post_init__(self):
        if self.label is None:
            if self.left is None or self.right is None:
                raise InvalidInputError("an internal node needs exactly two children")
        elif self.left is not None or self.right is not None:
            raise InvalidInputError("a leaf cannot have children")

    @classmethod
    def leaf(cls, label: int) -> "CodeTree":
        return cls(label=label)

    @classmethod
    def node(cls, left: "CodeTree", right: "CodeTree") -> "CodeTree":
        return cls(left=left, right=right)

    @property
    def is_leaf(self) -> bool:
        return self.label is not None

    def leaves(self) -> List[int]:
        """Leaf labels in left-to-right order."""
        labels = []
        stack = [self]
        while stack:
            current = stack.pop()
            if current.is_leaf:
                labels.append(current.label)
            else:
                stack.append(current.right)
                stack.append(current.left)
        return labels

    def is_ordered(self) -> bool:
        labels = self.leaves()
        return labels == list(range(len(labels)))

    def codes(self) -> Dict[int, BitString]:
        """Map every leaf label to its root-to-leaf codeword."""
        paths = {}
        stack = [(self, "")]
        while stack:
            current, path = stack.pop()
            if current.is_leaf:
                if current.label in paths:
                    raise InvalidInputError(f"label {current.label} appears on more than one leaf")
                paths[current.label] = bits(path)
            else:
                stack.append((current.right, path + "1"))
                stack.append((current.left, path + "0"))
        return paths

    def encoder(self) -> Encoder:
        codes = self.codes()

        def encode(x: int) -> BitString:
            try:
                return codes[x]
            except KeyError:
                raise InvalidInputError(f"element {x} is not a leaf of the code tree") from None

        return encode

    def validate_labels(self, universe_size: int):
        """
        Check that the leaf labels are a permutation of ``[0, universe_size)``.

        Raises:
            InvalidInputError: On duplicate, missing or out-of-range labels
        """
        labels = self.leaves()
        if sorted(labels) != list(range(universe_size)):
            raise InvalidInputError(
                f"tree has {len(labels)} leaves whose labels are not a permutation of [0, {universe_size})"
            )

    def relabel(self, mapping: Union[Mapping[int, int], Callable[[int], int]]) -> "CodeTree":
        """Returns a copy of the tree with every leaf label passed through ``mapping``."""
        translate = mapping.__getitem__ if isinstance(mapping, Mapping) else mapping
        built = []
        stack = [(self, False)]
        while stack:
            current, expanded = stack.pop()
            if current.is_leaf:
                built.append(CodeTree.leaf(translate(current.label)))
            elif expanded:
                right = built.pop()
                left = built.pop()
                built.append(CodeTree.node(left, right))
            else:
                stack.append((current, True))
                stack.append((current.right, False))
                stack.append((current.left, False))
        return built[0]

    def to_text(self) -> str:
        """Serialize as ``leaf | (T,T)``, e.g. ``(0,(1,(2,3)))``."""
        parts = []
        stack: list = [self]
        while stack:
            item = stack.pop()
            if isinstance(item, str):
                parts.append(item)
            elif item.is_leaf:
                parts.append(str(item.label))
            else:
                stack.extend([")", item.right, ",", item.left, "("])
        return "".join(parts)

    @classmethod
    def parse(cls, text: str) -> "CodeTree":
        """
        Parse the ``leaf | (T,T)`` serialization produced by ``to_text``.

        Args:
            text (str): Serialized tree; whitespace between tokens is ignored

        Returns:
            CodeTree: The parsed tree

        Raises:
            InvalidInputError: If the text is not a well-formed tree
        """
        stack: list = []
        position = 0
        body = text.strip()
        while position < len(body):
            match = _TOKEN.match(body, position)
            if match is None:
                raise InvalidInputError(f"unexpected character {body[position]!r} at offset {position}")
            position = match.end()
            number, symbol = match.groups()
            if number is not None:
                stack.append(cls.leaf(int(number)))
            elif symbol == "(":
                stack.append(_OPEN)
            elif symbol == ",":
                if len(stack) < 2 or not isinstance(stack[-1], CodeTree) or stack[-2] != _OPEN:
                    raise InvalidInputError(f"misplaced ',' at offset {match.start(2)}")
                stack.append(_COMMA)
            else:
                if (len(stack) < 4 or not isinstance(stack[-1], CodeTree) or stack[-2] != _COMMA
                        or not isinstance(stack[-3], CodeTree) or stack[-4] != _OPEN):
                    raise InvalidInputError(f"misplaced ')' at offset {match.start(2)}")
                right = stack.pop()
                stack.pop()
                left = stack.pop()
                stack.pop()
                stack.append(cls.node(left, right))
        if len(stack) != 1 or not isinstance(stack[0], CodeTree):
            raise InvalidInputError("incomplete tree serialization")
        return stack[0]


def tree_cost(tree: CodeTree, occ: OccurrenceSets) -> int:
    """
    Cost ``c(T)``: sum over non-root nodes of the size of the union of ``A_x`` below them.

    Args:
        tree (CodeTree): Tree whose leaves are labeled ``0 .. u-1`` in any order
        occ (OccurrenceSets): The occurrence sets ``A_x``

    Returns:
        int: The tree cost, equal to the trie measure of the encoded sequence

    Raises:
        InvalidInputError: If the leaf labels do not match the universe of ``occ``
    """
    tree.validate_labels(occ.universe_size)
    total = 0
    unions = []
    stack = [(tree, False)]
    while stack:
        current, expanded = stack.pop()
        if current.is_leaf:
            unions.append(frozenset(occ[current.label]))
        elif expanded:
            right = unions.pop()
            left = unions.pop()
            total += len(left) + len(right)
            unions.append(left | right)
        else:
            stack.append((current, True))
            stack.append((current.right, False))
            stack.append((current.left, False))
    return total
