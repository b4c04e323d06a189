"""Bit strings, the ⊕ operator and the trie measure of encoded sets."""

from typing import TYPE_CHECKING, Callable, Iterable, Sequence, Union

from bitarray import frozenbitarray
from bitarray.util import int2ba

from backend.bits import universe_bits
from backend.errors import InvalidInputError
from backend.set_sequence import SetSequence

if TYPE_CHECKING:
    from backend.code_tree import CodeTree

BitString = frozenbitarray
Encoder = Callable[[int], BitString]


def bits(text: str) -> BitString:
    """Build a big-endian bit string from a ``'0'``/``'1'`` literal such as ``'011'``."""
    if any(ch not in "01" for ch in text):
        raise InvalidInputError(f"not a bit string: {text!r}")
    return frozenbitarray(text, endian="big")


def suffix_after_lcp(alpha: BitString, beta: BitString) -> BitString:
    """
    Compute ``alpha ⊕ beta``: the suffix of ``beta`` after the longest common prefix.

    Args:
        alpha (BitString): The left operand
        beta (BitString): The right operand; its suffix is returned

    Returns:
        BitString: ``beta[j:]`` where ``j`` is the length of the common prefix

    Raises:
        InvalidInputError: If one operand is a prefix of the other
    """
    common = min(len(alpha), len(beta))
    if common:
        difference = alpha[:common] ^ beta[:common]
        split = difference.find(1)
    else:
        split = -1
    if split < 0:
        raise InvalidInputError(
            f"{alpha.to01()!r} and {beta.to01()!r} are not prefix-free (one is a prefix of the other)"
        )
    return frozenbitarray(beta[split:])


def encode_shifted(x: int, a: int, universe_size: int) -> BitString:
    """
    Encode ``x`` as the ``log u``-bit big-endian representation of ``(x + a) mod u``.

    Args:
        x (int): Element in ``[0, u)``
        a (int): Shift in ``[0, u)``
        universe_size (int): Power-of-two universe size ``u``

    Returns:
        BitString: The fixed-length codeword (empty when ``u == 1``)

    Raises:
        InvalidInputError: If ``u`` is not a power of two or ``x``/``a`` fall outside ``[0, u)``
    """
    width = universe_bits(universe_size)
    if not 0 <= x < universe_size:
        raise InvalidInputError(f"element {x} outside universe [0, {universe_size})")
    if not 0 <= a < universe_size:
        raise InvalidInputError(f"shift {a} outside [0, {universe_size})")
    if width == 0:
        return frozenbitarray(endian="big")
    return frozenbitarray(int2ba((x + a) % universe_size, length=width, endian="big"))


def shifted_encoder(a: int, universe_size: int) -> Encoder:
    """Returns the encoding function ``x -> encode_shifted(x, a, u)``."""
    universe_bits(universe_size)

    def encode(x: int) -> BitString:
        return encode_shifted(x, a, universe_size)

    return encode


def trie_measure_of_codes(codes: Sequence[BitString]) -> int:
    """
    Number of edges of the binary trie packing ``codes``.

    Args:
        codes: Nonempty, lexicographically sorted, pairwise prefix-free codewords

    Returns:
        int: ``|c_1| + sum(|c_{j-1} ⊕ c_j|)``

    Raises:
        InvalidInputError: If the list is empty, unsorted or not prefix-free
    """
    if not codes:
        raise InvalidInputError("the trie measure is defined for nonempty code lists only")
    total = len(codes[0])
    for previous, current in zip(codes, codes[1:]):
        if previous.to01() >= current.to01():
            raise InvalidInputError(
                f"codes are not strictly sorted: {previous.to01()!r} before {current.to01()!r}"
            )
        total += len(suffix_after_lcp(previous, current))
    return total


def _encode_all(encoder: Encoder, elements: Iterable[int]):
    return sorted((encoder(x) for x in elements), key=lambda code: code.to01())


def trie_measure_of_sequence(enc: Union["CodeTree", Encoder], seq: SetSequence) -> int:
    """
    Sum of the trie measures of every encoded set; empty sets contribute 0.

    Args:
        enc: Either a ``CodeTree`` (its root-to-leaf paths are the codewords)
             or a function mapping an element to its codeword
        seq (SetSequence): The sets to encode

    Returns:
        int: ``trie(enc(S_1)) + ... + trie(enc(S_n))``

    Raises:
        InvalidInputError: If an element is outside the encoding's domain
    """
    from backend.code_tree import CodeTree

    encoder = enc.encoder() if isinstance(enc, CodeTree) else enc
    return sum(trie_measure_of_codes(_encode_all(encoder, elements)) for elements in seq.nonempty_sets)
