"""Bit tricks on universe sizes and positions."""

from backend.errors import InvalidInputError


def is_power_of_two(value: int) -> bool:
    return value > 0 and value & (value - 1) == 0


def power_of_two_above(value: int) -> int:
    """Returns the smallest power of two strictly greater than ``value``.

    Args:
        value: A nonnegative integer, typically the largest element of a set.

    Returns:
        The smallest ``2**k`` with ``2**k > value``.
    """
    if value < 0:
        return 1
    return 1 << value.bit_length()


def universe_bits(universe_size: int) -> int:
    """Returns ``log u`` for a power-of-two universe size.

    Raises:
        InvalidInputError: If ``universe_size`` is not a power of two.
    """
    if not is_power_of_two(universe_size):
        raise InvalidInputError(f"universe size {universe_size} is not a power of two")
    return universe_size.bit_length() - 1


def trailing_zero_bits(value: int) -> int:
    """Returns the number of trailing zero bits of a positive integer."""
    return (value & -value).bit_length() - 1
