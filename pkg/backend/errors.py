class TrieMeasureError(Exception):
    """Base class for every error raised by the backend."""


class InvalidInputError(TrieMeasureError, ValueError):
    """
    Raised when an input violates the preconditions of an operation.

    Covers malformed bit strings, unsorted or non prefix-free codes,
    out-of-range shifts, label mismatches between a tree and a universe,
    universes that are not powers of two and sequences with no elements.
    """


class DatasetParseError(InvalidInputError):
    """
    Raised when a dataset file cannot be parsed.

    Attributes:
        line_number (int): 1-based line of the offending input, 0 when the
                           error is not tied to a single line
    """

    def __init__(self, message, line_number=0):
        self.line_number = line_number
        prefix = f"line {line_number}: " if line_number else ""
        super().__init__(f"{prefix}{message}")


class ResourceLimitError(TrieMeasureError):
    """
    Raised when a computation would exceed a configured size cap.

    Attributes:
        limit (int): The cap that was exceeded
        requested (int): The size that was asked for
    """

    def __init__(self, message, limit, requested):
        self.limit = limit
        self.requested = requested
        super().__init__(message)


class VerificationError(TrieMeasureError):
    """
    Raised when a cross-check between two computations disagrees.

    Attributes:
        counterexample (str): Human-readable description of the first mismatch
    """

    def __init__(self, message, counterexample=""):
        self.counterexample = counterexample
        super().__init__(message)
