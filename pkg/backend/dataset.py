import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

from backend.errors import DatasetParseError, InvalidInputError
from backend.set_sequence import SetSequence

HEADER_PATTERN = re.compile(r"#\s*u\s*=\s*(\S*)\s*$")
COMMENT_PREFIX = "#"

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DatasetFile:
    """
    Parsed content of a set-sequence text file.

    One set per line, whitespace-separated nonnegative integers; a blank line
    is an empty set. The first line may be a ``#u=<value>`` header; any other
    line starting with ``#`` is a comment.

    Attributes:
        name (str): Display name, usually the file name
        sets (tuple): Deduplicated, sorted sets in file order
        declared_universe (int, optional): Value of the ``#u=`` header, if present
    """
    name: str
    sets: Tuple[Tuple[int, ...], ...]
    declared_universe: Optional[int] = None

    @property
    def num_sets(self) -> int:
        return len(self.sets)

    @property
    def total_size(self) -> int:
        return sum(len(s) for s in self.sets)

    def to_set_sequence(self) -> SetSequence:
        """
        Build the validated sequence.

        Returns:
            SetSequence: Over the declared universe, or the smallest power of
            two above the largest element when there is no header
        """
        return SetSequence.from_iterables(self.sets, universe_size=self.declared_universe)


def _parse_header(value: str, line_number: int) -> int:
    if not (value.isascii() and value.isdigit()) or int(value) < 1:
        raise DatasetParseError(f"universe header needs a positive integer, got {value!r}", line_number)
    return int(value)


def _parse_set(line: str, line_number: int) -> Tuple[int, ...]:
    elements = set()
    for token in line.split():
        if not (token.isascii() and token.isdigit()):
            raise DatasetParseError(f"{token!r} is not a nonnegative integer", line_number)
        elements.add(int(token))
    return tuple(sorted(elements))


def _split_lines(text: str) -> List[str]:
    # Only "\n" ends a line, with at most one "\r" before it.
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return [line[:-1] if line.endswith("\r") else line for line in lines]


def parse_dataset(text: str, name: str = "<input>") -> DatasetFile:
    """
    Parse dataset text.

    Args:
        text (str): File content; ``\\n`` or ``\\r\\n`` line endings
        name (str): Display name carried into reports

    Returns:
        DatasetFile: The parsed file

    Raises:
        DatasetParseError: On a malformed token or header, or an element
            outside the declared universe; the message names the line
    """
    declared = None
    sets = []
    for line_number, line in enumerate(_split_lines(text), start=1):
        stripped = line.strip()
        if stripped.startswith(COMMENT_PREFIX):
            header = HEADER_PATTERN.match(stripped)
            if header and line_number == 1:
                declared = _parse_header(header.group(1), line_number)
            elif header:
                logger.warning(f"{name} line {line_number}: universe header ignored, it must be the first line")
            continue
        elements = _parse_set(stripped, line_number)
        if declared is not None and elements and elements[-1] >= declared:
            raise DatasetParseError(f"element {elements[-1]} outside declared universe [0, {declared})", line_number)
        sets.append(elements)

    dataset = DatasetFile(name=name, sets=tuple(sets), declared_universe=declared)
    logger.debug(f"Parsed {name}: {dataset.num_sets} sets, {dataset.total_size} elements, u={declared}")
    return dataset


def load_dataset(path: Union[str, Path]) -> DatasetFile:
    """
    Read and parse a dataset file.

    Raises:
        InvalidInputError: If the file cannot be read
        DatasetParseError: If the content is malformed
    """
    path = Path(path)
    try:
        text = path.read_bytes().decode("utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InvalidInputError(f"cannot read {path}: {e}") from e
    return parse_dataset(text, name=path.name)


def format_dataset(seq: SetSequence) -> str:
    """Serialize a sequence with an explicit ``#u=`` header, one set per line."""
    lines = [f"#u={seq.universe_size}"]
    lines.extend(" ".join(str(x) for x in elements) for elements in seq.sets)
    return "\n".join(lines) + "\n"
