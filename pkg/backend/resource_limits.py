import logging
import os
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from backend.errors import InvalidInputError, ResourceLimitError

DEFAULT_MAX_U = 4096
DEFAULT_WARN_U = 1024
DEFAULT_MAX_ARRAY_U = 1 << 24
DEFAULT_LOG_LEVEL = "WARNING"

# Oracle caps are fixed: brute force beyond them is never useful.
ORACLE_MAX_U = 256
ENUMERATION_MAX_U = 10

logger = logging.getLogger(__name__)


class LimitType(Enum):
    """
    Enumeration of the outcomes of a size check.

    ``WARNING`` still allows the computation; the caps refuse it.
    """
    NONE = "none"
    WARNING = "warning"
    ORDERED_CAP = "ordered_cap"
    ORACLE_CAP = "oracle_cap"


@dataclass
class LimitCheckResult:
    """
    Result of a size check.

    Attributes:
        valid (bool): Whether the computation may run
        limit_type (LimitType): Which threshold was crossed, if any
        requested (int): The universe size asked for
        limit (int): The threshold it was compared with
    """
    valid: bool
    limit_type: LimitType
    requested: int
    limit: int

    def raise_if_invalid(self):
        if not self.valid:
            raise ResourceLimitError(
                f"universe {self.requested} exceeds the {self.limit_type.value.replace('_', ' ')} of {self.limit}",
                limit=self.limit,
                requested=self.requested,
            )


def _read_positive_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInputError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise InvalidInputError(f"{name} must be positive, got {value}")
    return value


class ResourceLimits:
    """
    Size caps for the cubic optimizers, the shift arrays and the brute-force oracles.

    Attributes:
        max_universe (int): Largest densified universe the ordered optimizers accept
        warn_universe (int): Above this the ordered optimizers run with a warning
        max_array_universe (int): Largest universe the shift profile and the
            difference-array backend accept
        log_level (str): Root log level name for the command line
    """
    def __init__(self):
        # Configuration from environment variables with defaults
        self.max_universe = _read_positive_int("TRIE_MEASURE_MAX_U", DEFAULT_MAX_U)
        self.warn_universe = _read_positive_int("TRIE_MEASURE_WARN_U", DEFAULT_WARN_U)
        self.max_array_universe = _read_positive_int("TRIE_MEASURE_MAX_ARRAY_U", DEFAULT_MAX_ARRAY_U)
        self.log_level = os.getenv("TRIE_MEASURE_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()

    def check_ordered(self, universe_size: int) -> LimitCheckResult:
        """
        Check a universe size against the ordered optimizer thresholds.

        Args:
            universe_size (int): Densified universe size

        Returns:
            LimitCheckResult: ``ORDERED_CAP`` when refused, ``WARNING`` when
            slow, ``NONE`` otherwise
        """
        if universe_size > self.max_universe:
            return LimitCheckResult(False, LimitType.ORDERED_CAP, universe_size, self.max_universe)
        if universe_size > self.warn_universe:
            logger.info(f"Universe {universe_size} is above {self.warn_universe}; the cubic DP will be slow")
            return LimitCheckResult(True, LimitType.WARNING, universe_size, self.warn_universe)
        return LimitCheckResult(True, LimitType.NONE, universe_size, self.max_universe)

    @staticmethod
    def check_oracle(universe_size: int, cap: Optional[int] = None,
                     hard_limit: int = ORACLE_MAX_U) -> LimitCheckResult:
        """
        Check a universe size against an oracle cap.

        Args:
            universe_size (int): Universe the oracle would enumerate
            cap (int, optional): A tighter cap; values above ``hard_limit`` are ignored
            hard_limit (int): The oracle's own ceiling

        Returns:
            LimitCheckResult: ``ORACLE_CAP`` when refused, ``NONE`` otherwise
        """
        limit = hard_limit if cap is None else min(cap, hard_limit)
        if universe_size > limit:
            return LimitCheckResult(False, LimitType.ORACLE_CAP, universe_size, limit)
        return LimitCheckResult(True, LimitType.NONE, universe_size, limit)
