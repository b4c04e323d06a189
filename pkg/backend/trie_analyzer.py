import logging
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

from backend.code_tree import CodeTree
from backend.dataset import DatasetFile
from backend.encoding import shifted_encoder, trie_measure_of_sequence
from backend.errors import InvalidInputError
from backend.optimal_shift import ShiftBackend, ShiftProfile, optimal_shift, shift_profile
from backend.ordered import optimal_ordered, optimal_shifted_ordered
from backend.resource_limits import LimitCheckResult, ResourceLimits
from backend.set_sequence import SetSequence, densify

logger = logging.getLogger(__name__)


def percentage(value: float, reference: float) -> float:
    """``100 * value / reference``, or 100.0 when the reference is 0."""
    if reference == 0:
        return 100.0
    return round(100.0 * value / reference, 2)


@dataclass
class MeasureResult:
    """
    Trie measure of a dataset under one given encoding.

    Attributes:
        dataset (str): Dataset name
        universe_size (int): Universe the encoding was applied over
        encoding (str): ``"shift"`` or ``"tree"``
        shift (int, optional): The shift, for shifted encodings
        trie_measure (int): Sum of the per-set trie measures
    """
    dataset: str
    universe_size: int
    encoding: str
    shift: Optional[int]
    trie_measure: int

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class ShiftResult:
    """
    Best shifted encoding of a dataset.

    Attributes:
        dataset (str): Dataset name
        universe_size (int): Power-of-two universe
        backend (str): Counter backend that produced the result
        opt_shift_arg (int): Smallest optimal shift
        opt_shift (int): Its trie measure
        profile (ShiftProfile, optional): Every shift's measure, when requested
    """
    dataset: str
    universe_size: int
    backend: str
    opt_shift_arg: int
    opt_shift: int
    profile: Optional[ShiftProfile] = None

    def to_dict(self) -> Dict:
        return {
            "dataset": self.dataset,
            "universe_size": self.universe_size,
            "backend": self.backend,
            "opt_shift_arg": self.opt_shift_arg,
            "opt_shift": self.opt_shift,
        }


@dataclass
class OrderedResult:
    """
    Best ordered or shifted-ordered encoding of a dataset.

    Attributes:
        dataset (str): Dataset name
        universe_size (int): Densified universe the tree was built over
        cost (int): Trie measure of the encoding
        tree (str): Parenthesized tree over the original element values
        offset (int, optional): Rotation of the densified universe, shifted variant only
    """
    dataset: str
    universe_size: int
    cost: int
    tree: str
    offset: Optional[int] = None

    def to_dict(self) -> Dict:
        payload = {
            "dataset": self.dataset,
            "universe_size": self.universe_size,
            "cost": self.cost,
            "tree": self.tree,
        }
        if self.offset is not None:
            payload["offset"] = self.offset
        return payload


@dataclass
class Report:
    """
    Statistics of one dataset across the encoding families.

    Attributes:
        dataset (str): Dataset name
        universe_size (int): ``u`` used for the shifted encodings
        total_size (int): ``N``
        num_sets (int): ``n``
        average_set_size (float): ``N / n``, 0 without sets
        opt_shift (int): Best shifted measure
        opt_shift_arg (int): Smallest shift reaching it
        avg_shift (float): Mean measure over all shifts
        worst_shift (int): Worst shifted measure
        worst_shift_arg (int): Smallest shift reaching it
        opt_over_avg_pct (float): ``100 * opt / avg``
        opt_over_worst_pct (float): ``100 * opt / worst``
        opt_ordered (int, optional): Best ordered measure
        opt_shifted_ordered (int, optional): Best shifted-ordered measure
        shifted_ordered_offset (int, optional): Its rotation of the densified universe
        opt_shift_over_opt_ord_pct (float, optional): ``100 * opt_shift / opt_shifted_ordered``
        ordered_skipped (str, optional): Why the ordered phases did not run
        timings (dict): Wall-clock seconds per phase
    """
    dataset: str
    universe_size: int
    total_size: int
    num_sets: int
    average_set_size: float
    opt_shift: int
    opt_shift_arg: int
    avg_shift: float
    worst_shift: int
    worst_shift_arg: int
    opt_over_avg_pct: float
    opt_over_worst_pct: float
    opt_ordered: Optional[int] = None
    opt_shifted_ordered: Optional[int] = None
    shifted_ordered_offset: Optional[int] = None
    opt_shift_over_opt_ord_pct: Optional[float] = None
    ordered_skipped: Optional[str] = None
    timings: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return asdict(self)


class TrieMeasureAnalyzer:
    """
    Main service behind every command.

    Turns a parsed dataset into a validated sequence, runs the requested
    optimizers under the configured size limits, and returns plain result
    objects for the UI layer to format.

    Attributes:
        limits (ResourceLimits): Size caps read from the environment
        timings (dict): Seconds spent per phase during the last call
        warnings (list): Non-fatal conditions noticed during the last call
        limit_check (LimitCheckResult, optional): Last ordered size check
    """
    def __init__(self, limits: Optional[ResourceLimits] = None):
        """
        Initialize the analyzer.

        Args:
            limits (ResourceLimits, optional): Caps to enforce; read from the
                environment when omitted
        """
        self.limits = limits or ResourceLimits()
        self.timings: Dict[str, float] = {}
        self.warnings: List[str] = []
        self.limit_check: Optional[LimitCheckResult] = None

    def _reset(self):
        self.timings = {}
        self.warnings = []
        self.limit_check = None

    @contextmanager
    def _phase(self, name: str):
        started = time.perf_counter()
        yield
        elapsed = time.perf_counter() - started
        self.timings[name] = round(elapsed, 6)
        logger.info(f"Phase {name} finished in {elapsed:.3f}s")

    def _warn(self, message: str):
        logger.info(message)
        self.warnings.append(message)

    def measure(self, dataset: DatasetFile, shift: Optional[int] = None,
                tree: Optional[CodeTree] = None) -> MeasureResult:
        """
        Trie measure of the dataset under a shifted encoding or a code tree.

        Args:
            dataset (DatasetFile): Parsed input
            shift (int, optional): Shift of the fixed-length encoding
            tree (CodeTree, optional): Code tree whose leaves cover every used element

        Returns:
            MeasureResult: The measure, 0 for a dataset without elements

        Raises:
            InvalidInputError: If neither or both encodings are given, the shift
                is out of range, or an element is missing from the tree
        """
        self._reset()
        if (shift is None) == (tree is None):
            raise InvalidInputError("give exactly one of a shift or a code tree")
        seq = dataset.to_set_sequence()
        if seq.is_empty():
            self._warn(f"{dataset.name} holds no elements; its trie measure is 0")

        with self._phase("measure"):
            if tree is not None:
                value = trie_measure_of_sequence(tree, seq)
                return MeasureResult(dataset.name, seq.universe_size, "tree", None, value)
            seq.require_power_of_two()
            if not 0 <= shift < seq.universe_size:
                raise InvalidInputError(f"shift {shift} outside [0, {seq.universe_size})")
            value = trie_measure_of_sequence(shifted_encoder(shift, seq.universe_size), seq)
        return MeasureResult(dataset.name, seq.universe_size, "shift", shift, value)

    def opt_shift(self, dataset: DatasetFile, backend: ShiftBackend = ShiftBackend.ARRAY,
                  with_profile: bool = False) -> ShiftResult:
        """
        Best shifted encoding, optionally with the whole profile.

        Raises:
            InvalidInputError: If the profile is requested from the DAG backend,
                ``u`` is not a power of two, or every set is empty
            ResourceLimitError: If the array backend would exceed the array cap
        """
        self._reset()
        if with_profile and backend is not ShiftBackend.ARRAY:
            raise InvalidInputError("the dag backend does not materialize the profile; use --backend array")
        seq = dataset.to_set_sequence()
        with self._phase("opt_shift"):
            if with_profile:
                profile = shift_profile(seq, max_universe=self.limits.max_array_universe)
                best = profile.optimum()
            else:
                profile = None
                best = optimal_shift(seq, backend, max_universe=self.limits.max_array_universe)
        return ShiftResult(dataset.name, seq.universe_size, backend.value, best.shift, best.cost, profile)

    def _check_ordered_limits(self, universe_size: int) -> LimitCheckResult:
        self.limit_check = self.limits.check_ordered(universe_size)
        return self.limit_check

    def opt_ordered(self, dataset: DatasetFile, shifted: bool = False) -> OrderedResult:
        """
        Best ordered (or shifted-ordered) encoding over the densified universe.

        Returns:
            OrderedResult: Cost and tree; tree leaves carry original element values

        Raises:
            InvalidInputError: If every set is empty
            ResourceLimitError: If the densified universe exceeds the configured cap
        """
        self._reset()
        seq = dataset.to_set_sequence()
        with self._phase("densify"):
            occ, mapping = densify(seq)
        check = self._check_ordered_limits(occ.universe_size)
        check.raise_if_invalid()
        elements = sorted(mapping, key=mapping.get)

        with self._phase("shifted_ordered" if shifted else "ordered"):
            if shifted:
                encoding = optimal_shifted_ordered(occ, max_universe=self.limits.max_universe)
                offset = encoding.offset
            else:
                encoding = optimal_ordered(occ, max_universe=self.limits.max_universe)
                offset = None
        tree = encoding.tree.relabel(lambda position: elements[position])
        return OrderedResult(dataset.name, occ.universe_size, encoding.cost, tree.to_text(), offset)

    def stats(self, dataset: DatasetFile) -> Report:
        """
        Full statistics: shift profile summary plus ordered optima when affordable.

        Returns:
            Report: Every applicable statistic and per-phase timings

        Raises:
            InvalidInputError: If ``u`` is not a power of two or every set is empty
            ResourceLimitError: If the shift profile would exceed the array cap
        """
        self._reset()
        seq = dataset.to_set_sequence()
        with self._phase("shift_profile"):
            profile = shift_profile(seq, max_universe=self.limits.max_array_universe)
        best, worst, average = profile.optimum(), profile.worst(), profile.average()

        report = Report(
            dataset=dataset.name,
            universe_size=seq.universe_size,
            total_size=seq.total_size,
            num_sets=seq.num_sets,
            average_set_size=round(seq.total_size / seq.num_sets, 4) if seq.num_sets else 0.0,
            opt_shift=best.cost,
            opt_shift_arg=best.shift,
            avg_shift=round(average, 4),
            worst_shift=worst.cost,
            worst_shift_arg=worst.shift,
            opt_over_avg_pct=percentage(best.cost, average),
            opt_over_worst_pct=percentage(best.cost, worst.cost),
        )
        self._add_ordered_statistics(report, seq)
        report.timings = dict(self.timings)
        return report

    def _add_ordered_statistics(self, report: Report, seq: SetSequence):
        with self._phase("densify"):
            occ, _ = densify(seq)
        check = self._check_ordered_limits(occ.universe_size)
        if not check.valid:
            report.ordered_skipped = f"densified universe {occ.universe_size} exceeds the cap {check.limit}"
            self._warn(f"Skipping ordered statistics: {report.ordered_skipped}")
            return

        with self._phase("ordered"):
            report.opt_ordered = optimal_ordered(occ).cost
        with self._phase("shifted_ordered"):
            shifted = optimal_shifted_ordered(occ)
        report.opt_shifted_ordered = shifted.cost
        report.shifted_ordered_offset = shifted.offset
        report.opt_shift_over_opt_ord_pct = percentage(report.opt_shift, shifted.cost)
