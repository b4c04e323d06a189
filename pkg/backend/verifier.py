"""Cross-checks of every fast computation against its brute-force reference."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional

import numpy as np

from backend.bits import is_power_of_two, power_of_two_above
from backend.code_tree import CodeTree, tree_cost
from backend.encoding import shifted_encoder, trie_measure_of_sequence
from backend.errors import TrieMeasureError, VerificationError
from backend.optimal_shift import ShiftBackend, build_shift_counter, consecutive_pairs, optimal_shift, shift_profile
from backend.oracle import (
    brute_level_cost,
    brute_ordered_optimum,
    brute_shift_profile,
    brute_shifted_ordered_optimum,
    brute_trie_measure,
    brute_union_matrix,
    interval_depth_measure,
    ruler_decomposition_measure,
)
from backend.ordered import compute_union_matrix, optimal_ordered, optimal_shifted_ordered
from backend.resource_limits import ENUMERATION_MAX_U, ResourceLimits
from backend.ruler import level_intervals
from backend.set_sequence import OccurrenceSets, SetSequence, densify
from backend.shift_counter import DagSegTree, DiffArrayCounter

logger = logging.getLogger(__name__)


class CheckStatus(Enum):
    PASSED = "PASS"
    FAILED = "FAIL"
    SKIPPED = "SKIP"


@dataclass
class CheckOutcome:
    """
    Result of one cross-check.

    Attributes:
        name (str): Short identifier of the check
        status (CheckStatus): Outcome
        detail (str): Counterexample on failure, reason on skip, summary on success
    """
    name: str
    status: CheckStatus
    detail: str = ""


@dataclass
class VerificationReport:
    """
    Every outcome of a verification run, in execution order.

    Attributes:
        dataset (str): Dataset name
        outcomes (list): One ``CheckOutcome`` per check
    """
    dataset: str
    outcomes: List[CheckOutcome] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(outcome.status is not CheckStatus.FAILED for outcome in self.outcomes)

    @property
    def first_failure(self) -> Optional[CheckOutcome]:
        return next((o for o in self.outcomes if o.status is CheckStatus.FAILED), None)

    def count(self, status: CheckStatus) -> int:
        return sum(1 for outcome in self.outcomes if outcome.status is status)


class ConsistencyVerifier:
    """
    Runs the oracle-versus-fast checks on one sequence.

    Shift checks need a power-of-two universe and at least one element;
    exhaustive tree checks need a densified universe of at most
    ``ENUMERATION_MAX_U`` positions. Checks whose preconditions fail are
    reported as skipped.

    Attributes:
        seq (SetSequence): The sequence under test
        name (str): Dataset name carried into the report
    """
    def __init__(self, seq: SetSequence, name: str = "<input>", max_universe: Optional[int] = None):
        """
        Initialize the verifier.

        Args:
            seq (SetSequence): The sequence under test
            name (str): Dataset name for the report
            max_universe (int, optional): Tighter oracle cap; cannot raise the built-in one

        Raises:
            ResourceLimitError: If the universe exceeds the oracle cap
        """
        ResourceLimits.check_oracle(seq.universe_size, max_universe).raise_if_invalid()
        self.seq = seq
        self.name = name
        self._profile = None
        self._dense: Optional[OccurrenceSets] = None
        self._ordered = None
        self._shifted_ordered = None

    def run(self) -> VerificationReport:
        """
        Execute every check.

        Returns:
            VerificationReport: All outcomes; ``passed`` is False on any mismatch
        """
        report = VerificationReport(dataset=self.name)
        shiftable = self._shift_skip_reason()
        orderable = None if not self.seq.is_empty() else "every set is empty"

        checks = [
            ("shift_profile", self._check_shift_profile, shiftable),
            ("backend_agreement", self._check_backend_agreement, shiftable),
            ("counter_periodicity", self._check_counter_periodicity, shiftable),
            ("interval_membership", self._check_interval_membership, shiftable),
            ("level_decomposition", self._check_level_decomposition, shiftable),
            ("oracle_self_consistency", self._check_oracle_self_consistency, shiftable),
            ("union_matrix", self._check_union_matrix, orderable),
            ("ordered_dp", self._check_ordered_dp, self._enumeration_skip_reason(orderable)),
            ("shifted_ordered_dp", self._check_shifted_ordered_dp, self._enumeration_skip_reason(orderable)),
            ("tree_reconstruction", self._check_tree_reconstruction, orderable),
            ("dominance", self._check_dominance, orderable),
        ]
        for name, check, skip_reason in checks:
            report.outcomes.append(self._run_check(name, check, skip_reason))
        logger.info(
            f"Verification of {self.name}: {report.count(CheckStatus.PASSED)} passed, "
            f"{report.count(CheckStatus.FAILED)} failed, {report.count(CheckStatus.SKIPPED)} skipped"
        )
        return report

    def _run_check(self, name: str, check: Callable[[], str], skip_reason: Optional[str]) -> CheckOutcome:
        if skip_reason is not None:
            return CheckOutcome(name, CheckStatus.SKIPPED, skip_reason)
        try:
            detail = check()
        except VerificationError as e:
            detail = f"{e}: {e.counterexample}" if e.counterexample else str(e)
            logger.warning(f"Check {name} failed: {detail}")
            return CheckOutcome(name, CheckStatus.FAILED, detail)
        except TrieMeasureError as e:
            logger.warning(f"Check {name} raised: {e}")
            return CheckOutcome(name, CheckStatus.FAILED, f"unexpected error: {e}")
        return CheckOutcome(name, CheckStatus.PASSED, detail)

    def _shift_skip_reason(self) -> Optional[str]:
        if not is_power_of_two(self.seq.universe_size):
            return f"universe {self.seq.universe_size} is not a power of two"
        if self.seq.is_empty():
            return "every set is empty"
        return None

    def _enumeration_skip_reason(self, orderable: Optional[str]) -> Optional[str]:
        if orderable is not None:
            return orderable
        size = self._dense_occurrences().universe_size
        if size > ENUMERATION_MAX_U:
            return f"densified universe {size} exceeds the enumeration limit {ENUMERATION_MAX_U}"
        return None

    def _dense_occurrences(self) -> OccurrenceSets:
        if self._dense is None:
            self._dense, _ = densify(self.seq)
        return self._dense

    def _fast_profile(self):
        if self._profile is None:
            self._profile = shift_profile(self.seq)
        return self._profile

    def _fast_ordered(self):
        if self._ordered is None:
            self._ordered = optimal_ordered(self._dense_occurrences())
        return self._ordered

    def _fast_shifted_ordered(self):
        if self._shifted_ordered is None:
            self._shifted_ordered = optimal_shifted_ordered(self._dense_occurrences())
        return self._shifted_ordered

    def _check_shift_profile(self) -> str:
        fast = self._fast_profile().tolist()
        brute = brute_shift_profile(self.seq)
        for a, (mine, reference) in enumerate(zip(fast, brute)):
            if mine != reference:
                raise VerificationError("shift profile differs from explicit tries",
                                        counterexample=f"a={a}: fast={mine}, brute={reference}")
        return f"{len(fast)} shifts agree"

    def _check_backend_agreement(self) -> str:
        array = optimal_shift(self.seq, ShiftBackend.ARRAY)
        dag = optimal_shift(self.seq, ShiftBackend.DAG)
        if array != dag:
            raise VerificationError("backends disagree", counterexample=f"array={tuple(array)}, dag={tuple(dag)}")
        if array != self._fast_profile().optimum():
            raise VerificationError("optimum is not the leftmost minimum of the profile",
                                    counterexample=f"optimum={tuple(array)}")
        counter = build_shift_counter(self.seq, DagSegTree())
        mismatches = counter.reference_count_mismatches()
        if mismatches:
            node, expected, stored = mismatches[0]
            raise VerificationError("stale DAG reference count",
                                    counterexample=f"node {node}: in-degree {expected}, ref {stored}")
        if not np.array_equal(counter.values(), build_shift_counter(self.seq, DiffArrayCounter()).values()):
            raise VerificationError("DAG expansion differs from the difference array")
        return f"a*={array.shift}, cost={array.cost}, {counter.node_count} DAG nodes"

    def _check_counter_periodicity(self) -> str:
        failures = []

        def record(level: int, counter):
            values = counter.values()
            half = len(values) // 2
            if half and not np.array_equal(values[:half], values[half:]):
                failures.append(level)

        build_shift_counter(self.seq, DiffArrayCounter(), on_level=record)
        if failures:
            raise VerificationError("level array is not periodic", counterexample=f"level {failures[0]}")
        return f"{self.seq.log_universe} levels periodic"

    def _check_interval_membership(self) -> str:
        u = self.seq.universe_size
        lefts, rights = consecutive_pairs(self.seq)
        checked = 0
        for x, y in zip(lefts.tolist(), rights.tolist()):
            for k in range(1, self.seq.log_universe + 1):
                intervals = level_intervals(x, y, k, u)
                for a in range(intervals.period):
                    if intervals.contains(a) != bool(brute_level_cost(x, y, k, a, u)):
                        raise VerificationError("interval membership differs from the level cost",
                                                counterexample=f"pair ({x},{y}), level {k}, a={a}")
                    checked += 1
        return f"{checked} memberships agree"

    def _check_level_decomposition(self) -> str:
        profile = self._fast_profile()
        for a in range(self.seq.universe_size):
            by_levels = ruler_decomposition_measure(self.seq, a)
            by_depth = interval_depth_measure(self.seq, a)
            if not profile[a] == by_levels == by_depth:
                raise VerificationError("level decomposition differs from the profile",
                                        counterexample=f"a={a}: profile={profile[a]}, levels={by_levels}, depth={by_depth}")
        return "levels and depths match every shift"

    def _check_oracle_self_consistency(self) -> str:
        u = self.seq.universe_size
        for a in range(u):
            direct = trie_measure_of_sequence(shifted_encoder(a, u), self.seq)
            explicit = brute_trie_measure(self.seq, a)
            if direct != explicit:
                raise VerificationError("sorted-code measure differs from explicit tries",
                                        counterexample=f"a={a}: codes={direct}, trie={explicit}")
        return f"{u} shifts agree"

    def _check_union_matrix(self) -> str:
        occ = self._dense_occurrences()
        fast = compute_union_matrix(occ)
        brute = brute_union_matrix(occ)
        if not np.array_equal(fast.values, brute):
            x, y = (int(i) for i in np.argwhere(fast.values != brute)[0])
            raise VerificationError("union matrix differs from explicit unions",
                                    counterexample=f"a[{x},{y}]: fast={fast[x, y]}, brute={int(brute[x, y])}")
        if not fast.is_monotone():
            raise VerificationError("union matrix is not monotone")
        size = occ.universe_size
        doubled = compute_union_matrix(occ.doubled()).values
        if not np.array_equal(doubled[:size, :size], doubled[size:, size:]):
            raise VerificationError("doubled union matrix is not shift invariant")
        return f"{size * (size + 1) // 2} cells agree"

    def _check_ordered_dp(self) -> str:
        fast = self._fast_ordered()
        brute = brute_ordered_optimum(self._dense_occurrences())
        if fast.cost != brute.cost:
            raise VerificationError("ordered DP differs from exhaustive search",
                                    counterexample=f"dp={fast.cost}, exhaustive={brute.cost} ({brute.tree.to_text()})")
        return f"cost {fast.cost}"

    def _check_shifted_ordered_dp(self) -> str:
        fast = self._fast_shifted_ordered()
        brute = brute_shifted_ordered_optimum(self._dense_occurrences())
        if fast.cost != brute.cost:
            raise VerificationError("shifted-ordered DP differs from exhaustive search",
                                    counterexample=f"dp={fast.cost} at {fast.offset}, "
                                                   f"exhaustive={brute.cost} at {brute.offset}")
        return f"cost {fast.cost} at offset {fast.offset}"

    def _check_tree_reconstruction(self) -> str:
        occ = self._dense_occurrences()
        for label, encoding in (("ordered", self._fast_ordered()), ("shifted-ordered", self._fast_shifted_ordered())):
            rebuilt = tree_cost(encoding.tree, occ)
            if rebuilt != encoding.cost:
                raise VerificationError(f"{label} tree does not reproduce its cost",
                                        counterexample=f"tree {encoding.tree.to_text()}: {rebuilt} != {encoding.cost}")
            if CodeTree.parse(encoding.tree.to_text()) != encoding.tree:
                raise VerificationError(f"{label} tree does not survive serialization")
        if not self._fast_ordered().tree.is_ordered():
            raise VerificationError("ordered tree leaves are out of order")
        return "trees reproduce their costs"

    def _check_dominance(self) -> str:
        ordered = self._fast_ordered().cost
        shifted_ordered = self._fast_shifted_ordered().cost
        occ = self._dense_occurrences()
        padded = SetSequence(
            universe_size=power_of_two_above(occ.universe_size - 1),
            sets=occ.to_set_sequence().sets,
        )
        shifted = optimal_shift(padded).cost
        if shifted_ordered > min(ordered, shifted):
            raise VerificationError("shifted-ordered optimum is beaten",
                                    counterexample=f"shifted-ordered={shifted_ordered}, ordered={ordered}, shifted={shifted}")
        return f"{shifted_ordered} <= min({ordered}, {shifted})"
