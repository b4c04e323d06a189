import json
from typing import Any, Dict, Iterable

from backend.errors import DatasetParseError, ResourceLimitError, VerificationError
from backend.optimal_shift import ShiftOptimum, ShiftProfile
from backend.resource_limits import LimitCheckResult, LimitType
from backend.verifier import CheckStatus, VerificationReport


class UIMessageHandler:
    """Handles formatting of user-facing messages and command output"""

    @staticmethod
    def format_json(payload: Dict[str, Any]) -> str:
        """Format a result dictionary as indented JSON"""
        return json.dumps(payload, indent=2)

    @staticmethod
    def format_profile_tsv(dataset: str, profile: ShiftProfile, optimum: ShiftOptimum) -> str:
        """Format a shift profile as TSV, the optimum in leading comment lines"""
        lines = [
            f"# dataset={dataset}",
            f"# universe_size={len(profile)}",
            f"# opt_shift_arg={optimum.shift}",
            f"# opt_shift={optimum.cost}",
            "a\tcost",
        ]
        lines.extend(f"{a}\t{cost}" for a, cost in enumerate(profile.tolist()))
        return "\n".join(lines)

    @staticmethod
    def format_limit_error(error: ResourceLimitError) -> str:
        """Format resource cap error message"""
        return (f"⛔ Universe of {error.requested} positions exceeds the cap of {error.limit}.\n"
                f"*💡 Tip: the ordered optimizers read their cap from TRIE_MEASURE_MAX_U and the "
                f"shift arrays from TRIE_MEASURE_MAX_ARRAY_U (opt-shift --backend dag has no cap); "
                f"oracle caps cannot be raised.*")

    @staticmethod
    def format_limit_warning(result: LimitCheckResult) -> str:
        """Format a non-fatal size warning"""
        if result.limit_type == LimitType.WARNING:
            return (f"⏰ Universe of {result.requested} positions is above {result.limit}; "
                    f"the cubic dynamic program may take a while")
        return ""

    @staticmethod
    def format_warnings(warnings: Iterable[str]) -> str:
        """Format analyzer warnings, one per line"""
        return "\n".join(f"⚠️ {warning}" for warning in warnings)

    @staticmethod
    def format_verification_summary(report: VerificationReport) -> str:
        """Format one line per check followed by a totals line"""
        lines = [f"{outcome.status.value} {outcome.name}: {outcome.detail}" for outcome in report.outcomes]
        totals = (f"{report.count(CheckStatus.PASSED)} passed, {report.count(CheckStatus.FAILED)} failed, "
                  f"{report.count(CheckStatus.SKIPPED)} skipped")
        verdict = "✅ All checks passed" if report.passed else "❌ Verification failed"
        lines.append(f"{verdict} for {report.dataset} ({totals})")
        failure = report.first_failure
        if failure is not None:
            lines.append(f"First counterexample: {failure.name}: {failure.detail}")
        return "\n".join(lines)

    @staticmethod
    def format_error(error: Exception) -> str:
        """Format error message for terminal display"""
        if isinstance(error, ResourceLimitError):
            return UIMessageHandler.format_limit_error(error)
        if isinstance(error, VerificationError):
            detail = f" ({error.counterexample})" if error.counterexample else ""
            return f"❌ Verification failed: {error}{detail}"
        if isinstance(error, DatasetParseError):
            return f"Error parsing dataset: {error}"
        return f"Error: {error}"
