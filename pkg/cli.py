"""
Command line for trie-measure statistics of set sequences.

Dataset files hold one set per line as whitespace-separated nonnegative
integers; a blank line is an empty set, an optional first line ``#u=<value>``
fixes the universe and other ``#`` lines are comments.

Output formats: JSON objects for results and reports, TSV (``a<TAB>cost``)
for shift profiles, and ``leaf | (T,T)`` for code trees, e.g. ``(0,(1,(2,3)))``.

Exit codes: 0 success, 1 invalid input, 2 verification failure, 3 size cap exceeded.
"""

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Optional

import typer
from dotenv import load_dotenv

from backend.code_tree import CodeTree
from backend.dataset import load_dataset
from backend.errors import InvalidInputError, ResourceLimitError, VerificationError
from backend.optimal_shift import ShiftBackend
from backend.resource_limits import LimitType, ResourceLimits
from backend.trie_analyzer import TrieMeasureAnalyzer
from backend.verifier import ConsistencyVerifier
from ui.message_handler import UIMessageHandler

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VERIFICATION_FAILED = 2
EXIT_RESOURCE_LIMIT = 3

# Load environment variables
load_dotenv()

app = typer.Typer(help=__doc__, add_completion=False, no_args_is_help=True)

DATASET_ARGUMENT = typer.Argument(..., help="Dataset file, one set per line")


@contextmanager
def exit_on_error():
    """Translate backend errors into a message on stderr and the matching exit code."""
    try:
        yield
    except ResourceLimitError as e:
        typer.echo(UIMessageHandler.format_error(e), err=True)
        raise typer.Exit(EXIT_RESOURCE_LIMIT)
    except VerificationError as e:
        typer.echo(UIMessageHandler.format_error(e), err=True)
        raise typer.Exit(EXIT_VERIFICATION_FAILED)
    except InvalidInputError as e:
        typer.echo(UIMessageHandler.format_error(e), err=True)
        raise typer.Exit(EXIT_INPUT_ERROR)


def _configure_logging(verbose: bool, limits: ResourceLimits):
    level = logging.DEBUG if verbose else logging.getLevelName(limits.log_level)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _analyzer() -> TrieMeasureAnalyzer:
    return TrieMeasureAnalyzer(ResourceLimits())


def _echo_warnings(analyzer: TrieMeasureAnalyzer):
    if analyzer.warnings:
        typer.echo(UIMessageHandler.format_warnings(analyzer.warnings), err=True)
    if analyzer.limit_check is not None and analyzer.limit_check.limit_type is LimitType.WARNING:
        typer.echo(UIMessageHandler.format_limit_warning(analyzer.limit_check), err=True)


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="Log every phase at DEBUG level")):
    """Trie measure of prefix-free encodings of set sequences."""
    with exit_on_error():
        _configure_logging(verbose, ResourceLimits())


@app.command()
def measure(
    dataset: Path = DATASET_ARGUMENT,
    shift: Optional[int] = typer.Option(None, "--shift", help="Shift a of the fixed-length encoding (x + a) mod u"),
    tree: Optional[Path] = typer.Option(None, "--tree", help="File holding a code tree such as (0,(1,(2,3)))"),
):
    """Print the trie measure of the dataset under one encoding."""
    with exit_on_error():
        data = load_dataset(dataset)
        code_tree = None
        if tree is not None:
            try:
                text = tree.read_text(encoding="utf-8")
            except (OSError, UnicodeDecodeError) as e:
                raise InvalidInputError(f"cannot read {tree}: {e}") from e
            code_tree = CodeTree.parse(text)
        analyzer = _analyzer()
        result = analyzer.measure(data, shift=shift, tree=code_tree)
        _echo_warnings(analyzer)
        typer.echo(UIMessageHandler.format_json(result.to_dict()))


@app.command("opt-shift")
def opt_shift(
    dataset: Path = DATASET_ARGUMENT,
    backend: ShiftBackend = typer.Option(ShiftBackend.ARRAY, "--backend", case_sensitive=False,
                                         help="Counter behind the level sweep"),
    profile: bool = typer.Option(False, "--profile", help="Emit trie(S + a) for every shift as TSV (array backend)"),
):
    """Find the shift a minimizing trie(S + a)."""
    with exit_on_error():
        data = load_dataset(dataset)
        analyzer = _analyzer()
        result = analyzer.opt_shift(data, backend=backend, with_profile=profile)
        _echo_warnings(analyzer)
        if result.profile is not None:
            typer.echo(UIMessageHandler.format_profile_tsv(result.dataset, result.profile, result.profile.optimum()))
        else:
            typer.echo(UIMessageHandler.format_json(result.to_dict()))


@app.command("opt-ordered")
def opt_ordered(
    dataset: Path = DATASET_ARGUMENT,
    shifted: bool = typer.Option(False, "--shifted", help="Also optimize a rotation of the universe"),
):
    """Find the optimal ordered (or shifted-ordered) code tree."""
    with exit_on_error():
        data = load_dataset(dataset)
        analyzer = _analyzer()
        result = analyzer.opt_ordered(data, shifted=shifted)
        _echo_warnings(analyzer)
        typer.echo(UIMessageHandler.format_json(result.to_dict()))


@app.command()
def stats(dataset: Path = DATASET_ARGUMENT):
    """Report shift statistics and, within the size cap, the ordered optima."""
    with exit_on_error():
        data = load_dataset(dataset)
        analyzer = _analyzer()
        report = analyzer.stats(data)
        _echo_warnings(analyzer)
        typer.echo(UIMessageHandler.format_json(report.to_dict()))


@app.command()
def verify(
    dataset: Path = DATASET_ARGUMENT,
    max_u: Optional[int] = typer.Option(None, "--max-u", help="Refuse universes above this (at most 256)"),
):
    """Cross-check every fast computation against brute force on the dataset."""
    with exit_on_error():
        data = load_dataset(dataset)
        verifier = ConsistencyVerifier(data.to_set_sequence(), name=data.name, max_universe=max_u)
        report = verifier.run()
        typer.echo(UIMessageHandler.format_verification_summary(report))
        if not report.passed:
            raise typer.Exit(EXIT_VERIFICATION_FAILED)


if __name__ == "__main__":
    app()
