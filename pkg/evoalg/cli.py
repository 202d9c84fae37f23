"""
Command line for evoalg.

Commands:
    - analyze: Ideal, graph and block data of a matrix or pattern file
    - iso: Isomorphism test between two matrix files
    - classify: Families of a registered case
    - verify-tables: Mechanical checks of the table corpus
    - instance: Random instantiation of a pattern file

Exit codes: 0 success or affirmative verdict, 1 negative verdict, 2 input
error, 3 unsupported field.
"""

import json
import logging
from typing import Any, Callable, Dict, Optional

import click

from .classify import verify_tables
from .config import load_settings
from .corpus import format_matrix, load_corpus, read_input, read_matrix
from .errors import EvoAlgError, UnsupportedFieldError
from .fieldcore import FieldSpec, parse_field
from .isotest import decide_isomorphism, random_instance
from .log import setup_logging
from .pattern import SupportPattern, as_pattern
from .reports import (
    CLASSIFY_LABELS,
    CORPUS_LABELS,
    analyze_report,
    classify_report,
    error_report,
    format_report,
    iso_report,
    validate_report,
    verify_report,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_CAPABILITY = 3


def _field(text: Optional[str]) -> Optional[FieldSpec]:
    return parse_field(text) if text else None


def _emit(report: Dict[str, Any], as_json: bool) -> None:
    if as_json:
        validate_report(report)
        click.echo(json.dumps(report, indent=2, sort_keys=True))
    else:
        click.echo(format_report(report))


COMMAND_ERRORS = (EvoAlgError, ValueError, OSError)


def _failure_code(error: Exception) -> int:
    """Log a failed command and return its exit code."""
    if isinstance(error, UnsupportedFieldError):
        logger.error(f"Unsupported field: {error}")
        return EXIT_CAPABILITY
    logger.error(f"Command failed: {error}")
    return EXIT_INPUT


def _run(ctx: click.Context, as_json: bool, build: Callable[[], Dict[str, Any]]) -> None:
    """Build a report, print it and leave with the matching exit code."""
    try:
        report = build()
    except COMMAND_ERRORS as e:
        report, code = error_report(e), _failure_code(e)
    else:
        code = EXIT_OK if report["status"] == "success" else EXIT_NEGATIVE

    if report["kind"] == "error":
        click.echo(f"error: {report['error_message']}", err=True)
        if as_json:
            _emit(report, True)
    else:
        _emit(report, as_json)
    ctx.exit(code)


json_option = click.option("--json", "as_json", is_flag=True, help="Print a JSON report.")
field_option = click.option("--field", "field_text", default=None, help="Base field: Q or F<p>; overrides the file header.")
workers_option = click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True, help="Worker threads.")


@click.group()
@click.option("--log-level", default=None, help="Logging level (default: EVOALG_LOG_LEVEL or WARNING).")
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str]):
    """Evolution algebras: structure matrices, basic ideals and classification tables."""
    settings = load_settings()
    setup_logging(log_level or settings.log_level)
    ctx.obj = settings


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@field_option
@json_option
@click.pass_context
def analyze(ctx: click.Context, path: str, field_text: Optional[str], as_json: bool):
    """Report perfectness, simplicity, irreducibility and basic ideals."""
    _run(ctx, as_json, lambda: analyze_report(read_input(path, _field(field_text))))


@cli.command()
@click.argument("first", type=click.Path(exists=True, dir_okay=False))
@click.argument("second", type=click.Path(exists=True, dir_okay=False))
@field_option
@json_option
@click.pass_context
def iso(ctx: click.Context, first: str, second: str, field_text: Optional[str], as_json: bool):
    """Decide whether two perfect algebras are isomorphic over the base field."""

    def build():
        override = _field(field_text)
        return iso_report(decide_isomorphism(read_matrix(first, override), read_matrix(second, override)))

    _run(ctx, as_json, build)


@cli.command()
@click.argument("label", type=click.Choice(CLASSIFY_LABELS))
@click.option("--expected", is_flag=True, help="Compare counts with the stated counts; exit 1 on a mismatch.")
@workers_option
@json_option
@click.pass_context
def classify(ctx: click.Context, label: str, expected: bool, workers: int, as_json: bool):
    """List the families of a case and their count."""
    settings = ctx.obj

    def build():
        corpus = load_corpus(settings.corpus_path) if label in CORPUS_LABELS else None
        return classify_report(label, corpus, expected, workers)

    _run(ctx, as_json, build)


@cli.command("verify-tables")
@click.argument("corpus_dir", required=False, type=click.Path(file_okay=False))
@workers_option
@json_option
@click.pass_context
def verify_tables_command(ctx: click.Context, corpus_dir: Optional[str], workers: int, as_json: bool):
    """Check every bundled table; allowlisted errata count as warnings."""

    def build():
        corpus = load_corpus(corpus_dir or ctx.obj.corpus_path)
        return verify_report(verify_tables(corpus, workers), corpus)

    _run(ctx, as_json, build)


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@field_option
@click.option("--seed", type=int, default=None, help="Random seed (default: EVOALG_SEED).")
@click.pass_context
def instance(ctx: click.Context, path: str, field_text: Optional[str], seed: Optional[int]):
    """Print a random matrix with the support of a pattern file."""
    settings = ctx.obj
    try:
        spec = _field(field_text) or FieldSpec.prime(settings.prime)
        source = read_input(path)
        P = source if isinstance(source, SupportPattern) else as_pattern(source)
        A = random_instance(P, spec, settings.seed if seed is None else seed, settings.max_retries)
    except COMMAND_ERRORS as e:
        code = _failure_code(e)
        click.echo(f"error: {e}", err=True)
        ctx.exit(code)
    click.echo(format_matrix(A), nl=False)


def main():
    """
    Main entry point for the evoalg command line.
    """
    try:
        cli(prog_name="evoalg")
    except KeyboardInterrupt:
        click.echo("\nInterrupted.", err=True)
        raise SystemExit(130)
    finally:
        logging.shutdown()


if __name__ == "__main__":
    main()
