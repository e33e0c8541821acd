"""Main CLI entry point for paraverse."""

import typer
from typing import Optional
from rich.console import Console
from pathlib import Path
import logging
import sys

from ..core.config import get_config
from ..core.errors import InputError
from ..core.models import Limits, OutputMode, RunConfig, Subcommand, Verdict
from ..io import ModelKind, check_query, emit_result, load_model, parse_query, render_model
from .dispatch import as_chain_model, dispatch
from .render import render_document

EXIT_OK = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_INPUT = 3
EXIT_INTERNAL = 4

EXIT_CODES = """Exit codes:

  0  definite answer (yes, or a complete synthesis result)

  1  definite negative answer to a yes/no query

  2  unknown or incomplete: limits were hit; the partial result is still written

  3  input error: parse, semantic or valuation error

  4  internal error
"""

# Initialize CLI app
app = typer.Typer(
    name="paraverse",
    help="paraverse - Parameter synthesis for timed automata, interval Markov chains, "
         "transition systems and Petri nets",
    epilog=EXIT_CODES,
    add_completion=False,
)

console = Console()
err_console = Console(stderr=True)
logger = logging.getLogger(__name__)

CHAIN_KINDS = {"pimc", "imc", "mc"}


def configure_logging(config: RunConfig):
    """Send every log record to stderr so results on stdout stay clean."""
    level = "INFO" if config.verbose else config.log_level
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=config.log_format,
        stream=sys.stderr,
        force=True,
    )


def model_kind(subcommand: Subcommand, path: Path) -> ModelKind:
    if subcommand is Subcommand.PIMC:
        suffix = path.suffix.lstrip(".")
        return ModelKind(suffix if suffix in CHAIN_KINDS else "pimc")
    return ModelKind(subcommand.value)


def exit_code(verdict: Optional[Verdict], complete: bool) -> int:
    if not complete or verdict in (Verdict.UNKNOWN, Verdict.NO_WITHIN_BOUND):
        return EXIT_UNKNOWN
    if verdict is Verdict.NO:
        return EXIT_NO
    return EXIT_OK


def run(config: RunConfig) -> int:
    """
    Load the model, answer the query and write the result.

    Args:
        config: One fully resolved invocation

    Returns:
        Process exit code (see EXIT_CODES); nothing is written on 3 or 4

    Usage:
        code = run(RunConfig(subcommand="pta", model_path="corpus/coffee.pta",
                             query="ef-synth {done}"))
    """
    configure_logging(config)
    try:
        query_text = config.query_text()
        query_file = config.query if query_text != config.query else "<query>"
        model = load_model(config.model_path, model_kind(config.subcommand, config.model_path))
        if config.subcommand is Subcommand.PIMC:
            model = as_chain_model(model)
        query = parse_query(query_text, config.subcommand, query_file)
        check_query(query, model)
        document = dispatch(
            config.subcommand, model, query, query_text, config.limits, config.model_path,
            get_config().arctl_caps,
        )
    except (InputError, OSError) as e:
        err_console.print(f"\n[bold red]❌ Error: {e}[/bold red]\n")
        return EXIT_INPUT
    except Exception as e:
        logger.exception("Internal error")
        err_console.print(f"\n[bold red]❌ Error: {e}[/bold red]\n")
        return EXIT_INTERNAL

    code = exit_code(document.verdict, document.complete)
    if config.output_mode is OutputMode.JSON:
        text = emit_result(document, config.json_indent)
        if config.output_path is None or str(config.output_path) == "-":
            sys.stdout.write(text)
            sys.stdout.flush()
        else:
            try:
                config.output_path.parent.mkdir(parents=True, exist_ok=True)
                config.output_path.write_text(text, encoding="utf-8")
            except OSError as e:
                err_console.print(f"\n[bold red]❌ Error: {e}[/bold red]\n")
                return EXIT_INPUT
            render_document(document, console)
            console.print(f"[bold green]✅ Result written to {config.output_path}[/bold green]\n")
    else:
        render_document(document, console)
    return code


def _invoke(
    subcommand: Subcommand,
    model: Path,
    query: str,
    limits: Optional[str],
    json_path: Optional[str],
    config_path: Optional[str],
    verbose: bool,
):
    try:
        config = get_config(config_path)
        resolved = config.limits
        if limits:
            resolved = resolved.merged(Limits.parse_overrides(limits))
        run_config = RunConfig(
            subcommand=subcommand,
            model_path=model,
            query=query,
            limits=resolved,
            output_mode=OutputMode.JSON if json_path else OutputMode.TEXT,
            output_path=Path(json_path) if json_path and json_path != "-" else None,
            json_indent=config.json_indent,
            verbose=verbose,
            log_level=config.log_level,
            log_format=config.log_format,
        )
    except (ValueError, OSError) as e:
        err_console.print(f"\n[bold red]❌ Error: {e}[/bold red]\n")
        raise typer.Exit(code=EXIT_INPUT)

    code = run(run_config)
    if code:
        raise typer.Exit(code=code)


MODEL_HELP = "Model file"
QUERY_HELP = "Query text, or a file holding the query"
LIMITS_HELP = "Limit overrides, e.g. maxStates=5000,tokenCap=50"
JSON_HELP = "Write the JSON result to this file ('-' for stdout)"
CONFIG_HELP = "Path to config file"


@app.command()
def pta(
    model: Path = typer.Argument(..., help=MODEL_HELP),
    query: str = typer.Option(..., "--query", "-q", help=QUERY_HELP),
    limits: Optional[str] = typer.Option(None, "--limits", help=LIMITS_HELP),
    json_path: Optional[str] = typer.Option(None, "--json", help=JSON_HELP),
    config_path: Optional[str] = typer.Option(None, "--config", help=CONFIG_HELP),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress at INFO"),
):
    """
    Parametric timed automata.

    Queries: ef-synth {L}, reach at (p=v) {L}, lu-emptiness {L}, lu-classify,
    ip-check, ec-check at (p=v), replay at (p=v) [(d, action), ...]
    """
    _invoke(Subcommand.PTA, model, query, limits, json_path, config_path, verbose)


@app.command()
def pimc(
    model: Path = typer.Argument(..., help=MODEL_HELP),
    query: str = typer.Option(..., "--query", "-q", help=QUERY_HELP),
    limits: Optional[str] = typer.Option(None, "--limits", help=LIMITS_HELP),
    json_path: Optional[str] = typer.Option(None, "--json", help=JSON_HELP),
    config_path: Optional[str] = typer.Option(None, "--config", help=CONFIG_HELP),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress at INFO"),
):
    """
    Parametric interval Markov chains (.pimc, .imc and .mc files).

    Queries: consistency-synth, consistent at (q=v), n-consistent STATE N at (q=v),
    satisfies MCFILE at (q=v)
    """
    _invoke(Subcommand.PIMC, model, query, limits, json_path, config_path, verbose)


@app.command()
def mts(
    model: Path = typer.Argument(..., help=MODEL_HELP),
    query: str = typer.Option(..., "--query", "-q", help=QUERY_HELP),
    limits: Optional[str] = typer.Option(None, "--limits", help=LIMITS_HELP),
    json_path: Optional[str] = typer.Option(None, "--json", help=JSON_HELP),
    config_path: Optional[str] = typer.Option(None, "--config", help=CONFIG_HELP),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress at INFO"),
):
    """
    Mixed transition systems with action-variable formulas.

    Queries: FORMULA (synthesis), check at (Y={a, b}) FORMULA
    """
    _invoke(Subcommand.MTS, model, query, limits, json_path, config_path, verbose)


@app.command()
def ppn(
    model: Path = typer.Argument(..., help=MODEL_HELP),
    query: str = typer.Option(..., "--query", "-q", help=QUERY_HELP),
    limits: Optional[str] = typer.Option(None, "--limits", help=LIMITS_HELP),
    json_path: Optional[str] = typer.Option(None, "--json", help=JSON_HELP),
    config_path: Optional[str] = typer.Option(None, "--config", help=CONFIG_HELP),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress at INFO"),
):
    """
    Parametric Petri nets.

    Queries: [exists|forall] cover {p: n}, [exists|forall] reach {p: n},
    [exists|forall] bounded, [exists|forall] simultaneous {p, q}; add at (a=v)
    to pick an instance
    """
    _invoke(Subcommand.PPN, model, query, limits, json_path, config_path, verbose)


@app.command()
def show(
    model: Path = typer.Argument(..., help=MODEL_HELP),
    kind: Optional[str] = typer.Option(
        None, "--kind", "-k", help="pta, pimc, imc, mc, mts or ppn; defaults to the file extension"
    ),
):
    """Print a model in its normalized text form."""
    try:
        parsed = load_model(model, kind)
    except (InputError, OSError, ValueError) as e:
        err_console.print(f"\n[bold red]❌ Error: {e}[/bold red]\n")
        raise typer.Exit(code=EXIT_INPUT)
    sys.stdout.write(render_model(parsed))


if __name__ == "__main__":
    app()
