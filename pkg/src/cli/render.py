"""Rich text rendering of result documents."""

from typing import Any
import json

from rich.console import Console
from rich.table import Table

from ..core.models import Verdict
from ..io import ResultDocument

VERDICT_STYLES = {
    Verdict.YES: ("✅", "bold green"),
    Verdict.NO: ("❌", "bold red"),
    Verdict.UNKNOWN: ("❔", "bold yellow"),
    Verdict.NO_WITHIN_BOUND: ("⚠️ ", "bold yellow"),
}


def _cell(value: Any) -> str:
    if isinstance(value, (list, dict)):
        return json.dumps(value, ensure_ascii=False)
    return str(value)


def _valuation_cell(valuation) -> str:
    return ", ".join(f"{name}={{{', '.join(actions)}}}" for name, actions in valuation.items()) or "()"


def render_document(document: ResultDocument, console: Console):
    """Print a result as verdict line, constraint text and tables."""
    console.print(f"\n[bold blue]🔎 {document.formalism}: {document.query}[/bold blue]\n")

    if document.verdict is not None:
        icon, style = VERDICT_STYLES[document.verdict]
        console.print(f"[{style}]{icon} {document.verdict.value}[/{style}]")
    if not document.complete:
        console.print("[yellow]⚠️  Limits were hit; the result is partial[/yellow]")

    if document.rendering is not None:
        console.print(f"\n[bold]Constraints:[/bold] {document.rendering}")

    if document.valuations is not None:
        valuations = document.valuations
        table = Table(title="Valuations per State")
        table.add_column("State", style="cyan")
        table.add_column("Count", style="magenta")
        table.add_column("Valuations", style="green")
        for state, members in valuations.states.items():
            table.add_row(state, str(len(members)), "; ".join(_valuation_cell(v) for v in members))
        console.print()
        console.print(table)

        minimal = Table(title=f"Minimal Valuations at {valuations.initial}")
        for variable in valuations.variables:
            minimal.add_column(variable, style="cyan")
        for valuation in valuations.minimal:
            minimal.add_row(*("{" + ", ".join(valuation[v]) + "}" for v in valuations.variables))
        console.print(minimal)

    if document.net is not None:
        net = document.net
        table = Table(title="Coverability Tree")
        table.add_column("Metric", style="cyan")
        table.add_column("Value", style="magenta")
        table.add_row("Nodes", str(net.nodes))
        table.add_row("Complete", str(net.complete))
        table.add_row("Bounded", str(net.bounded))
        table.add_row("Unbounded places", ", ".join(net.unbounded_places) or "-")
        table.add_row(
            "Simultaneously unbounded",
            "; ".join("{" + ", ".join(group) + "}" for group in net.simultaneously_unbounded) or "-",
        )
        console.print()
        console.print(table)

    if document.witness:
        table = Table(title="Witness")
        table.add_column("Field", style="cyan")
        table.add_column("Value", style="green")
        for key, value in document.witness.items():
            table.add_row(key, _cell(value))
        console.print()
        console.print(table)

    if document.details:
        table = Table(title="Details")
        table.add_column("Metric", style="cyan")
        table.add_column("Value", style="magenta")
        for key, value in document.details.items():
            table.add_row(key, _cell(value))
        console.print()
        console.print(table)
    console.print()
