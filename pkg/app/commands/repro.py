from typing import List, Optional

import typer
from rich.console import Console
from rich.table import Table

from app.commands.common import command, emit, format_option
from app.dependencies import get_repro_service
from app.schemas.command import CommandResult, OutputFormat, ReproReport
from app.utils.exceptions import ExitCode


def render_report(report: ReproReport) -> str:
    table = Table(title="Reproduction checks")
    table.add_column("check")
    table.add_column("expected")
    table.add_column("observed")
    table.add_column("result")
    table.add_column("seconds", justify="right")
    for check in report.checks:
        table.add_row(
            check.name, check.expected, check.observed,
            "[green]pass[/green]" if check.passed else "[red]FAIL[/red]",
            f"{check.seconds:.2f}",
        )
    console = Console(width=140, color_system=None)
    with console.capture() as capture:
        console.print(table)
    return capture.get().rstrip("\n")


@command
def repro(
    only: Optional[List[str]] = typer.Option(None, "--only", help="run checks whose name contains this text"),
    seed: Optional[int] = typer.Option(None, "--seed", help="seed of the randomized checks"),
    output_format: OutputFormat = format_option(),
) -> int:
    """Recompute every published number and print a pass/fail table."""
    report = get_repro_service().run(only, seed)
    exit_code = ExitCode.OK if report.passed else ExitCode.DOMAIN_ERROR
    return emit(CommandResult(exit_code=exit_code, text=render_report(report), payload=report), output_format)
