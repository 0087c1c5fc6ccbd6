from pathlib import Path
from typing import Optional

import typer

from app.commands.common import command, emit, format_option
from app.dependencies import get_facet_service, get_multfunc_service
from app.schemas.command import CommandResult, OutputFormat
from app.utils.exceptions import DomainError


# ========== Facets of [n] ==========

@command
def facets(
    n: int = typer.Argument(..., help="upper bound of [n]"),
    count: bool = typer.Option(False, "--count", help="number of facets (default)"),
    list_: bool = typer.Option(False, "--list", help="facets, one per line"),
    matrix: Optional[Path] = typer.Option(None, "--matrix", help="write the facet matrix as CSV"),
    density: bool = typer.Option(False, "--density", help="facets / n"),
    output_format: OutputFormat = format_option(),
) -> int:
    """Facets of Delta([n]), streamed without building the complex."""
    if sum([count, list_, matrix is not None, density]) > 1:
        raise DomainError("choose one of --count, --list, --matrix, --density")
    service = get_facet_service()
    if matrix is not None:
        facet_matrix = service.facet_matrix(n)
        service.write_matrix_csv(facet_matrix, matrix)
        text = f"wrote {facet_matrix.ell} x {facet_matrix.r} matrix to {matrix}"
        return emit(CommandResult(text=text, payload=facet_matrix), output_format)
    summary = service.summary(n, with_list=list_)
    if list_:
        text = "\n".join(map(str, summary.facets))
    elif density:
        text = f"{summary.density} ({float(summary.density):.15g})"
    else:
        text = str(summary.count)
    return emit(CommandResult(text=text, payload=summary), output_format)


@command
def gamma(
    tol: float = typer.Option(1e-12, "--tol", help="stop at the first term below this bound"),
    output_format: OutputFormat = format_option(),
) -> int:
    """Limiting facet density of Delta([n])."""
    estimate = get_facet_service().gamma_constant(tol)
    partial = format(estimate.series_value, ".15g")
    text = f"{estimate.rounded()}\nterms used: {estimate.terms_used} (partial sum {partial})"
    return emit(CommandResult(text=text, payload=estimate), output_format)


# ========== Maximization ==========

@command
def maximize(
    n: int = typer.Argument(..., help="upper bound of [n]"),
    function: str = typer.Option(..., "--function", help="function file or builtin (two_omega, sigma_over_n, const:c)"),
    strategy: str = typer.Option("facet", "--strategy", help="facet or naive"),
    output_format: OutputFormat = format_option(),
) -> int:
    """Maximum of a log-positive multiplicative g over [n]."""
    g = get_multfunc_service().resolve(function)
    result = get_facet_service().maximize_on_interval(n, g, strategy)
    text = f"max g on [{n}] = {result.value} at m = {result.argmax}"
    return emit(CommandResult(text=text, payload=result), output_format)
