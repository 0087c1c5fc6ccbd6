from pathlib import Path

import typer

from app.commands.common import command, emit, format_option
from app.dependencies import get_ideal_service, get_multfunc_service, get_summation_service
from app.schemas.command import CommandResult, OutputFormat
from app.services.multfunc_service import parse_rational


# ========== G(S) ==========

@command
def sum_(
    ideal_file: Path = typer.Argument(..., help='ideal JSON {"elements": [...]}'),
    function: str = typer.Argument(..., help="function file or builtin (two_omega, sigma_over_n, const:c)"),
    method: str = typer.Option("direct", "--method", help="direct, incl-excl or fvector"),
    output_format: OutputFormat = format_option(),
) -> int:
    """Sum of g over the ideal S."""
    ideal = get_ideal_service().load_ideal(ideal_file)
    g = get_multfunc_service().resolve(function)
    result = get_summation_service().g_sum(ideal, g, method)
    return emit(CommandResult(text=str(result.value), payload=result), output_format)


# ========== Psi(r, c) ==========

@command
def psi(
    r: int = typer.Argument(..., help="number of prime powers"),
    c: str = typer.Argument(..., help="common value of g, e.g. -1/10"),
    piecewise: bool = typer.Option(False, "--piecewise", help="also evaluate the closed form"),
    brute_force: bool = typer.Option(False, "--brute-force", help="also maximize over all complexes (r <= 5)"),
    output_format: OutputFormat = format_option(),
) -> int:
    """Largest G(S) over ideals with r prime powers and g = c on them."""
    result = get_summation_service().psi_report(r, parse_rational(c), piecewise, brute_force)
    lines = [
        f"Psi({r}, {result.c}) = {result.value}",
        f"argmax level: {result.argmax_level}",
        f"K: {', '.join(str(k) for k in result.k_values)}",
    ]
    if result.piecewise_value is not None:
        lines.append(f"piecewise: {result.piecewise_value}")
    if result.bruteforce_value is not None:
        lines.append(f"brute force: {result.bruteforce_value}")
    return emit(CommandResult(text="\n".join(lines), payload=result), output_format)
