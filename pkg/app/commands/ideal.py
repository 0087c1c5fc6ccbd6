import json
from pathlib import Path
from typing import List, Optional

import typer

from app.commands.common import command, emit, format_option
from app.dependencies import get_ideal_service
from app.schemas.command import CommandResult, OutputFormat
from app.schemas.ideal import ComplexSummary, IdealSummary, UnitaryIdeal

router = typer.Typer(help="Unitary ideals and their simplicial complexes.", no_args_is_help=True)


def _summary(ideal: UnitaryIdeal) -> CommandResult:
    summary = IdealSummary(elements=ideal.sorted_elements(), vertices=ideal.vertex_values, r=ideal.r)
    text = (
        f"elements: {' '.join(map(str, summary.elements))}\n"
        f"vertices: {' '.join(map(str, summary.vertices))}\n"
        f"r = {summary.r}"
    )
    return CommandResult(text=text, payload=summary)


def _write(path: Path, document) -> None:
    Path(path).write_text(json.dumps(document.model_dump(mode="json"), sort_keys=True) + "\n")


# ========== Ideal Commands ==========

@router.command("close", help="Smallest unitary ideal containing the generators.")
@command
def close(
    generators: List[int] = typer.Argument(..., help="positive integers"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="write the ideal as JSON"),
    output_format: OutputFormat = format_option(),
) -> int:
    service = get_ideal_service()
    ideal = service.close_under_unitary_divisors(generators)
    if output is not None:
        _write(output, service.ideal_to_document(ideal))
    return emit(_summary(ideal), output_format)


@router.command("check", help="Is the set closed under unitary divisors?")
@command
def check(
    elements: List[int] = typer.Argument(..., help="candidate set"),
    output_format: OutputFormat = format_option(),
) -> int:
    result = get_ideal_service().is_unitary_ideal(elements)
    if result.closed:
        text = "closed: a unitary ideal"
    else:
        s, d = result.witness
        text = f"not closed: {d} is a unitary divisor of {s} but missing"
    return emit(CommandResult(text=text, payload=result), output_format)


@router.command("interval", help="The ideal [n] = {1, ..., n} and its prime powers.")
@command
def interval(
    n: int = typer.Argument(..., help="upper bound"),
    output_format: OutputFormat = format_option(),
) -> int:
    ideal = get_ideal_service().interval_ideal(n)
    vertices = ideal.vertex_values
    text = f"[{n}]: r = {ideal.r}\nvertices: {' '.join(map(str, vertices))}"
    payload = IdealSummary(elements=[], vertices=vertices, r=ideal.r)
    return emit(CommandResult(text=text, payload=payload), output_format)


# ========== Complex Commands ==========

@router.command("complex", help="f-vector and facets of Delta(S) for an ideal JSON file.")
@command
def complex_(
    ideal_file: Path = typer.Argument(..., help='{"elements": [...]}'),
    facets_out: Optional[Path] = typer.Option(None, "--facets-out", help="write facet values, one per line"),
    export: Optional[Path] = typer.Option(None, "--export", help="write the complex as JSON"),
    output_format: OutputFormat = format_option(),
) -> int:
    service = get_ideal_service()
    complex_ = service.complex_of(service.load_ideal(ideal_file))
    facets = service.facets(complex_)
    if facets_out is not None:
        Path(facets_out).write_text(service.facet_lines(complex_))
    if export is not None:
        _write(export, service.complex_to_document(complex_))
    summary = ComplexSummary(
        vertices=list(complex_.vertices),
        f_vector=service.f_vector(complex_).entries,
        facets=[f.integer_value for f in facets],
    )
    text = (
        f"vertices: {' '.join(map(str, summary.vertices))}\n"
        f"f-vector: ({', '.join(map(str, summary.f_vector))})\n"
        f"facets: {' '.join(map(str, summary.facets))}"
    )
    return emit(CommandResult(text=text, payload=summary), output_format)


@router.command("realize", help="Realize a complex JSON file as a unitary ideal over 2, 3, 5, ...")
@command
def realize(
    complex_file: Path = typer.Argument(..., help='{"vertices": [...], "facets": [[...], ...]}'),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="write the ideal as JSON"),
    output_format: OutputFormat = format_option(),
) -> int:
    service = get_ideal_service()
    ideal = service.realize(service.load_complex(complex_file))
    if output is not None:
        _write(output, service.ideal_to_document(ideal))
    return emit(_summary(ideal), output_format)
