import math
from itertools import combinations
from pathlib import Path
from typing import Optional

import typer

from app.commands.common import command, emit, format_option, read_faces, read_integers
from app.dependencies import get_order_service
from app.schemas.command import CommandResult, OutputFormat
from app.schemas.orders import CoherenceResult, ExtensionCount, OrderListing, face_label
from app.services.multfunc_service import parse_rational
from app.utils.exceptions import DomainError, ExitCode

router = typer.Typer(help="Term orders, the poset Y and realizable orders.", no_args_is_help=True)


def _restriction(value: str):
    """Sizes "2" or "1,2", or a file of faces."""
    path = Path(value)
    if path.exists():
        return None, read_faces(path)
    try:
        return {int(s) for s in value.split(",")}, None
    except ValueError as exc:
        raise DomainError(f"--restrict takes sizes like '2' or '1,2', or an existing file; got {value!r}") from exc


def _coherence_text(result: CoherenceResult, values=None) -> str:
    order = " < ".join(map(str, values)) if values else " < ".join(result.order.labels())
    if result.feasible:
        weights = ", ".join(f"w{i} = {w}" for i, w in enumerate(result.weights.weights, start=1))
        function = ", ".join(f"g({q}) = {v}" for q, v in result.function.items())
        return f"FEASIBLE\norder: {order}\nweights: {weights}\nfunction: {function}"
    lines = ["INFEASIBLE", f"order: {order}", "contradiction:"]
    lines += [f"  {inequality}" for inequality in result.certificate.conflicts]
    return "\n".join(lines)


# ========== Poset Y ==========

@router.command("y", help="The poset Y on subsets of {1..r}.")
@command
def poset_y(
    r: int = typer.Argument(..., help="number of vertices"),
    restrict: Optional[str] = typer.Option(None, "--restrict", help="face sizes ('2', '1,2') or a file of faces"),
    count_extensions: bool = typer.Option(False, "--count-extensions", help="number of linear extensions"),
    export_covers: bool = typer.Option(False, "--export-covers", help="list the cover pairs"),
    output_format: OutputFormat = format_option(),
) -> int:
    service = get_order_service()
    poset = service.poset_Y(r)
    if restrict is not None:
        sizes, faces = _restriction(restrict)
        poset = service.restrict_by_sizes(poset, sizes) if sizes else service.restrict_poset(poset, faces)
    if count_extensions:
        count = service.count_linear_extensions(poset)
        return emit(
            CommandResult(text=str(count), payload=ExtensionCount(size=poset.size, linear_extensions=count)),
            output_format,
        )
    if export_covers:
        text = "\n".join(
            f"{face_label(poset.elements[i])} < {face_label(poset.elements[j])}"
            for i, j in poset.covers
        )
    else:
        text = f"{poset.size} elements, {len(poset.covers)} covers"
    return emit(CommandResult(text=text, payload=poset), output_format)


# ========== Realizability ==========

@router.command("check", help="Is an order, listed as integers smallest first, induced by some g?")
@command
def check(
    order_file: Path = typer.Argument(..., help="integers in claimed ascending g-order"),
    sorted_only: bool = typer.Option(False, "--sorted", help="also require g(v1) < ... < g(vr)"),
    output_format: OutputFormat = format_option(),
) -> int:
    service = get_order_service()
    values = read_integers(order_file)
    result = service.coherence_witness(service.order_from_integers(values), sorted_only)
    exit_code = ExitCode.OK if result.feasible else ExitCode.INFEASIBLE
    return emit(
        CommandResult(exit_code=exit_code, text=_coherence_text(result, values), payload=result),
        output_format,
    )


@router.command("enumerate", help="All realizable orders on the k-subsets of {1..r}.")
@command
def enumerate_(
    r: int = typer.Option(..., "--r", help="number of vertices"),
    subsets: int = typer.Option(..., "--subsets", help="face size k"),
    sorted_only: bool = typer.Option(False, "--sorted", help="sorted orders only"),
    output_format: OutputFormat = format_option(),
) -> int:
    family = list(combinations(range(1, r + 1), subsets))
    orders = get_order_service().realizable_orders(family, r, sorted_only)
    listing = OrderListing(
        r=r, sorted_only=sorted_only, candidates=math.factorial(len(family)),
        orders=[order.labels() for order in orders],
    )
    lines = [" < ".join(labels) for labels in listing.orders]
    lines.append(f"{len(orders)} of {listing.candidates} orders realizable")
    return emit(CommandResult(text="\n".join(lines), payload=listing), output_format)


@router.command("bound", help="Compare realizable orders on k-subsets with r! times the linear extensions.")
@command
def bound(
    r: int = typer.Option(..., "--r", help="number of vertices"),
    subsets: int = typer.Option(..., "--subsets", help="face size k"),
    output_format: OutputFormat = format_option(),
) -> int:
    result = get_order_service().check_nord_bound(combinations(range(1, r + 1), subsets), r)
    text = (
        f"t = {result.t} (sorted: {result.t_sorted})\n"
        f"bound = {r}! * {result.linear_extensions} = {result.bound}\n"
        f"holds: {str(result.holds).lower()}"
    )
    return emit(CommandResult(text=text, payload=result), output_format)


@router.command("impossible", help="g(6) > g(21) > g(10) > g(15) > g(14) > g(35) is not realizable.")
@command
def impossible(output_format: OutputFormat = format_option()) -> int:
    report = get_order_service().verify_impossible_example()
    lines = [
        "g: " + " > ".join(map(str, report.descending)),
        "FEASIBLE" if report.feasible else "INFEASIBLE",
    ]
    if report.opposing_pair is not None:
        first, second = report.opposing_pair
        lines.append(f"implied: {first}  and  {second}")
    lines += [f"  {inequality}" for inequality in report.conflicts]
    exit_code = ExitCode.OK if report.feasible else ExitCode.INFEASIBLE
    return emit(CommandResult(exit_code=exit_code, text="\n".join(lines), payload=report), output_format)


@router.command("termorder", help="Check the term-order axioms for the subset-sum order of weights.")
@command
def termorder(
    weights: str = typer.Argument(..., help="comma-separated positive weights, e.g. 1,2,4,8"),
    output_format: OutputFormat = format_option(),
) -> int:
    service = get_order_service()
    order = service.subset_sum_order([parse_rational(w) for w in weights.split(",")])
    result = service.is_boolean_termorder(order)
    lines = [" < ".join(order.labels())]
    if result.holds:
        lines.append("boolean term order: yes")
    else:
        sigma, tau, gamma = result.violation
        lines.append(f"boolean term order: no ({face_label(sigma)}, {face_label(tau)}, {face_label(gamma)})")
    lines.append(f"sorted: {str(service.is_sorted_order(order)).lower()}")
    return emit(CommandResult(text="\n".join(lines), payload=result), output_format)
