import logging
import sys
from typing import Optional, Sequence

import click
import typer

from app.commands import facets, ideal, orders, repro, summation
from app.commands.common import NUMERIC_ARGUMENTS
from app.config import Config
from app.utils.exceptions import ExitCode


def log_level() -> str:
    return "DEBUG" if Config.DEBUG else Config.LOG_LEVEL


logging.basicConfig(
    level=log_level(),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)

app = typer.Typer(
    name="unitary",
    help="Unitary ideals as simplicial complexes: sums and maxima of multiplicative functions, "
         "facets of [n], and realizable orders.",
    no_args_is_help=True,
    add_completion=False,
    pretty_exceptions_enable=False,
)


@app.callback()
def root(
    threads: Optional[int] = typer.Option(None, "--threads", min=1, help="worker cap for parallel steps"),
):
    if threads is not None:
        Config.THREADS = threads


# routing
app.add_typer(ideal.router, name="ideal")
app.command("sum")(summation.sum_)
app.command("psi", context_settings=NUMERIC_ARGUMENTS)(summation.psi)
app.command("facets")(facets.facets)
app.command("gamma")(facets.gamma)
app.command("maximize")(facets.maximize)
app.add_typer(orders.router, name="orders")
app.command("repro")(repro.repro)

logger.debug("CLI commands registered")


def dispatch(argv: Sequence[str]) -> int:
    """Run one command line; usage errors exit 1."""
    cli = typer.main.get_command(app)
    try:
        result = cli.main(args=list(argv), prog_name="unitary", standalone_mode=False)
    except click.exceptions.Abort:
        typer.echo("aborted", err=True)
        return int(ExitCode.DOMAIN_ERROR)
    except click.ClickException as exc:
        exc.show()
        return int(ExitCode.DOMAIN_ERROR)
    return int(result) if isinstance(result, int) else int(ExitCode.OK)


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
