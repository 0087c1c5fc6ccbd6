"""
Error handling for CLI commands.
Maps exceptions to exit codes and prints them consistently on stderr.
"""

import functools
import logging

import typer
from pydantic import ValidationError

from app.utils.exceptions import ComputationError, ExitCode

logger = logging.getLogger(__name__)


def handle_errors(command):
    """
    Wrap a command returning an exit code.

    - ComputationError: its own exit code (1 domain, 2 capacity)
    - pydantic ValidationError and ValueError: bad input, exit 1
    - MemoryError: capacity, exit 2
    - anything else: logged with traceback, exit 1
    """

    @functools.wraps(command)
    def wrapper(*args, **kwargs) -> int:
        try:
            return command(*args, **kwargs)

        except ComputationError as exc:
            logger.warning(f"{type(exc).__name__}: {exc.detail}")
            return _report(exc.detail, exc.exit_code)

        except ValidationError as exc:
            logger.warning(f"Validation error: {exc.errors()}")
            first = exc.errors()[0]
            return _report(f"invalid input: {first['msg']}", ExitCode.DOMAIN_ERROR)

        except ValueError as exc:
            logger.warning(f"Value error: {exc}")
            return _report(str(exc), ExitCode.DOMAIN_ERROR)

        except MemoryError:
            logger.warning("Out of memory")
            return _report("out of memory", ExitCode.CAPACITY_ERROR)

        except OSError as exc:
            logger.warning(f"I/O error: {exc}")
            return _report(str(exc), ExitCode.DOMAIN_ERROR)

        except Exception as exc:
            logger.error(f"Unhandled exception: {type(exc).__name__} - {exc}", exc_info=True)
            return _report(f"internal error: {type(exc).__name__}: {exc}", ExitCode.DOMAIN_ERROR)

    return wrapper


def _report(detail: str, code: ExitCode) -> int:
    typer.echo(f"error: {detail}", err=True)
    return int(code)
