import json
import re
from pathlib import Path
from typing import List

import typer
from pydantic import BaseModel

from app.middleware import handle_errors, log_command
from app.schemas.command import CommandResult, OutputFormat
from app.schemas.orders import FaceTuple
from app.utils.exceptions import DomainError

# negative numbers such as "-1/2" are values, not options
NUMERIC_ARGUMENTS = {"ignore_unknown_options": True}


def format_option():
    return typer.Option(OutputFormat.TEXT, "--format", help="text (default) or json")


def emit(result: CommandResult, output_format: OutputFormat) -> int:
    """Print the result on stdout and hand back its exit code."""
    if output_format == OutputFormat.JSON:
        payload = result.payload
        if isinstance(payload, BaseModel):
            payload = payload.model_dump(mode="json")
        typer.echo(json.dumps(payload, sort_keys=True, indent=2))
    elif result.text:
        typer.echo(result.text)
    return int(result.exit_code)


def command(func):
    """Logging and error handling for a command that returns an exit code."""
    return log_command(handle_errors(func))


def parse_face(text: str) -> FaceTuple:
    """
    "13", "1,3", "1 3" or "{1,3}" -> (1, 3). A bare run of digits is one
    vertex per digit; "0" or "{}" is the empty face.
    """
    body = text.strip().strip("{}").strip()
    if body in ("", "0", "()"):
        return ()
    if re.fullmatch(r"\d+", body):
        parts = list(body)
    else:
        parts = [p for p in re.split(r"[,\s]+", body) if p]
    try:
        face = tuple(sorted(int(p) for p in parts))
    except ValueError as exc:
        raise DomainError(f"cannot read a face from {text!r}") from exc
    if len(set(face)) != len(face) or any(i < 1 for i in face):
        raise DomainError(f"{text!r} is not a set of vertices 1, 2, ...")
    return face


def read_faces(path: Path) -> List[FaceTuple]:
    """One face per line; '#' starts a comment."""
    faces = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            faces.append(parse_face(line))
    return faces


def read_integers(path: Path) -> List[int]:
    values = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        for token in raw.split("#", 1)[0].replace(",", " ").split():
            try:
                values.append(int(token))
            except ValueError as exc:
                raise DomainError(f"line {lineno}: {token!r} is not an integer") from exc
    return values
