from enum import Enum
from typing import Any, List, Optional
from pydantic import BaseModel, Field

from app.utils.exceptions import ExitCode


class OutputFormat(str, Enum):
    TEXT = 'text'
    JSON = 'json'


class CommandResult(BaseModel):
    """What a subcommand hands back to the CLI layer for rendering."""
    exit_code: ExitCode = ExitCode.OK
    text: str = ""
    payload: Optional[Any] = Field(None, description="pydantic model or JSON-ready value for --format json")


# ========== Reproduction Schemas ==========

class ReproCheck(BaseModel):
    name: str
    expected: str
    observed: str
    passed: bool
    # not part of --format json output
    seconds: float = Field(..., exclude=True)


class ReproReport(BaseModel):
    checks: List[ReproCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)
