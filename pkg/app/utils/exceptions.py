"""
Exception hierarchy shared by all services.

Every error carries a ``detail`` message and the process ``exit_code`` the
CLI reports for it, the same way an HTTP exception carries a status code.
"""

from enum import IntEnum
from typing import Optional


class ExitCode(IntEnum):
    OK = 0
    DOMAIN_ERROR = 1
    CAPACITY_ERROR = 2
    INFEASIBLE = 3


class ComputationError(Exception):
    exit_code: ExitCode = ExitCode.DOMAIN_ERROR

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class DomainError(ComputationError):
    """Input outside the mathematical domain or a violated precondition."""
    exit_code = ExitCode.DOMAIN_ERROR


class UnsupportedVertexError(DomainError):
    """A multiplicative function was asked for a prime power it does not define."""

    def __init__(self, prime_power: int):
        super().__init__(f"unsupported vertex: no value for prime power {prime_power}")
        self.prime_power = prime_power


class NotInjectiveError(DomainError):
    """Two distinct faces received the same value."""

    def __init__(self, first, second, value, detail: Optional[str] = None):
        super().__init__(detail or f"not injective on T: g({first}) = g({second}) = {value}")
        self.pair = (first, second)


class AmbiguousBoundaryError(DomainError):
    """c sits exactly on an interval boundary of the piecewise formula."""


class CapacityError(ComputationError):
    """A configured size limit (or available memory) was exceeded."""
    exit_code = ExitCode.CAPACITY_ERROR
