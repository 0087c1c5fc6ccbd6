"""
Command wrappers: error handling and logging
"""

from .logging import log_command
from .error_handling import handle_errors

__all__ = [
    "log_command",
    "handle_errors",
]
