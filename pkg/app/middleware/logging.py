"""
Command logging.
Logs every command invocation with a request id and its processing time.
"""

import functools
import logging
import time
import uuid

logger = logging.getLogger(__name__)


def log_command(command):
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        request_id = uuid.uuid4().hex[:8]
        arguments = ", ".join(f"{k}={v!r}" for k, v in kwargs.items())
        logger.info(f"[{request_id}] {command.__name__}({arguments})")

        exit_code = command(*args, **kwargs)

        process_time = time.perf_counter() - start_time
        logger.info(f"[{request_id}] Completed in {process_time:.3f}s - Exit: {exit_code}")
        return exit_code

    return wrapper
