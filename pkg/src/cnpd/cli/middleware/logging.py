"""Command logging middleware."""

import argparse
import time
import uuid

import structlog

from cnpd.cli.base import CommandResult
from cnpd.cli.middleware.error import Handler

logger = structlog.get_logger(__name__)


class CommandLoggingMiddleware:
    """Logs each command with a short id and its duration."""

    def __init__(self, call_next: Handler) -> None:
        self._call_next = call_next

    def __call__(self, args: argparse.Namespace) -> CommandResult:
        command_id = str(uuid.uuid4())[:8]
        start_time = time.perf_counter()

        logger.info("command.received", command_id=command_id, command=args.command)

        result = self._call_next(args)

        duration_ms = (time.perf_counter() - start_time) * 1000
        logger.info(
            "command.completed",
            command_id=command_id,
            command=args.command,
            exit_code=result.exit_code,
            duration_ms=round(duration_ms, 2),
        )
        return result
