"""Error handling middleware."""

import argparse
from collections.abc import Callable

import structlog

from cnpd.cli.base import CommandResult
from cnpd.models.errors import (
    EXIT_INTERNAL,
    CNPError,
    ErrorCode,
    ErrorDetail,
    ErrorResponse,
)

logger = structlog.get_logger(__name__)

Handler = Callable[[argparse.Namespace], CommandResult]


class ErrorHandlingMiddleware:
    """Turns raised errors into an error document and exit code."""

    def __init__(self, call_next: Handler) -> None:
        self._call_next = call_next

    def __call__(self, args: argparse.Namespace) -> CommandResult:
        """Run the command and catch any error.

        Args:
            args: Parsed arguments.

        Returns:
            Result from the command or an error result.
        """
        try:
            return self._call_next(args)
        except CNPError as e:
            logger.warning(
                "command.error",
                error_code=e.code.value,
                message=e.message,
                details=e.details,
                command=args.command,
            )
            return CommandResult(
                exit_code=e.exit_code,
                document=e.to_response().model_dump(mode="json"),
            )
        except Exception as e:
            logger.exception(
                "command.unhandled_error",
                error_type=type(e).__name__,
                message=str(e),
                command=args.command,
            )
            response = ErrorResponse(
                error=ErrorDetail(
                    code=ErrorCode.INTERNAL_ERROR,
                    message="An internal error occurred",
                    violated_clause=None,
                    details={"error_type": type(e).__name__},
                )
            )
            return CommandResult(
                exit_code=EXIT_INTERNAL, document=response.model_dump(mode="json")
            )
