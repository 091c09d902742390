"""Command-line entry point."""

import argparse
import logging
import sys
from collections.abc import Sequence
from typing import NoReturn, TextIO

import structlog

from cnpd import __version__
from cnpd.cli.base import CommandResult
from cnpd.cli.codec import dumps
from cnpd.cli.middleware.error import ErrorHandlingMiddleware
from cnpd.cli.middleware.logging import CommandLoggingMiddleware
from cnpd.cli.registry import CommandRegistry, get_registry
from cnpd.config import load_config
from cnpd.models.errors import EXIT_USAGE, CNPError, ErrorCode


def configure_logging(level: str = "warning", format: str = "json") -> None:
    """Configure structured logging on stderr.

    Args:
        level: Log level (debug, info, warning, error).
        format: Log format (json, text).
    """
    log_level = getattr(logging, level.upper(), logging.WARNING)

    processors = [
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.UnicodeDecoder(),
    ]

    if format == "json":
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer())

    structlog.configure(
        processors=processors,  # type: ignore[arg-type]
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )

    # stdout carries the result document only
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=log_level,
        force=True,
    )


class CommandLineParser(argparse.ArgumentParser):
    """Argument parser that exits with the usage code on bad input."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser(registry: CommandRegistry) -> CommandLineParser:
    """Parser with one subcommand per registered command.

    Args:
        registry: Commands to expose.

    Returns:
        Configured parser.
    """
    parser = CommandLineParser(
        prog="cnpd",
        description="Exact and numeric analysis of CNP Dirichlet series kernels.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", default=None, help="YAML configuration file")
    parser.add_argument(
        "--log-level",
        default=None,
        choices=["debug", "info", "warning", "error"],
        help="Override the configured log level",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    for command in registry.list_all():
        command.configure(subparsers.add_parser(command.name, help=command.help))
    return parser


def _dispatch(args: argparse.Namespace) -> CommandResult:
    command = get_registry().get_or_raise(args.command)
    return CommandResult(document=command.execute(args))


def _load_settings(args: argparse.Namespace) -> None:
    try:
        config = load_config(args.config)
    except FileNotFoundError as e:
        raise CNPError(
            ErrorCode.USAGE_ERROR, str(e), {"config": args.config}
        ) from e
    except ValueError as e:
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            str(e),
            {"violated_clause": "configuration"},
        ) from e
    configure_logging(
        level=args.log_level or config.logging.level,
        format=config.logging.format,
    )


def _emit(result: CommandResult, out: TextIO) -> int:
    out.write(dumps(result.document) + "\n")
    return result.exit_code


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None) -> int:
    """Parse arguments, run one command and print its JSON document.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:].
        stdout: Stream for the result document; defaults to sys.stdout.

    Returns:
        Process exit code.
    """
    out = stdout if stdout is not None else sys.stdout
    configure_logging(level="warning")

    parser = build_parser(get_registry())
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        _load_settings(args)
    except CNPError as e:
        return _emit(
            CommandResult(
                exit_code=e.exit_code, document=e.to_response().model_dump(mode="json")
            ),
            out,
        )

    pipeline = CommandLoggingMiddleware(ErrorHandlingMiddleware(_dispatch))
    return _emit(pipeline(args), out)


def main() -> None:
    """Console script entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
