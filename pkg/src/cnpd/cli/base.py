"""Command protocol and result type."""

import argparse
from abc import ABC, abstractmethod
from typing import Any

from pydantic import BaseModel, Field


class CommandResult(BaseModel):
    """Exit code and the single JSON document a command prints."""

    exit_code: int = Field(0, description="Process exit code")
    document: dict[str, Any] = Field(..., description="JSON result or error envelope")


class Command(ABC):
    """A subcommand bound to one library operation."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Subcommand name as typed on the command line."""
        ...

    @property
    @abstractmethod
    def help(self) -> str:
        """One-line description for the usage text."""
        ...

    @abstractmethod
    def configure(self, parser: argparse.ArgumentParser) -> None:
        """Declare the command's arguments.

        Args:
            parser: Subparser owned by this command.
        """
        ...

    @abstractmethod
    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        """Run the operation.

        Args:
            args: Parsed arguments.

        Returns:
            JSON-ready result document.

        Raises:
            CNPError: If the operation rejects its input.
        """
        ...
