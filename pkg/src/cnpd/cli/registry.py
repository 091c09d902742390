"""Command registration and lookup."""

import structlog

from cnpd.cli.base import Command
from cnpd.models.errors import CNPError, ErrorCode

logger = structlog.get_logger(__name__)


class CommandRegistry:
    """Registry of subcommands in registration order."""

    def __init__(self) -> None:
        self._commands: dict[str, Command] = {}

    def register(self, command: Command) -> None:
        """Register a command.

        Args:
            command: Command to register.

        Raises:
            ValueError: If a command with the same name exists.
        """
        if command.name in self._commands:
            raise ValueError(f"Command '{command.name}' is already registered")
        self._commands[command.name] = command
        logger.debug("command.registered", command=command.name)

    def get(self, name: str) -> Command | None:
        return self._commands.get(name)

    def get_or_raise(self, name: str) -> Command:
        """Get a command by name or raise a usage error.

        Args:
            name: Subcommand name.

        Returns:
            The command.

        Raises:
            CNPError: If no command has that name.
        """
        command = self.get(name)
        if command is None:
            raise CNPError(
                ErrorCode.USAGE_ERROR,
                f"Unknown command '{name}'",
                {"command": name, "available_commands": self.names()},
            )
        return command

    def list_all(self) -> list[Command]:
        return list(self._commands.values())

    def names(self) -> list[str]:
        return list(self._commands)


# Global registry instance
_registry: CommandRegistry | None = None


def get_registry() -> CommandRegistry:
    """Get the global command registry, registering the built-in commands once."""
    global _registry
    if _registry is None:
        from cnpd.cli.routes import register_commands

        _registry = CommandRegistry()
        register_commands(_registry)
    return _registry


def reset_registry() -> None:
    """Reset the global registry. Used for testing."""
    global _registry
    _registry = None
