"""Command registry - base classes for CLI commands."""

import argparse
import traceback
from typing import Any, Callable, Dict, List, Optional, Sequence

from tsvf.errors import UndefinedWeakValue
from utils.logger import logger

# Errors a command reports and exits 1 on; anything else is a bug (exit 2).
DOMAIN_ERRORS = (ValueError, KeyError, OSError, UndefinedWeakValue)


class Command:
    """A subcommand of the command-line tool."""

    def __init__(
        self,
        name: str,
        description: str,
        parameters: Dict[str, Dict[str, Any]],
        handler: Callable[..., Any],
    ):
        self.name = name
        self.description = description
        self.parameters = parameters
        self.handler = handler

    def add_to(self, subparsers) -> argparse.ArgumentParser:
        """Register as an argparse subparser."""
        parser = subparsers.add_parser(self.name, help=self.description, description=self.description)
        for flag, spec in self.parameters.items():
            parser.add_argument(flag, **spec)
        return parser

    def handler_kwargs(self, args: argparse.Namespace) -> Dict[str, Any]:
        names = [flag.lstrip("-").replace("-", "_") for flag in self.parameters]
        return {name: getattr(args, name) for name in names}


class CommandRegistry:
    """Registry of available commands."""

    def __init__(self):
        self.commands: Dict[str, Command] = {}

    def register(self, command: Command) -> None:
        """Register a command."""
        self.commands[command.name] = command

    def get_command(self, name: str) -> Command:
        """Get a command by name."""
        if name not in self.commands:
            raise ValueError(f"Unknown command: {name}")
        return self.commands[name]

    def get_all_commands(self) -> List[Command]:
        """Get all registered commands."""
        return list(self.commands.values())

    def build_parser(self, prog: str, description: str) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog=prog, description=description)
        subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
        for command in self.get_all_commands():
            command.add_to(subparsers)
        return parser

    def execute(self, name: str, args: argparse.Namespace) -> int:
        """Run a command and map its outcome to an exit status."""
        command = self.get_command(name)
        try:
            command.handler(**command.handler_kwargs(args))
            return 0
        except DOMAIN_ERRORS as e:
            message = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
            logger.failure(f"{name}: {message}")
            return 1
        except Exception:
            traceback.print_exc()
            return 2

    def main(self, argv: Optional[Sequence[str]], prog: str, description: str) -> int:
        args = self.build_parser(prog, description).parse_args(argv)
        return self.execute(args.command, args)
