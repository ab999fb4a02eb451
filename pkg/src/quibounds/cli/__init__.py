"""quibounds CLI module."""

from quibounds.cli.main import cli

__all__ = ["cli"]
