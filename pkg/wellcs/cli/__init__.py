from wellcs.cli.commands import cli

__all__ = ["cli"]
