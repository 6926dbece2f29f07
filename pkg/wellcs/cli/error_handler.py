import functools
import logging
from typing import Callable, TypeVar

import click

from wellcs.core.exceptions import (
    ConfigurationError,
    DomainError,
    NumericalContractError,
    WellCSException,
)

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable)

EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, (ConfigurationError, DomainError)):
        return EXIT_CONFIG
    if isinstance(error, NumericalContractError):
        return EXIT_NUMERICAL
    return EXIT_FAILURE


def handle_errors(command: F) -> F:
    """Turn exceptions raised by a command into the exit-code contract."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)

        except WellCSException as e:
            logger.error(
                "Application error",
                extra={
                    "error_type": type(e).__name__,
                    "error_code": e.error_code,
                    "error_message": e.message,
                    "command": command.__name__,
                },
            )
            click.echo(f"error [{e.error_code}]: {e.message}", err=True)
            raise click.exceptions.Exit(exit_code_for(e))

        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise

        except Exception as e:
            logger.error(
                "Unexpected error",
                extra={"error_type": type(e).__name__, "error": str(e), "command": command.__name__},
            )
            click.echo(f"error: {e}", err=True)
            raise click.exceptions.Exit(EXIT_FAILURE)

    return wrapper  # type: ignore[return-value]
