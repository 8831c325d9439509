"""
error_handlers.py 🚨
---------------------
Process-level exception handling for the command line.

Features:
- Centralized AppError type carrying a process exit code
- Scenario, log-directory and invariant failures as subclasses
- Unified logging output with contextual metadata
"""

import functools
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, TypeVar

import click

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_SCENARIO_ERROR = 1
EXIT_INVARIANT_VIOLATION = 2

F = TypeVar("F", bound=Callable[..., Any])


# 💥 Custom exception type for app-specific error handling
class AppError(Exception):
    exit_code: int = EXIT_INVARIANT_VIOLATION

    def __init__(self, message: str, exit_code: Optional[int] = None, details: Optional[Dict[str, Any]] = None):
        self.message = message
        if exit_code is not None:
            self.exit_code = exit_code
        self.details = details or {}
        super().__init__(self.message)

    def __reduce__(self):
        # picklable across worker processes whatever the subclass __init__ takes
        return (_rebuild_error, (type(self), self.message, self.exit_code, self.details))


def _rebuild_error(cls, message: str, exit_code: int, details: Dict[str, Any]) -> "AppError":
    error = cls.__new__(cls)
    AppError.__init__(error, message, exit_code, details)
    return error


class ScenarioError(AppError):
    """Scenario text could not be parsed, or the parsed scenario is invalid."""
    exit_code = EXIT_SCENARIO_ERROR

    @property
    def report(self) -> List[str]:
        return list(self.details.get("report", []))


class LogDirectoryError(AppError):
    """Log files needed by an export are missing or unreadable."""
    exit_code = EXIT_SCENARIO_ERROR


class InvariantViolation(AppError):
    """An internal guarantee broke during a run; indicates a bug, not bad input."""
    exit_code = EXIT_INVARIANT_VIOLATION


class ReservationConflict(InvariantViolation):
    def __init__(self, cell, step: int, owner: int, intruder: int):
        super().__init__(
            f"(cell {tuple(cell)}, step {step}) already booked by agent {owner}; agent {intruder} tried to book it",
            details={"cell": tuple(cell), "step": step, "owner": owner, "intruder": intruder},
        )


# 🔧 Wrap a click command so AppErrors become exit codes
def handle_app_errors(func: F) -> F:
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except AppError as exc:
            logger.error(
                f"[{type(exc).__name__}] {exc.message} (exit {exc.exit_code})",
                extra={"details": exc.details},
            )
            click.echo(f"error: {exc.message}", err=True)
            for line in exc.details.get("report", []):
                click.echo(f"  - {line}", err=True)
            sys.exit(exc.exit_code)
        except (click.exceptions.Exit, click.exceptions.Abort, click.ClickException):
            raise
        except Exception as exc:
            # 🧨 Global fallback for unhandled exceptions
            logger.error(f"Unhandled error: {exc}", exc_info=True)
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INVARIANT_VIOLATION)

    return wrapper  # type: ignore[return-value]
