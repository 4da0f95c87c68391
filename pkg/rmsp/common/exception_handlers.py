"""Centralized exception handling for CLI commands.

Every command body runs inside :func:`cli_error_boundary`, which turns domain and
validation failures into a Problem Details JSON object on stderr and a stable exit code.
"""

from __future__ import annotations

import json
import logging
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List

import typer
from pydantic import ValidationError

from rmsp.common.errors import (
    EXIT_CONFIGURATION,
    EXIT_INTERNAL,
    EXIT_INTERRUPTED,
    EXIT_UNSUPPORTED,
    ProblemDetail,
    problem,
)
from rmsp.domain.errors import (
    ConfigurationError,
    InvalidParameterError,
    OracleLimitError,
    UnsupportedNodeError,
)

logger = logging.getLogger(__name__)


def _validation_errors(exc: ValidationError) -> List[Dict[str, Any]]:
    # ctx may hold exception objects, which are not JSON-able.
    return [
        {"loc": list(err.get("loc", ())), "msg": err.get("msg"), "type": err.get("type")}
        for err in exc.errors()
    ]


def emit_problem(detail: ProblemDetail) -> None:
    typer.echo(json.dumps(detail.model_dump(exclude_none=True)), err=True)


# PUBLIC_INTERFACE
@contextmanager
def cli_error_boundary(command: str) -> Iterator[None]:
    """
    PUBLIC_INTERFACE
    Map exceptions raised inside a CLI command to Problem Details plus an exit code.

    Exit codes:
        2: configuration or parameter errors (including pydantic validation)
        3: unsupported node or oracle limit
        1: anything else (logged with traceback)
        130: keyboard interrupt

    Typer's own Exit/Abort/BadParameter pass through untouched.
    """
    try:
        yield
    except (typer.Exit, typer.Abort, typer.BadParameter):
        raise
    except ValidationError as exc:
        emit_problem(
            problem(
                EXIT_CONFIGURATION,
                f"{exc.error_count()} invalid field(s)",
                instance=command,
                errors=_validation_errors(exc),
            )
        )
        raise SystemExit(EXIT_CONFIGURATION) from None
    except (ConfigurationError, InvalidParameterError) as exc:
        emit_problem(problem(EXIT_CONFIGURATION, str(exc), instance=command))
        raise SystemExit(EXIT_CONFIGURATION) from None
    except (OracleLimitError, UnsupportedNodeError) as exc:
        emit_problem(problem(EXIT_UNSUPPORTED, str(exc), instance=command))
        raise SystemExit(EXIT_UNSUPPORTED) from None
    except KeyboardInterrupt:
        emit_problem(problem(EXIT_INTERRUPTED, "Interrupted by user.", instance=command))
        raise SystemExit(EXIT_INTERRUPTED) from None
    except Exception as exc:  # noqa: BLE001
        logger.error("Unhandled exception in %s: %s", command, exc, exc_info=True)
        emit_problem(problem(EXIT_INTERNAL, "An unexpected error occurred.", instance=command))
        raise SystemExit(EXIT_INTERNAL) from None
