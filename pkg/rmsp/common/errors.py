"""Problem Details envelope for CLI failures.

Errors leave the CLI as an RFC7807-style JSON object on stderr; ``status`` carries the
process exit code instead of an HTTP status.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

EXIT_CONFIGURATION = 2
EXIT_UNSUPPORTED = 3
EXIT_INTERNAL = 1
EXIT_INTERRUPTED = 130


class ProblemDetail(BaseModel):
    """
    RFC7807 Problem Details body.

    Notes:
        The optional `errors` extension carries pydantic validation failures.
    """

    type: str = Field(
        default="about:blank",
        description="A URI reference that identifies the problem type.",
        examples=["about:blank"],
    )
    title: str = Field(
        ...,
        description="Short, human-readable summary of the problem type.",
        examples=["Configuration error"],
    )
    status: int = Field(..., description="Process exit code.", examples=[2])
    detail: Optional[str] = Field(
        default=None,
        description="Human-readable explanation specific to this occurrence.",
        examples=["decoder ssp-rld needs 1 <= r <= m-1, got RM(0,5)"],
    )
    instance: Optional[str] = Field(
        default=None,
        description="The CLI command that failed.",
        examples=["rmsp simulate"],
    )
    errors: Optional[List[Dict[str, Any]]] = Field(
        default=None,
        description="Machine-readable field errors, shaped like pydantic error objects.",
    )


_TITLES: Dict[int, str] = {
    EXIT_CONFIGURATION: "Configuration error",
    EXIT_UNSUPPORTED: "Unsupported operation",
    EXIT_INTERNAL: "Internal error",
    EXIT_INTERRUPTED: "Interrupted",
}


# PUBLIC_INTERFACE
def problem(
    status: int,
    detail: Optional[str],
    *,
    instance: Optional[str] = None,
    errors: Optional[List[Dict[str, Any]]] = None,
) -> ProblemDetail:
    """PUBLIC_INTERFACE: Build a ProblemDetail with the stable title for ``status``."""
    return ProblemDetail(
        title=_TITLES.get(status, "Error"),
        status=status,
        detail=detail,
        instance=instance,
        errors=errors,
    )
