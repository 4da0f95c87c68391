"""Logging configuration utilities for the CLI and library."""

from __future__ import annotations

import logging
from typing import Optional

_DECODER_LOGGERS = ("rmsp.decoders",)


# PUBLIC_INTERFACE
def configure_logging(log_level: str, *, decoder_log_level: Optional[str] = None) -> None:
    """
    PUBLIC_INTERFACE
    Configure process logging.

    Args:
        log_level: Logging level for the process (e.g. "INFO", "DEBUG").
        decoder_log_level: Optional override for the decoder loggers, which are
            verbose at DEBUG.

    Returns:
        None.
    """
    level = getattr(logging, log_level.upper(), logging.INFO)

    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )

    if decoder_log_level:
        decoder_level = getattr(logging, decoder_log_level.upper(), level)
        for name in _DECODER_LOGGERS:
            logging.getLogger(name).setLevel(decoder_level)
