"""Domain-layer exceptions."""

from __future__ import annotations


class RmspError(Exception):
    """Base class for all library errors."""


class InvalidParameterError(RmspError, ValueError):
    """Raised for out-of-range code, permutation, decoder or channel parameters."""


class UnsupportedNodeError(RmspError):
    """Raised when a decoder is asked to handle an order outside 1 <= r <= m-1."""


class ContractViolationError(RmspError):
    """Raised when an internal pre-condition is broken (wrong node type, frozen bit set)."""


class OracleLimitError(RmspError):
    """Raised when codeword enumeration is refused because the dimension is too large."""


class ConfigurationError(RmspError):
    """Raised when a simulation configuration is rejected."""
