"""Unit-energy BPSK over an AWGN channel."""

from __future__ import annotations

import math

import numpy as np

from rmsp.domain.errors import InvalidParameterError

# sigma used by noiseless sanity runs (LLRs must stay finite)
NOISELESS_SIGMA = 1e-3


def sigma_from_ebn0(ebn0_db: float, rate: float) -> float:
    """Noise standard deviation with sigma^2 = 1 / (2 R 10^(Eb/N0 / 10))."""
    if not 0.0 < rate <= 1.0:
        raise InvalidParameterError(f"rate must lie in (0, 1], got {rate}")
    if not math.isfinite(ebn0_db):
        raise InvalidParameterError(f"Eb/N0 must be finite, got {ebn0_db}")
    return math.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0)))


# PUBLIC_INTERFACE
def transmit(x: np.ndarray, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """PUBLIC_INTERFACE: y = (1 - 2x) + z with z ~ N(0, sigma^2) i.i.d."""
    if sigma < 0:
        raise InvalidParameterError(f"sigma must be >= 0, got {sigma}")
    symbols = 1.0 - 2.0 * np.asarray(x, dtype=np.float64)
    return symbols + sigma * rng.standard_normal(symbols.shape)


# PUBLIC_INTERFACE
def llr(y: np.ndarray, sigma: float) -> np.ndarray:
    """PUBLIC_INTERFACE: Channel LLRs 2y / sigma^2."""
    if sigma <= 0:
        raise InvalidParameterError(f"sigma must be > 0, got {sigma}")
    return 2.0 * np.asarray(y, dtype=np.float64) / (sigma * sigma)
