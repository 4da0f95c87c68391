from __future__ import annotations

from typing import Callable, Tuple

import numpy as np
import pytest

from rmsp.channel.awgn import llr, sigma_from_ebn0, transmit
from rmsp.coding.rm_code import RmCode, encode, random_message
from rmsp.core.config import reset_settings_cache

Frame = Tuple[np.ndarray, np.ndarray]


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def make_frame() -> Callable[..., Frame]:
    """Return ``(codeword, llrs)`` for a random message sent at ``ebn0_db``."""

    def _make(code: RmCode, ebn0_db: float, gen: np.random.Generator) -> Frame:
        x = encode(code, random_message(code, gen))
        sigma = sigma_from_ebn0(ebn0_db, code.rate)
        return x, llr(transmit(x, sigma, gen), sigma)

    return _make


@pytest.fixture
def noiseless_llrs() -> Callable[[np.ndarray], np.ndarray]:
    return lambda x: 20.0 * (1.0 - 2.0 * np.asarray(x, dtype=np.float64))


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch: pytest.MonkeyPatch):
    keys = ("APP_VERSION", "LOG_LEVEL", "DEFAULT_SEED", "WORKERS", "MAX_FRAMES", "TARGET_ERRORS")
    for key in keys:
        monkeypatch.delenv(key, raising=False)
    reset_settings_cache()
    yield
    reset_settings_cache()
