"""Brute-force ML decoding and the ML lower-bound event test for small codes."""

from __future__ import annotations

import numpy as np

from rmsp.coding.kernels import bipolar, rank_key
from rmsp.coding.rm_code import RmCode, codeword_set
from rmsp.domain.errors import OracleLimitError

ML_ORACLE_MAX_K = 16


def correlation(x: np.ndarray, alpha: np.ndarray) -> float:
    """sum_i (1 - 2 x_i) alpha_i."""
    return float(bipolar(x) @ np.asarray(alpha, dtype=np.float64))


def _scale(alpha: np.ndarray) -> float:
    return float(np.mean(np.abs(alpha))) or 1.0


# PUBLIC_INTERFACE
def ml_oracle_decode(
    alpha: np.ndarray, code: RmCode, *, max_k: int = ML_ORACLE_MAX_K
) -> np.ndarray:
    """
    PUBLIC_INTERFACE
    Maximum-correlation codeword over the whole codebook; the lowest codebook index wins ties.

    Raises:
        OracleLimitError: when K exceeds ``max_k``.
    """
    if code.K > max_k:
        raise OracleLimitError(f"ML oracle limited to K <= {max_k}, {code.label} has K={code.K}")
    alpha = np.asarray(alpha, dtype=np.float64)
    book = codeword_set(code)
    scores = bipolar(book) @ alpha
    return book[int(np.argmax(rank_key(scores, _scale(alpha))))].copy()


# PUBLIC_INTERFACE
def ml_bound_flag(x_hat: np.ndarray, x_true: np.ndarray, alpha: np.ndarray) -> bool:
    """
    PUBLIC_INTERFACE
    True when the decoder erred with an output at least as likely as the transmitted word,
    i.e. an ML decoder would have failed on this frame too.
    """
    if np.array_equal(np.asarray(x_hat), np.asarray(x_true)):
        return False
    scale = _scale(alpha)
    keys = rank_key(np.array([correlation(x_hat, alpha), correlation(x_true, alpha)]), scale)
    return bool(keys[0] >= keys[1])
