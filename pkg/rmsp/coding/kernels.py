"""Min-sum successive-cancellation kernels.

All stage functions work along the last axis so a stack of paths can be processed at once.
For a node of length n = 2^s with halves a = alpha[:n/2] and b = alpha[n/2:], the node
codeword is (x_left xor x_right, x_right); ``f_stage`` estimates x_left and ``g_stage``
estimates x_right given x_left.
"""

from __future__ import annotations

import numpy as np


def _sgn(values: np.ndarray) -> np.ndarray:
    # sgn(0) = +1
    return np.where(values < 0, -1.0, 1.0)


def f_op(a: float, b: float) -> float:
    """min(|a|, |b|) sgn(a) sgn(b)."""
    sign = (-1.0 if a < 0 else 1.0) * (-1.0 if b < 0 else 1.0)
    return sign * min(abs(a), abs(b))


def g_op(a: float, b: float, c: int) -> float:
    """b + (1 - 2c) a."""
    return b + (1 - 2 * int(c)) * a


# PUBLIC_INTERFACE
def f_stage(alpha: np.ndarray) -> np.ndarray:
    """PUBLIC_INTERFACE: ``out[i] = f_op(alpha[i], alpha[i + n/2])``."""
    alpha = np.asarray(alpha, dtype=np.float64)
    h = alpha.shape[-1] // 2
    a, b = alpha[..., :h], alpha[..., h:]
    return _sgn(a) * _sgn(b) * np.minimum(np.abs(a), np.abs(b))


# PUBLIC_INTERFACE
def g_stage(alpha: np.ndarray, beta_left: np.ndarray) -> np.ndarray:
    """PUBLIC_INTERFACE: ``out[i] = g_op(alpha[i], alpha[i + n/2], beta_left[i])``."""
    alpha = np.asarray(alpha, dtype=np.float64)
    h = alpha.shape[-1] // 2
    bipolar = 1.0 - 2.0 * np.asarray(beta_left, dtype=np.float64)
    return alpha[..., h:] + bipolar * alpha[..., :h]


# PUBLIC_INTERFACE
def combine(beta_left: np.ndarray, beta_right: np.ndarray) -> np.ndarray:
    """PUBLIC_INTERFACE: Parent codeword ``(left xor right, right)`` from the child codewords."""
    left = np.asarray(beta_left, dtype=np.uint8)
    right = np.asarray(beta_right, dtype=np.uint8)
    return np.concatenate([left ^ right, right], axis=-1)


def pm_update(pm: float, alpha_bit: float, u_hat: int) -> float:
    """Path-metric penalty: add |alpha| when the decision disagrees with the LLR sign."""
    hard = 1 if alpha_bit < 0 else 0
    return pm + abs(alpha_bit) if int(u_hat) != hard else pm


def hard_decision(alpha: np.ndarray) -> np.ndarray:
    """Bit 1 where the LLR is negative (ties resolve to 0)."""
    return (np.asarray(alpha) < 0).astype(np.uint8)


def bipolar(bits: np.ndarray) -> np.ndarray:
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


# PUBLIC_INTERFACE
def fht(alpha: np.ndarray) -> np.ndarray:
    """
    PUBLIC_INTERFACE
    Walsh-Hadamard spectrum along the last axis via s in-place butterfly stages.

    Entry k equals sum_i alpha[i] (-1)^popcount(i & k), the correlation of alpha with the
    bipolar evaluation of the linear Boolean function with coefficient vector bits(k).
    """
    w = np.array(alpha, dtype=np.float64, copy=True)
    n = w.shape[-1]
    h = 1
    while h < n:
        view = w.reshape(w.shape[:-1] + (-1, 2, h))
        top = view[..., 0, :].copy()
        bottom = view[..., 1, :]
        view[..., 0, :] = top + bottom
        view[..., 1, :] = top - bottom
        h <<= 1
    return w


def rank_key(values: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """
    Comparison key for metrics: values normalized by ``scale`` and rounded to 1e-9.

    Metrics that agree up to floating-point summation order compare equal, so ties fall
    through to the index order and results do not depend on the LLR scale.
    """
    return np.round(np.asarray(values, dtype=np.float64) / scale, 9)
