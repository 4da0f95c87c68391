"""Reed-Muller code construction and encoding.

Index convention: bit k of index i is ``(i >> k) & 1`` (bit 0 is the least significant).
Row i of the m-th Kronecker power of G = [[1, 0], [1, 1]] has weight 2^popcount(i), so
RM(r, m) keeps exactly the rows with popcount(i) >= m - r as information positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Tuple

import numpy as np

from rmsp.domain.errors import ContractViolationError, InvalidParameterError, OracleLimitError

CODEWORD_SET_MAX_K = 20


def popcount(indices: np.ndarray, width: int) -> np.ndarray:
    """Number of set bits of each entry in ``indices`` (only the low ``width`` bits count)."""
    indices = np.asarray(indices, dtype=np.int64)
    total = np.zeros(indices.shape, dtype=np.int64)
    for k in range(width):
        total += (indices >> k) & 1
    return total


@dataclass(frozen=True)
class RmCode:
    """RM(r, m) parameters plus the frozen / information partition."""

    r: int
    m: int
    frozen: np.ndarray = field(compare=False, repr=False)
    info: Tuple[int, ...] = field(compare=False, repr=False)

    @property
    def N(self) -> int:  # noqa: N802
        return 1 << self.m

    @property
    def K(self) -> int:  # noqa: N802
        return len(self.info)

    @property
    def d(self) -> int:
        return 1 << (self.m - self.r)

    @property
    def rate(self) -> float:
        return self.K / self.N

    @property
    def label(self) -> str:
        return f"RM({self.r},{self.m})"


# PUBLIC_INTERFACE
@lru_cache(maxsize=None)
def build_code(r: int, m: int) -> RmCode:
    """
    PUBLIC_INTERFACE
    Build RM(r, m).

    Args:
        r: Order, 0 <= r <= m.
        m: Log2 of the code length, m >= 1.

    Returns:
        RmCode with N = 2^m, K = sum_{i<=r} C(m, i) and d = 2^(m-r).

    Raises:
        InvalidParameterError: when r or m is out of range.
    """
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise InvalidParameterError(f"m must be an integer >= 1, got {m!r}")
    if not isinstance(r, (int, np.integer)) or r < 0 or r > m:
        raise InvalidParameterError(f"r must satisfy 0 <= r <= m (m={m}), got {r!r}")
    r, m = int(r), int(m)

    weights = popcount(np.arange(1 << m), m)
    frozen = weights < (m - r)
    frozen.setflags(write=False)
    info = tuple(int(i) for i in np.flatnonzero(~frozen))
    return RmCode(r=r, m=m, frozen=frozen, info=info)


def polar_transform(bits: np.ndarray) -> np.ndarray:
    """
    Multiply by G^{(x)m} over GF(2) along the last axis with the XOR butterfly.

    The transform is an involution, so it also maps a codeword back to its message.
    """
    x = np.array(bits, dtype=np.uint8, copy=True)
    n = x.shape[-1]
    h = 1
    while h < n:
        view = x.reshape(x.shape[:-1] + (-1, 2, h))
        view[..., 0, :] ^= view[..., 1, :]
        h <<= 1
    return x


def _as_bits(code: RmCode, v: np.ndarray, what: str) -> np.ndarray:
    arr = np.asarray(v)
    if arr.shape[-1:] != (code.N,):
        raise ContractViolationError(f"{what} must have length {code.N}, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() > 1):
        raise ContractViolationError(f"{what} must be binary")
    return arr.astype(np.uint8)


# PUBLIC_INTERFACE
def encode(code: RmCode, u: np.ndarray) -> np.ndarray:
    """
    PUBLIC_INTERFACE
    Encode a length-N message (frozen positions zero) as x = u G^{(x)m}.

    Raises:
        ContractViolationError: on wrong length, non-binary entries or a set frozen bit.
    """
    u = _as_bits(code, u, "message")
    if u[..., code.frozen].any():
        raise ContractViolationError("message has nonzero frozen positions")
    return polar_transform(u)


def is_codeword(code: RmCode, x: np.ndarray) -> bool:
    """Syndrome check: x is a codeword iff its inverse transform vanishes on frozen indices."""
    x = _as_bits(code, x, "word")
    return not polar_transform(x)[..., code.frozen].any()


def extract_message(code: RmCode, x: np.ndarray) -> np.ndarray:
    """Return the K information bits carried by codeword ``x``."""
    u = polar_transform(_as_bits(code, x, "codeword"))
    if u[code.frozen].any():
        raise ContractViolationError("word is not a codeword")
    return u[list(code.info)]


def random_message(code: RmCode, rng: np.random.Generator) -> np.ndarray:
    """Uniform information bits on the info positions, zeros elsewhere."""
    u = np.zeros(code.N, dtype=np.uint8)
    u[list(code.info)] = rng.integers(0, 2, size=code.K, dtype=np.uint8)
    return u


# PUBLIC_INTERFACE
@lru_cache(maxsize=32)
def codeword_set(code: RmCode, limit: int = CODEWORD_SET_MAX_K) -> np.ndarray:
    """
    PUBLIC_INTERFACE
    Enumerate all 2^K codewords (row j encodes the message whose k-th info bit is bit k of j).

    Returns:
        Read-only uint8 array of shape (2^K, N); row 0 is the all-zero codeword.

    Raises:
        OracleLimitError: when K exceeds ``limit`` (at most 20).
    """
    limit = min(limit, CODEWORD_SET_MAX_K)
    if code.K > limit:
        raise OracleLimitError(f"refusing to enumerate 2^{code.K} codewords of {code.label}")
    patterns = (np.arange(1 << code.K)[:, None] >> np.arange(code.K)[None, :]) & 1
    messages = np.zeros((1 << code.K, code.N), dtype=np.uint8)
    messages[:, list(code.info)] = patterns
    book = polar_transform(messages)
    book.setflags(write=False)
    return book
