"""Affine index permutations over GF(2)^s.

An ``AffinePerm`` maps index i to idx(A . bits(i) xor b) with A invertible over GF(2).
These are exactly the automorphisms of every RM(r, s) code (the general affine group);
the stage permutations of the factor graph are the subset with a permutation matrix A
and b = 0.

Vectors are permuted by forward scatter: ``out[p(i)] = v[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable

import numpy as np

from rmsp.domain.errors import InvalidParameterError

PermutationSampler = Callable[[int, np.random.Generator], "AffinePerm"]


def gf2_rank(matrix: np.ndarray) -> int:
    """Rank of a binary matrix over GF(2)."""
    work = np.array(matrix, dtype=np.uint8, copy=True) & 1
    rows, cols = work.shape
    rank = 0
    for col in range(cols):
        pivots = np.flatnonzero(work[rank:, col])
        if pivots.size == 0:
            continue
        pivot = rank + int(pivots[0])
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        below = np.flatnonzero(work[rank + 1 :, col]) + rank + 1
        work[below] ^= work[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def gf2_inverse(matrix: np.ndarray) -> np.ndarray:
    """Inverse of a square binary matrix over GF(2) by Gauss-Jordan elimination."""
    a = np.array(matrix, dtype=np.uint8, copy=True) & 1
    s = a.shape[0]
    if a.shape != (s, s):
        raise InvalidParameterError(f"expected a square matrix, got shape {a.shape}")
    aug = np.concatenate([a, np.eye(s, dtype=np.uint8)], axis=1)
    for col in range(s):
        pivots = np.flatnonzero(aug[col:, col])
        if pivots.size == 0:
            raise InvalidParameterError("matrix is singular over GF(2)")
        pivot = col + int(pivots[0])
        if pivot != col:
            aug[[col, pivot]] = aug[[pivot, col]]
        others = np.flatnonzero(aug[:, col])
        others = others[others != col]
        aug[others] ^= aug[col]
    return aug[:, s:].copy()


def _index_bits(s: int) -> np.ndarray:
    idx = np.arange(1 << s)
    return ((idx[:, None] >> np.arange(s)[None, :]) & 1).astype(np.uint8)


@dataclass(frozen=True, eq=False)
class AffinePerm:
    """Index permutation i -> idx(A . bits(i) xor b) of {0, ..., 2^s - 1}."""

    A: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        a = np.array(self.A, dtype=np.uint8, copy=True) & 1
        b = np.array(self.b, dtype=np.uint8, copy=True).reshape(-1) & 1
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise InvalidParameterError(f"A must be a non-empty square matrix, got {a.shape}")
        if b.shape != (a.shape[0],):
            raise InvalidParameterError(f"b must have length {a.shape[0]}, got {b.shape}")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "b", b)

    @property
    def s(self) -> int:
        return int(self.A.shape[0])

    @cached_property
    def index_map(self) -> np.ndarray:
        """``index_map[i]`` is the image of index i."""
        image = (_index_bits(self.s).astype(np.int64) @ self.A.T.astype(np.int64)) & 1
        image ^= self.b
        out = (image << np.arange(self.s)).sum(axis=1)
        out.setflags(write=False)
        return out

    @cached_property
    def inverse(self) -> AffinePerm:
        a_inv = gf2_inverse(self.A)
        return AffinePerm(a_inv, (a_inv.astype(np.int64) @ self.b) & 1)

    def is_identity(self) -> bool:
        return not self.b.any() and np.array_equal(self.A, np.eye(self.s, dtype=np.uint8))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AffinePerm):
            return NotImplemented
        return np.array_equal(self.A, other.A) and np.array_equal(self.b, other.b)

    def __hash__(self) -> int:
        return hash((self.A.tobytes(), self.b.tobytes(), self.s))

    def __repr__(self) -> str:
        return f"AffinePerm(s={self.s}, {to_text(self)!r})"


# PUBLIC_INTERFACE
@lru_cache(maxsize=None)
def identity(s: int) -> AffinePerm:
    """PUBLIC_INTERFACE: The identity permutation of {0, ..., 2^s - 1}."""
    if s < 1:
        raise InvalidParameterError(f"s must be >= 1, got {s}")
    return AffinePerm(np.eye(s, dtype=np.uint8), np.zeros(s, dtype=np.uint8))


# PUBLIC_INTERFACE
def sample_affine(s: int, rng: np.random.Generator) -> AffinePerm:
    """
    PUBLIC_INTERFACE
    Draw a uniform element of the general affine group GA(s, 2).

    A is rejection-sampled (uniform binary matrices until one is invertible); b is uniform.
    """
    if s < 1:
        raise InvalidParameterError(f"s must be >= 1, got {s}")
    while True:
        a = rng.integers(0, 2, size=(s, s), dtype=np.uint8)
        if gf2_rank(a) == s:
            break
    b = rng.integers(0, 2, size=s, dtype=np.uint8)
    return AffinePerm(a, b)


# PUBLIC_INTERFACE
def sample_stage_perm(s: int, rng: np.random.Generator) -> AffinePerm:
    """
    PUBLIC_INTERFACE
    Draw a uniform factor-graph (stage) permutation: bit k of the index moves to bit order[k].
    """
    if s < 1:
        raise InvalidParameterError(f"s must be >= 1, got {s}")
    order = rng.permutation(s)
    return stage_perm(order)


def stage_perm(order: np.ndarray) -> AffinePerm:
    """Stage permutation moving index bit k to bit ``order[k]``."""
    order = np.asarray(order, dtype=np.int64)
    s = order.size
    if sorted(order.tolist()) != list(range(s)):
        raise InvalidParameterError(f"{order.tolist()} is not a permutation of 0..{s - 1}")
    a = np.zeros((s, s), dtype=np.uint8)
    a[order, np.arange(s)] = 1
    return AffinePerm(a, np.zeros(s, dtype=np.uint8))


# PUBLIC_INTERFACE
def apply_index(p: AffinePerm, i: int) -> int:
    """PUBLIC_INTERFACE: Image of index ``i`` under ``p``."""
    if not 0 <= i < (1 << p.s):
        raise InvalidParameterError(f"index {i} out of range for s={p.s}")
    return int(p.index_map[i])


# PUBLIC_INTERFACE
def permute_vector(p: AffinePerm, v: np.ndarray) -> np.ndarray:
    """PUBLIC_INTERFACE: Forward scatter along the last axis, ``out[..., p(i)] = v[..., i]``."""
    v = np.asarray(v)
    if v.shape[-1] != (1 << p.s):
        raise InvalidParameterError(f"vector length {v.shape[-1]} does not match s={p.s}")
    out = np.empty_like(v)
    out[..., p.index_map] = v
    return out


def unpermute_vector(p: AffinePerm, v: np.ndarray) -> np.ndarray:
    """Equivalent to ``permute_vector(invert(p), v)`` without building the inverse."""
    v = np.asarray(v)
    if v.shape[-1] != (1 << p.s):
        raise InvalidParameterError(f"vector length {v.shape[-1]} does not match s={p.s}")
    return v[..., p.index_map]


# PUBLIC_INTERFACE
def invert(p: AffinePerm) -> AffinePerm:
    """PUBLIC_INTERFACE: (A^-1, A^-1 b)."""
    return p.inverse


# PUBLIC_INTERFACE
def compose(p: AffinePerm, q: AffinePerm) -> AffinePerm:
    """PUBLIC_INTERFACE: Apply ``q`` first, then ``p``: (A_p A_q, A_p b_q xor b_p)."""
    if p.s != q.s:
        raise InvalidParameterError(f"cannot compose permutations of sizes {p.s} and {q.s}")
    a_p = p.A.astype(np.int64)
    a = (a_p @ q.A.astype(np.int64)) & 1
    b = ((a_p @ q.b.astype(np.int64)) & 1) ^ p.b
    return AffinePerm(a, b)


def to_text(p: AffinePerm) -> str:
    """Serialize as ``"row0,row1,...;b"`` in hex, column j of a row (or b_j) at bit j."""
    weights = 1 << np.arange(p.s)
    rows = ",".join(format(int(row @ weights), "x") for row in p.A.astype(np.int64))
    return f"{rows};{int(p.b.astype(np.int64) @ weights):x}"


def from_text(s: int, text: str) -> AffinePerm:
    """Parse the ``to_text`` format; rejects malformed input and singular matrices."""
    try:
        rows_part, b_part = text.strip().split(";")
        rows = [int(tok, 16) for tok in rows_part.split(",")]
        b_val = int(b_part, 16)
    except ValueError as exc:
        raise InvalidParameterError(f"malformed permutation text {text!r}") from exc
    if len(rows) != s or any(row >> s for row in rows) or b_val >> s:
        raise InvalidParameterError(f"permutation text {text!r} does not describe s={s}")
    bits = np.arange(s)
    a = ((np.array(rows, dtype=np.int64)[:, None] >> bits[None, :]) & 1).astype(np.uint8)
    if gf2_rank(a) != s:
        raise InvalidParameterError(f"permutation text {text!r} has a singular matrix")
    return AffinePerm(a, (b_val >> bits) & 1)
