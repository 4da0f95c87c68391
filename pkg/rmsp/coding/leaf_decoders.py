"""List decoders for the leaves of the recursion: first-order RM nodes and SPC nodes.

Both merge the candidates of every input path and keep the L best globally. Output paths
carry ``l_org`` = index of the input path they extend.
"""

from __future__ import annotations

from functools import lru_cache
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from rmsp.coding.automorphism import identity
from rmsp.coding.kernels import fht, hard_decision
from rmsp.coding.paths import CandidateList, DecodePath, NodeRef, prune
from rmsp.coding.rm_code import build_code, codeword_set
from rmsp.cost.ledger import CostLedger, ceil_log2, charge_abs_sum, charge_fht
from rmsp.domain.errors import ContractViolationError


class FirstOrderTable(NamedTuple):
    """RM(1, s) codebook with, per codeword, its spectrum index and sign."""

    codebook: np.ndarray
    spectrum_index: np.ndarray
    sign: np.ndarray


@lru_cache(maxsize=None)
def first_order_table(s: int) -> FirstOrderTable:
    """
    Codeword c ^ <k, i> has correlation (-1)^c * fht(alpha)[k] with alpha.

    Rows follow ``codeword_set(RM(1, s))`` so ties break like the brute-force ML oracle.
    """
    book = codeword_set(build_code(1, s))
    constant = book[:, 0].astype(np.int64)
    k = np.zeros(book.shape[0], dtype=np.int64)
    for bit in range(s):
        k |= (book[:, 1 << bit].astype(np.int64) ^ constant) << bit
    sign = 1.0 - 2.0 * constant
    for arr in (k, sign):
        arr.setflags(write=False)
    return FirstOrderTable(book, k, sign)


def _node_stage(paths: Sequence[DecodePath]) -> int:
    if not paths:
        raise ContractViolationError("leaf decoder needs at least one path")
    n = paths[0].alpha.shape[-1]
    if n < 2 or n & (n - 1):
        raise ContractViolationError(f"node length must be a power of two >= 2, got {n}")
    if any(p.alpha.shape[-1] != n for p in paths):
        raise ContractViolationError("all paths must sit at the same node")
    return n.bit_length() - 1


# PUBLIC_INTERFACE
def fht_list(
    paths: Sequence[DecodePath],
    L: int,
    *,
    ledger: Optional[CostLedger] = None,
    scale: float = 1.0,
    node: Optional[NodeRef] = None,
) -> List[DecodePath]:
    """
    PUBLIC_INTERFACE
    ML list decoding of a first-order RM node.

    Every path is extended by all 2^(s+1) codewords of RM(1, s) with metric
    pm + (sum|alpha| - correlation) / 2, and the L best extensions over all paths are kept.

    Args:
        paths: Input list at the node.
        L: List size.
        ledger: Optional cost ledger.
        scale: Metric normalization used for tie-breaking.
        node: Node being decoded; must be first order when given.

    Returns:
        Up to L paths sorted by path metric.
    """
    s = _node_stage(paths)
    if node is not None and (node.r != 1 or node.s != s):
        raise ContractViolationError(f"fht_list cannot decode {node}")
    ledger = ledger if ledger is not None else CostLedger()
    table = first_order_table(s)
    n = 1 << s

    alphas = np.stack([p.alpha for p in paths])
    if all(p.spectrum is not None for p in paths):
        spectra = np.stack([p.spectrum for p in paths])
    else:
        spectra = fht(alphas)
        charge_fht(ledger, n, len(paths))
    magnitude = np.abs(alphas).sum(axis=1)
    single = L == 1
    # a single path only needs the winner's metric; the sum overlaps the FHT
    charge_abs_sum(ledger, n, len(paths), steps=0 if single else 1)

    correlation = spectra[:, table.spectrum_index] * table.sign
    base = np.array([p.pm for p in paths])
    pms = base[:, None] + (magnitude[:, None] - correlation) / 2.0
    # rounding can push a perfect match a hair below its parent metric
    pms = np.maximum(pms, base[:, None])

    candidates = CandidateList.from_matrix(pms)
    if single:
        # argmax |spectrum| per path, then the best path
        ledger.charge(adds=len(paths), compares=len(paths) * (n - 1), steps=ceil_log2(n))
        ledger.charge_selection(len(paths))
        kept = prune(candidates, L, scale=scale)
    else:
        ledger.charge(adds=pms.size, steps=1)
        kept = prune(candidates, L, ledger=ledger, scale=scale)
    leaf_identity = identity(s)
    return [
        DecodePath(
            alpha=paths[parent].alpha,
            pm=float(pm),
            pi_init=paths[parent].pi_init,
            pi_sp=leaf_identity,
            l_org=int(parent),
            x_hat=table.codebook[choice].copy(),
        )
        for parent, choice, pm in zip(kept.parent, kept.choice, kept.pm)
    ]


# PUBLIC_INTERFACE
def spc_list(
    paths: Sequence[DecodePath],
    L: int,
    *,
    ledger: Optional[CostLedger] = None,
    scale: float = 1.0,
    node: Optional[NodeRef] = None,
) -> List[DecodePath]:
    """
    PUBLIC_INTERFACE
    List decoding of a single-parity-check node RM(s-1, s).

    Each path starts from its hard decisions with the least reliable bit fixing the parity,
    then min(L-1, 2^s-1) splits run over the next least reliable positions. The flip branch
    toggles the split position together with the least reliable bit, which keeps the parity
    even; the list is pruned to L over all paths after every split.
    """
    s = _node_stage(paths)
    if node is not None and (node.r != s - 1 or node.s != s):
        raise ContractViolationError(f"spc_list cannot decode {node}")
    ledger = ledger if ledger is not None else CostLedger()
    n = 1 << s

    alphas = np.stack([p.alpha for p in paths])
    magnitude = np.abs(alphas)
    order = np.argsort(magnitude, axis=1, kind="stable")
    if L == 1:
        # only the least reliable position is used
        ledger.charge(compares=len(paths) * (n - 1), steps=ceil_log2(n))
    else:
        ledger.charge(compares=len(paths) * n * ceil_log2(n), steps=ceil_log2(n))
    rows = np.arange(len(paths))
    i_min = order[:, 0]
    mag_min = magnitude[rows, i_min]

    words = hard_decision(alphas)
    parity = words.sum(axis=1) % 2
    words[rows, i_min] ^= parity.astype(np.uint8)
    pms = np.array([p.pm for p in paths]) + parity * mag_min
    ledger.charge(adds=len(paths), steps=1)

    # running list: origin input path, word, metric, whether i_min is currently flipped
    origin = rows.copy()
    state = parity.astype(np.int64)
    splits = min(L - 1, n - 1)
    if splits == 0:
        kept = prune(CandidateList.from_matrix(pms[:, None]), L, ledger=ledger, scale=scale)
        origin, words, pms = origin[kept.parent], words[kept.parent], kept.pm
    for step in range(1, splits + 1):
        pos = order[origin, step]
        flip_pm = pms + magnitude[origin, pos] + (1 - 2 * state) * mag_min[origin]
        ledger.charge(adds=2 * len(pms), steps=1)
        kept = prune(
            CandidateList.from_matrix(np.stack([pms, flip_pm], axis=1)),
            L,
            ledger=ledger,
            scale=scale,
        )
        flipped = kept.choice.astype(bool)
        parent = kept.parent
        words = words[parent].copy()
        sel = np.flatnonzero(flipped)
        words[sel, pos[parent[sel]]] ^= 1
        words[sel, i_min[origin[parent[sel]]]] ^= 1
        state = state[parent] ^ flipped.astype(np.int64)
        origin = origin[parent]
        pms = kept.pm

    return [
        DecodePath(
            alpha=paths[o].alpha,
            pm=float(pm),
            pi_init=paths[o].pi_init,
            pi_sp=identity(s),
            l_org=int(o),
            x_hat=word.astype(np.uint8),
        )
        for o, word, pm in zip(origin, words, pms)
    ]
