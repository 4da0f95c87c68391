"""Permuted SSC-FHT baseline.

SSC-FHT is the single-path recursion with ML decoding (FHT) at first-order nodes and
parity fixing at SPC nodes. Aut-SSC-FHT-P runs it on P permuted copies of the channel
LLRs (identity first) and keeps the candidate with the smallest path metric. Drawing the
permutations with ``sample_stage_perm`` gives the factor-graph variant (Per-SSC-FHT).
"""

from __future__ import annotations

import logging
from typing import List, Optional, Tuple

import numpy as np

from rmsp.coding.automorphism import (
    PermutationSampler,
    identity,
    permute_vector,
    sample_affine,
    unpermute_vector,
)
from rmsp.coding.kernels import rank_key
from rmsp.coding.rm_code import RmCode
from rmsp.cost.ledger import CostLedger
from rmsp.decoders.sp_rld import run_list_decoder
from rmsp.domain.errors import InvalidParameterError
from rmsp.domain.schemas import SpConfig

logger = logging.getLogger(__name__)

_SINGLE_PATH = SpConfig(L=1, S=0)


# PUBLIC_INTERFACE
def ssc_fht_decode(
    alpha: np.ndarray,
    code: RmCode,
    ledger: Optional[CostLedger] = None,
) -> Tuple[np.ndarray, float]:
    """
    PUBLIC_INTERFACE
    Single-path SSC-FHT decode.

    Returns:
        (codeword, accumulated path metric).
    """
    result = run_list_decoder(
        alpha,
        code,
        _SINGLE_PATH,
        None,
        ledger,
        budget=0,
        sampler=lambda s, _rng: identity(s),
    )
    return result.codeword, result.pm


def _run_branches(
    alpha_channel: np.ndarray,
    code: RmCode,
    P: int,
    rng: np.random.Generator,
    sampler: PermutationSampler,
) -> Tuple[np.ndarray, float, List[float], List[CostLedger]]:
    if P < 1:
        raise InvalidParameterError(f"P must be >= 1, got {P}")
    alpha = np.asarray(alpha_channel, dtype=np.float64)
    perms = [identity(code.m)] + [sampler(code.m, rng) for _ in range(P - 1)]

    branch_ledgers: List[CostLedger] = []
    candidates: List[np.ndarray] = []
    pms: List[float] = []
    for perm in perms:
        branch_ledger = CostLedger()
        x, pm = ssc_fht_decode(permute_vector(perm, alpha), code, branch_ledger)
        candidates.append(unpermute_vector(perm, x))
        pms.append(pm)
        branch_ledgers.append(branch_ledger)

    scale = float(np.mean(np.abs(alpha))) or 1.0
    best = int(np.argmin(rank_key(np.array(pms), scale)))
    logger.debug("%s: permutation %d of %d wins, pm %.6g", code.label, best, P, pms[best])
    return candidates[best], pms[best], pms, branch_ledgers


# PUBLIC_INTERFACE
def aut_ssc_fht_decode(
    alpha_channel: np.ndarray,
    code: RmCode,
    P: int,
    rng: np.random.Generator,
    ledger: Optional[CostLedger] = None,
    *,
    sampler: PermutationSampler = sample_affine,
    width: Optional[int] = None,
) -> np.ndarray:
    """
    PUBLIC_INTERFACE
    Best-of-P SSC-FHT over random code automorphisms.

    Args:
        alpha_channel: Channel LLRs.
        code: Code to decode.
        P: Number of permutations, identity included.
        rng: Stream the permutations are drawn from.
        ledger: Optional ledger. Its sequential step counter models ``width`` decoders
            running at a time (default 1); the parallel counter runs all P together.
        sampler: Permutation sampler (``sample_stage_perm`` for factor-graph permutations).
        width: Concurrent decoders for the sequential step counter.

    Returns:
        The candidate codeword with the smallest path metric.
    """
    codeword, _, _, branch_ledgers = _run_branches(alpha_channel, code, P, rng, sampler)
    if ledger is not None:
        semi = CostLedger.batched(branch_ledgers, width or 1)
        full = CostLedger.parallel(branch_ledgers)
        ledger.charge(
            adds=full.adds,
            compares=full.compares,
            steps=semi.steps_seq,
            steps_par=full.steps_par,
        )
        ledger.charge_selection(P)
    return codeword


def aut_ssc_fht_result(
    alpha_channel: np.ndarray,
    code: RmCode,
    P: int,
    rng: np.random.Generator,
    *,
    sampler: PermutationSampler = sample_affine,
) -> Tuple[np.ndarray, float, List[float]]:
    """Like ``aut_ssc_fht_decode`` but also returns the winning and per-branch metrics."""
    codeword, pm, pms, _ = _run_branches(alpha_channel, code, P, rng, sampler)
    return codeword, pm, pms
