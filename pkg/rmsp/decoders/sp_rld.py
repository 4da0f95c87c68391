"""Recursive list decoding of RM codes with successive permutations (SP-RLD).

At every non-leaf node RM(r, s) each path may pick, among s candidate automorphisms of
the node (identity first), the one whose permuted LLRs give the most reliable left child.
The left child RM(r-1, s-1) and right child RM(r, s-1) are decoded recursively in the
permuted domain, and the parent estimate is permuted back before it is returned.

SSP-RLD spends a global budget of S SP visits in recursion order; Ens-SSP-RLD runs T
independent SSP-RLD decoders with a small list and keeps the best final path metric.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from rmsp.coding.automorphism import (
    AffinePerm,
    PermutationSampler,
    identity,
    permute_vector,
    sample_affine,
    unpermute_vector,
)
from rmsp.coding.kernels import combine, f_stage, fht, g_stage, rank_key
from rmsp.coding.leaf_decoders import fht_list, spc_list
from rmsp.coding.paths import DecodePath, NodeRef
from rmsp.coding.rm_code import RmCode
from rmsp.cost.ledger import (
    CostLedger,
    charge_f_stage,
    charge_g_stage,
    charge_sp_candidates,
    charge_sp_steps,
)
from rmsp.domain.errors import ContractViolationError, InvalidParameterError, UnsupportedNodeError
from rmsp.domain.schemas import SpConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NodeVisit:
    """Non-leaf node reached during a decode and whether SP ran there."""

    r: int
    s: int
    used_sp: bool


@dataclass
class DecodeResult:
    codeword: np.ndarray
    pm: float
    trace: List[NodeVisit] = field(default_factory=list)
    branch_pms: Tuple[float, ...] = ()


@dataclass
class DecodeContext:
    """Per-decode state shared by the whole recursion."""

    cfg: SpConfig
    rng: np.random.Generator
    ledger: CostLedger
    budget: Optional[int] = None
    sampler: PermutationSampler = sample_affine
    scale: float = 1.0
    trace: Optional[List[NodeVisit]] = None

    def take_sp(self) -> bool:
        """Consume one SP visit if the budget allows it (None = unbounded)."""
        if self.budget is None:
            return True
        if self.budget > 0:
            self.budget -= 1
            return True
        return False


class PermutationChoice(NamedTuple):
    perm: AffinePerm
    alpha_left: np.ndarray
    permuted_alpha: np.ndarray
    spectrum: Optional[np.ndarray]
    metric: float


# PUBLIC_INTERFACE
def perm_metric(alpha_lambda: np.ndarray, child_order: int) -> float:
    """
    PUBLIC_INTERFACE
    Reliability of a left child after permutation.

    First-order child: the largest spectrum magnitude, i.e. the correlation of its best
    codeword. Higher order: sum of LLR magnitudes.
    """
    return float(_metrics(np.asarray(alpha_lambda, dtype=np.float64)[None, :], child_order)[0][0])


def _metrics(lefts: np.ndarray, child_order: int) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    if child_order < 1:
        raise ContractViolationError(f"permutation metric undefined for child order {child_order}")
    if child_order == 1:
        spectra = fht(lefts)
        return np.abs(spectra).max(axis=-1), spectra
    return np.abs(lefts).sum(axis=-1), None


# PUBLIC_INTERFACE
def select_permutation(
    path: DecodePath,
    node: NodeRef,
    rng: np.random.Generator,
    *,
    candidates: Optional[int] = None,
    sampler: PermutationSampler = sample_affine,
    ledger: Optional[CostLedger] = None,
    scale: float = 1.0,
) -> PermutationChoice:
    """
    PUBLIC_INTERFACE
    Pick the node automorphism that maximizes the left-child metric and store it in
    ``path.pi_sp``.

    Candidate 0 is the identity; the others come from ``sampler``. A later candidate only
    wins with a strictly larger metric.
    """
    if not 1 < node.r < node.s - 1:
        raise ContractViolationError(f"SP does not apply at {node}")
    if path.alpha.shape[-1] != node.length:
        raise ContractViolationError(f"path does not sit at {node}")
    count = candidates if candidates is not None else node.s
    if count < 1:
        raise InvalidParameterError(f"need at least one SP candidate, got {count}")

    perms = [identity(node.s)] + [sampler(node.s, rng) for _ in range(count - 1)]
    permuted = np.stack([permute_vector(p, path.alpha) for p in perms])
    lefts = f_stage(permuted)
    metrics, spectra = _metrics(lefts, node.r - 1)
    if ledger is not None:
        charge_sp_candidates(ledger, node.length, node.r - 1, count)

    best = int(np.argmax(rank_key(metrics, scale)))
    path.pi_sp = perms[best]
    return PermutationChoice(
        perm=perms[best],
        alpha_left=lefts[best],
        permuted_alpha=permuted[best],
        spectrum=None if spectra is None else spectra[best],
        metric=float(metrics[best]),
    )


# PUBLIC_INTERFACE
def sp_rld_recurse(paths: List[DecodePath], node: NodeRef, ctx: DecodeContext) -> List[DecodePath]:
    """
    PUBLIC_INTERFACE
    Decode ``paths`` at ``node`` and return up to L paths with their node codewords.

    First-order nodes go to FHT-List, SPC nodes to SPC-List. Otherwise the left child is
    decoded from (optionally SP-permuted) f-stage LLRs, the right child from g-stage LLRs
    in the same permuted domain, and the combined estimate is permuted back.
    """
    if not 1 <= node.r <= node.s - 1:
        raise UnsupportedNodeError(f"cannot decode {node}: order must lie in [1, s-1]")
    L = ctx.cfg.L
    if node.is_first_order:
        return fht_list(paths, L, ledger=ctx.ledger, scale=ctx.scale, node=node)
    if node.is_spc:
        return spc_list(paths, L, ledger=ctx.ledger, scale=ctx.scale, node=node)

    use_sp = ctx.take_sp()
    if ctx.trace is not None:
        ctx.trace.append(NodeVisit(node.r, node.s, use_sp))

    child_order = node.r - 1
    left_identity = identity(node.s - 1)
    permuted_parents: List[np.ndarray] = []
    left_paths: List[DecodePath] = []
    for index, path in enumerate(paths):
        spectrum = None
        if use_sp:
            choice = select_permutation(
                path,
                node,
                ctx.rng,
                candidates=ctx.cfg.candidates_per_node,
                sampler=ctx.sampler,
                ledger=ctx.ledger,
                scale=ctx.scale,
            )
            permuted, alpha_left, spectrum = (
                choice.permuted_alpha,
                choice.alpha_left,
                choice.spectrum,
            )
        else:
            path.pi_sp = identity(node.s)
            permuted, alpha_left = path.alpha, f_stage(path.alpha)
        permuted_parents.append(permuted)
        left_paths.append(
            DecodePath(
                alpha=alpha_left,
                pm=path.pm,
                pi_init=path.pi_init,
                pi_sp=left_identity,
                l_org=index,
                spectrum=spectrum,
            )
        )
    if use_sp:
        count = ctx.cfg.candidates_per_node or node.s
        charge_sp_steps(ctx.ledger, node.s, child_order, count)
    else:
        charge_f_stage(ctx.ledger, node.length, len(paths))

    left_out = sp_rld_recurse(left_paths, node.left, ctx)

    right_paths = [
        DecodePath(
            alpha=g_stage(permuted_parents[left.l_org], left.x_hat),
            pm=left.pm,
            pi_init=left.pi_init,
            pi_sp=left_identity,
            l_org=j,
        )
        for j, left in enumerate(left_out)
    ]
    charge_g_stage(ctx.ledger, node.length, len(right_paths))

    right_out = sp_rld_recurse(right_paths, node.right, ctx)

    merged: List[DecodePath] = []
    for right in right_out:
        left = left_out[right.l_org]
        parent = paths[left.l_org]
        x_permuted = combine(left.x_hat, right.x_hat)
        merged.append(
            DecodePath(
                alpha=parent.alpha,
                pm=right.pm,
                pi_init=right.pi_init,
                pi_sp=parent.pi_sp,
                l_org=left.l_org,
                x_hat=unpermute_vector(parent.pi_sp, x_permuted),
            )
        )
    return merged


def _check_code(code: RmCode) -> None:
    if not 1 <= code.r <= code.m - 1:
        raise UnsupportedNodeError(
            f"{code.label} is not list-decodable here: order must lie in [1, m-1]"
        )


def _channel_scale(alpha: np.ndarray) -> float:
    scale = float(np.mean(np.abs(alpha)))
    return scale if scale > 0.0 and np.isfinite(scale) else 1.0


def _check_alpha(alpha: np.ndarray, code: RmCode) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=np.float64)
    if alpha.shape != (code.N,):
        raise InvalidParameterError(f"expected {code.N} channel LLRs, got shape {alpha.shape}")
    if not np.all(np.isfinite(alpha)):
        raise InvalidParameterError("channel LLRs must be finite")
    return alpha


def run_list_decoder(
    alpha_channel: np.ndarray,
    code: RmCode,
    cfg: SpConfig,
    rng: Optional[np.random.Generator],
    ledger: Optional[CostLedger] = None,
    *,
    list_size: Optional[int] = None,
    budget: Optional[int] = None,
    sampler: PermutationSampler = sample_affine,
    trace: Optional[List[NodeVisit]] = None,
) -> DecodeResult:
    """
    Full decode with L initial permutations (path 0 unpermuted) and an SP budget.

    Returns the best path's codeword mapped back to channel order together with its metric.
    Without ``rng`` the permutations are drawn from a generator seeded with ``cfg.seed``.
    """
    _check_code(code)
    alpha = _check_alpha(alpha_channel, code)
    rng = rng if rng is not None else np.random.default_rng(cfg.seed)
    L = list_size if list_size is not None else cfg.L
    if L != cfg.L:
        cfg = cfg.model_copy(update={"L": L})
    ledger = ledger if ledger is not None else CostLedger(sp_mode=cfg.sp_mode)
    ctx = DecodeContext(
        cfg=cfg,
        rng=rng,
        ledger=ledger,
        budget=budget,
        sampler=sampler,
        scale=_channel_scale(alpha),
        trace=trace,
    )

    inits = [identity(code.m)] + [sampler(code.m, rng) for _ in range(L - 1)]
    paths = [
        DecodePath(
            alpha=permute_vector(pi, alpha),
            pm=0.0,
            pi_init=pi,
            pi_sp=identity(code.m),
            l_org=index,
        )
        for index, pi in enumerate(inits)
    ]
    final = sp_rld_recurse(paths, NodeRef(code.r, code.m), ctx)

    pms = np.array([p.pm for p in final])
    ledger.charge_selection(len(final))
    best = final[int(np.argmin(rank_key(pms, ctx.scale)))]
    logger.debug("%s: %d path(s) left, best pm %.6g", code.label, len(final), best.pm)
    return DecodeResult(
        codeword=unpermute_vector(best.pi_init, best.x_hat),
        pm=best.pm,
        trace=list(trace) if trace is not None else [],
    )


# PUBLIC_INTERFACE
def sp_rld_decode(
    alpha_channel: np.ndarray,
    code: RmCode,
    cfg: SpConfig,
    rng: Optional[np.random.Generator],
    ledger: Optional[CostLedger] = None,
    *,
    sampler: PermutationSampler = sample_affine,
    trace: Optional[List[NodeVisit]] = None,
) -> np.ndarray:
    """PUBLIC_INTERFACE: SP-RLD with list size ``cfg.L`` and SP at every non-leaf node."""
    return run_list_decoder(
        alpha_channel, code, cfg, rng, ledger, budget=None, sampler=sampler, trace=trace
    ).codeword


# PUBLIC_INTERFACE
def ssp_rld_decode(
    alpha_channel: np.ndarray,
    code: RmCode,
    cfg: SpConfig,
    rng: Optional[np.random.Generator],
    ledger: Optional[CostLedger] = None,
    *,
    sampler: PermutationSampler = sample_affine,
    trace: Optional[List[NodeVisit]] = None,
) -> np.ndarray:
    """
    PUBLIC_INTERFACE
    SSP-RLD: SP only at the first ``cfg.S`` non-leaf nodes in recursion order.

    The budget is shared by the whole tree; ``cfg.S = None`` reduces to SP-RLD.
    """
    return run_list_decoder(
        alpha_channel, code, cfg, rng, ledger, budget=cfg.S, sampler=sampler, trace=trace
    ).codeword


def run_ensemble(
    alpha_channel: np.ndarray,
    code: RmCode,
    cfg: SpConfig,
    rng: Optional[np.random.Generator],
    ledger: Optional[CostLedger] = None,
    *,
    sampler: PermutationSampler = sample_affine,
) -> DecodeResult:
    """T concurrent SSP-RLD branches on spawned rng streams; smallest final metric wins."""
    if cfg.T < 1:
        raise InvalidParameterError(f"ensemble size must be >= 1, got {cfg.T}")
    alpha = _check_alpha(alpha_channel, code)
    rng = rng if rng is not None else np.random.default_rng(cfg.seed)
    branch_rngs = [rng] if cfg.T == 1 else rng.spawn(cfg.T)
    branch_ledgers = [CostLedger(sp_mode=cfg.sp_mode) for _ in range(cfg.T)]
    results = [
        run_list_decoder(
            alpha,
            code,
            cfg,
            branch_rng,
            branch_ledger,
            list_size=cfg.branch_list_size,
            budget=cfg.S,
            sampler=sampler,
        )
        for branch_rng, branch_ledger in zip(branch_rngs, branch_ledgers)
    ]

    merged = CostLedger.parallel(branch_ledgers, cfg.sp_mode)
    merged.charge_selection(cfg.T)
    if ledger is not None:
        ledger.absorb(merged)

    pms = np.array([res.pm for res in results])
    winner = int(np.argmin(rank_key(pms, _channel_scale(alpha))))
    best = results[winner]
    logger.debug("%s: ensemble branch %d of %d wins, pm %.6g", code.label, winner, cfg.T, best.pm)
    return DecodeResult(codeword=best.codeword, pm=best.pm, branch_pms=tuple(pms.tolist()))


# PUBLIC_INTERFACE
def ens_ssp_rld_decode(
    alpha_channel: np.ndarray,
    code: RmCode,
    S: Optional[int],
    L_prime: int,
    T: int,
    rng: Optional[np.random.Generator],
    ledger: Optional[CostLedger] = None,
    *,
    cfg: Optional[SpConfig] = None,
    sampler: PermutationSampler = sample_affine,
) -> np.ndarray:
    """
    PUBLIC_INTERFACE
    Ens-SSP-RLD: T independent SSP-RLD decoders with list size L' and SP budget S.

    Branch streams are ``rng.spawn(T)``; a single branch decodes on ``rng`` itself, so T = 1
    is SSP-RLD with list size L' on the same stream.
    """
    if T < 1:
        raise InvalidParameterError(f"ensemble size must be >= 1, got {T}")
    base = cfg if cfg is not None else SpConfig()
    cfg = base.model_copy(update={"S": S, "L": L_prime, "L_prime": L_prime, "T": T})
    return run_ensemble(alpha_channel, code, cfg, rng, ledger, sampler=sampler).codeword
