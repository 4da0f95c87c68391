"""List-decoding state: decoding paths, node references and candidate pruning."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from rmsp.coding.automorphism import AffinePerm
from rmsp.coding.kernels import rank_key
from rmsp.cost.ledger import CostLedger
from rmsp.domain.errors import ContractViolationError


@dataclass(frozen=True)
class NodeRef:
    """Constituent code RM(r, s) of the recursive decomposition."""

    r: int
    s: int

    @property
    def length(self) -> int:
        return 1 << self.s

    @property
    def left(self) -> NodeRef:
        return NodeRef(self.r - 1, self.s - 1)

    @property
    def right(self) -> NodeRef:
        return NodeRef(self.r, self.s - 1)

    @property
    def is_first_order(self) -> bool:
        return self.r == 1

    @property
    def is_spc(self) -> bool:
        return self.r == self.s - 1

    def __str__(self) -> str:
        return f"RM({self.r},{self.s})"


@dataclass
class DecodePath:
    """
    One list entry at a node.

    ``l_org`` indexes the input list of the call that produced this path. ``spectrum`` is
    the Walsh-Hadamard transform of ``alpha`` when SP already computed it.
    """

    alpha: np.ndarray
    pm: float
    pi_init: AffinePerm
    pi_sp: AffinePerm
    l_org: int = 0
    x_hat: Optional[np.ndarray] = None
    spectrum: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.pm < 0:
            raise ContractViolationError(f"path metric must be >= 0, got {self.pm}")
        if self.x_hat is not None and self.x_hat.shape[-1] != self.alpha.shape[-1]:
            raise ContractViolationError("x_hat length does not match the node length")


@dataclass(frozen=True)
class CandidateList:
    """Flat candidate table: parent path index, choice index within the parent, metric."""

    parent: np.ndarray
    choice: np.ndarray
    pm: np.ndarray

    @classmethod
    def from_matrix(cls, pms: np.ndarray) -> CandidateList:
        """Candidates laid out as ``pms[parent, choice]``."""
        pms = np.asarray(pms, dtype=np.float64)
        parent, choice = np.indices(pms.shape)
        return cls(parent.ravel(), choice.ravel(), pms.ravel())

    def __len__(self) -> int:
        return int(self.pm.size)


# PUBLIC_INTERFACE
def prune(
    candidates: CandidateList,
    L: int,
    *,
    ledger: Optional[CostLedger] = None,
    scale: float = 1.0,
) -> CandidateList:
    """
    PUBLIC_INTERFACE
    Keep the L smallest-metric candidates, sorted by metric.

    Equal metrics (compared via ``rank_key``) are ordered by (parent, choice). A merge sort
    over all n candidates is charged to ``ledger``; with L = 1 only a selection of the best.
    """
    n = len(candidates)
    if ledger is not None:
        if L == 1:
            ledger.charge_selection(n)
        else:
            ledger.charge_sort(n)
    order = np.lexsort((candidates.choice, candidates.parent, rank_key(candidates.pm, scale)))
    keep = order[:L]
    return CandidateList(candidates.parent[keep], candidates.choice[keep], candidates.pm[keep])
