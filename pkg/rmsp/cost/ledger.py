"""Operation and time-step accounting for one decode.

Conventions:
    * every f/g evaluation, addition, subtraction and comparison is one floating-point op;
      hard decisions, XORs and index permutations are free;
    * operations that run concurrently across the entries of a node, or across the list of
      paths, take one time step; ops are summed over paths, steps are charged once per node;
    * sorting n values costs n * ceil(log2 n) comparisons and ceil(log2 n) steps;
    * with a single surviving path only the best value is needed, so a selection
      (n - 1 comparisons, ceil(log2 n) steps) replaces the sort.

The two SP schedules only differ in the steps of the permutation selection, so both step
counters are maintained side by side and ``sp_mode`` chooses the one that is reported.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Dict, Iterable, List, Optional

from rmsp.domain.schemas import SpMode


def ceil_log2(n: int) -> int:
    return (int(n) - 1).bit_length() if n > 1 else 0


@dataclass
class CostLedger:
    """Running totals of adds, compares and time steps for one decode."""

    sp_mode: SpMode = SpMode.SEQUENTIAL
    adds: int = 0
    compares: int = 0
    steps_seq: int = 0
    steps_par: int = 0

    @property
    def gamma(self) -> int:
        return self.adds + self.compares

    @property
    def time_steps(self) -> int:
        return self.steps_par if self.sp_mode is SpMode.PARALLEL else self.steps_seq

    def charge(
        self,
        *,
        adds: int = 0,
        compares: int = 0,
        steps: int = 0,
        steps_par: Optional[int] = None,
    ) -> None:
        """Add ops and steps; ``steps_par`` defaults to ``steps`` (same in both schedules)."""
        self.adds += int(adds)
        self.compares += int(compares)
        self.steps_seq += int(steps)
        self.steps_par += int(steps if steps_par is None else steps_par)

    def charge_sort(self, n: int, copies: int = 1) -> None:
        """Merge sort of ``copies`` independent arrays of n values, run concurrently."""
        depth = ceil_log2(n)
        if depth == 0:
            return
        self.charge(compares=copies * n * depth, steps=depth)

    def charge_selection(self, n: int) -> None:
        """Pick the best of n finished candidates (comparison tree)."""
        if n > 1:
            self.charge(compares=n - 1, steps=ceil_log2(n))

    def absorb(self, other: CostLedger) -> None:
        """Append ``other`` as work that runs after the work already in this ledger."""
        self.charge(
            adds=other.adds,
            compares=other.compares,
            steps=other.steps_seq,
            steps_par=other.steps_par,
        )

    @classmethod
    def batched(
        cls,
        branches: Iterable[CostLedger],
        width: Optional[int],
        sp_mode: SpMode = SpMode.SEQUENTIAL,
    ) -> CostLedger:
        """
        Merge independent decoders run ``width`` at a time (None = all at once).

        Ops add up; each batch takes as many steps as its slowest member.
        """
        items: List[CostLedger] = list(branches)
        merged = cls(sp_mode=sp_mode)
        if not items:
            return merged
        size = len(items) if width is None else max(1, int(width))
        for start in range(0, len(items), size):
            batch = items[start : start + size]
            merged.charge(
                adds=sum(b.adds for b in batch),
                compares=sum(b.compares for b in batch),
                steps=max(b.steps_seq for b in batch),
                steps_par=max(b.steps_par for b in batch),
            )
        return merged

    @classmethod
    def parallel(
        cls, branches: Iterable[CostLedger], sp_mode: SpMode = SpMode.SEQUENTIAL
    ) -> CostLedger:
        """Merge fully concurrent decoders."""
        return cls.batched(branches, None, sp_mode)

    def as_dict(self) -> Dict[str, object]:
        out = asdict(self)
        out["sp_mode"] = self.sp_mode.value
        out["gamma"] = self.gamma
        out["time_steps"] = self.time_steps
        return out


# Inline charge rules used by the decoders. ``length`` is the node length 2^s and
# ``paths`` the number of list entries processed together.


def charge_f_stage(ledger: CostLedger, length: int, paths: int = 1) -> None:
    ledger.charge(compares=paths * (length // 2), steps=1)


def charge_g_stage(ledger: CostLedger, length: int, paths: int = 1) -> None:
    ledger.charge(adds=paths * (length // 2), steps=1)


def charge_fht(ledger: CostLedger, length: int, paths: int = 1) -> None:
    s = ceil_log2(length)
    ledger.charge(adds=paths * s * length, steps=s)


def charge_abs_sum(ledger: CostLedger, length: int, paths: int = 1, steps: int = 1) -> None:
    ledger.charge(adds=paths * (length - 1), steps=steps)


def charge_sp_candidates(
    ledger: CostLedger,
    length: int,
    child_order: int,
    candidates: int,
    paths: int = 1,
) -> None:
    """
    Ops of evaluating ``candidates`` permutations at a node of ``length`` for each path.

    Per candidate: the f stage, the metric (an FHT of the left child for a first-order
    child, a sum of magnitudes otherwise) and one comparison against the running best.
    """
    half = length // 2
    s_child = ceil_log2(half)
    metric_adds = s_child * half if child_order == 1 else half - 1
    ledger.charge(
        adds=paths * candidates * metric_adds,
        compares=paths * candidates * (half + 1),
    )


def charge_sp_steps(ledger: CostLedger, s: int, child_order: int, candidates: int) -> None:
    """
    Latency of SP at a node of stage s.

    Each candidate costs s steps when the child is first order (one f stage plus an FHT of
    stage s-1) and one step otherwise; the sequential schedule runs candidates back to
    back, the parallel one evaluates them together.
    """
    per_candidate = s if child_order == 1 else 1
    ledger.charge(steps=candidates * per_candidate, steps_par=per_candidate)
