"""Pydantic schemas for decoder, channel and simulation configuration and results."""

from __future__ import annotations

import math
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from rmsp.channel.awgn import NOISELESS_SIGMA, sigma_from_ebn0


class SpMode(str, Enum):
    """Whether the s SP candidates of a node are evaluated one after another or concurrently."""

    SEQUENTIAL = "seq"
    PARALLEL = "par"


class DecoderName(str, Enum):
    SP_RLD = "sp-rld"
    SSP_RLD = "ssp-rld"
    ENS_SSP_RLD = "ens-ssp-rld"
    SSC_FHT = "ssc-fht"
    AUT_SSC_FHT = "aut-ssc-fht"
    PER_SSC_FHT = "per-ssc-fht"
    ML_ORACLE = "ml-oracle"


class SpConfig(BaseModel):
    """List-decoder knobs shared by SP-RLD, SSP-RLD and Ens-SSP-RLD."""

    model_config = ConfigDict(frozen=True)

    L: int = Field(default=1, ge=1, description="List size.")
    S: Optional[int] = Field(
        default=None,
        ge=0,
        description="Left-child visits that use SP (None = every visit, plain SP-RLD).",
    )
    T: int = Field(default=1, ge=1, description="Ensemble size (Ens-SSP-RLD only).")
    L_prime: Optional[int] = Field(
        default=None, ge=1, description="Per-branch list size (Ens-SSP-RLD only)."
    )
    candidates_per_node: Optional[int] = Field(
        default=None,
        ge=1,
        description="SP candidates per node, identity included (None = node stage s).",
    )
    sp_mode: SpMode = Field(default=SpMode.SEQUENTIAL, description="Cost-ledger variant.")
    seed: int = Field(default=0, ge=0, description="Master rng seed.")

    @property
    def branch_list_size(self) -> int:
        return self.L_prime if self.L_prime is not None else self.L


class ChannelConfig(BaseModel):
    """Unit-energy BPSK over AWGN at a given Eb/N0."""

    model_config = ConfigDict(frozen=True)

    ebn0_db: float = Field(..., description="Eb/N0 in dB.")
    rate: float = Field(..., gt=0.0, le=1.0, description="Code rate K/N.")
    seed: int = Field(default=0, ge=0, description="Noise rng seed.")
    noiseless: bool = Field(default=False, description="Clamp sigma to a tiny value.")

    @computed_field  # type: ignore[prop-decorator]
    @property
    def sigma(self) -> float:
        if self.noiseless:
            return NOISELESS_SIGMA
        return sigma_from_ebn0(self.ebn0_db, self.rate)


class SimulationConfig(BaseModel):
    """One Monte-Carlo campaign: a code, a decoder and a list of Eb/N0 points."""

    model_config = ConfigDict(frozen=True)

    r: int = Field(..., ge=0, description="Code order.")
    m: int = Field(..., ge=1, le=16, description="Log2 of the code length.")
    decoder: DecoderName = Field(..., description="Decoder under test.")
    L: int = Field(default=1, ge=1, description="List size (SP-RLD / SSP-RLD).")
    S: Optional[int] = Field(default=None, ge=0, description="SP budget (SSP-RLD / Ens).")
    T: int = Field(default=1, ge=1, description="Ensemble size (Ens-SSP-RLD).")
    L_prime: Optional[int] = Field(default=None, ge=1, description="Per-branch list size (Ens).")
    P: int = Field(default=1, ge=1, description="Permutations (Aut/Per-SSC-FHT).")
    W: Optional[int] = Field(
        default=None,
        ge=1,
        description="Aut/Per-SSC-FHT decoders run at a time (None = L, capped at P).",
    )
    ebn0_db: List[float] = Field(..., min_length=1, description="Eb/N0 points in dB.")
    max_frames: int = Field(default=100_000, ge=1, description="Frame cap per point.")
    target_errors: int = Field(default=100, ge=1, description="Early-stop error count.")
    seed: int = Field(default=2021, ge=0, description="Master seed.")
    workers: int = Field(default=1, ge=1, description="Frame-parallel worker processes.")
    batch_frames: int = Field(default=256, ge=1, description="Frames per scheduling batch.")
    sp_mode: SpMode = Field(default=SpMode.SEQUENTIAL, description="Cost-ledger variant.")
    quant_bits: int = Field(default=32, ge=1, description="Q for the memory model.")
    noiseless: bool = Field(default=False, description="Clamp sigma to a tiny value.")

    @field_validator("ebn0_db")
    @classmethod
    def _finite_points(cls, value: List[float]) -> List[float]:
        if not all(math.isfinite(v) for v in value):
            raise ValueError("Eb/N0 points must be finite")
        return value

    @model_validator(mode="after")
    def _order_within_length(self) -> SimulationConfig:
        if self.r > self.m:
            raise ValueError(f"code order r={self.r} exceeds m={self.m}")
        return self

    @property
    def aut_width(self) -> int:
        return min(self.W if self.W is not None else self.L, self.P)

    def sp_config(self) -> SpConfig:
        return SpConfig(
            L=self.L,
            S=self.S,
            T=self.T,
            L_prime=self.L_prime,
            sp_mode=self.sp_mode,
            seed=self.seed,
        )


class FerRecord(BaseModel):
    """One Monte-Carlo result row."""

    r: int = Field(..., description="Code order.")
    m: int = Field(..., description="Log2 of the code length.")
    decoder: str = Field(..., description="Decoder name.")
    S: Optional[int] = Field(default=None, description="SP budget (None = unbounded / n.a.).")
    L: Optional[int] = Field(default=None, description="List size.")
    L_prime: Optional[int] = Field(default=None, description="Per-branch list size.")
    T: Optional[int] = Field(default=None, description="Ensemble size.")
    P: Optional[int] = Field(default=None, description="Permutation count.")
    W: Optional[int] = Field(default=None, description="Concurrent permuted decoders.")
    ebn0_db: float = Field(..., description="Eb/N0 in dB.")
    frames: int = Field(..., ge=1, description="Frames simulated.")
    frame_errors: int = Field(..., ge=0, description="Frames decoded incorrectly.")
    fer: float = Field(..., ge=0.0, le=1.0, description="frame_errors / frames.")
    ml_bound_errors: int = Field(..., ge=0, description="Errors an ML decoder would also make.")
    gamma: float = Field(..., ge=0.0, description="Mean floating-point operations per frame.")
    upsilon_seq: float = Field(..., ge=0.0, description="Mean time steps, sequential SP.")
    upsilon_par: float = Field(..., ge=0.0, description="Mean time steps, parallel SP.")
    phi_bits: Optional[int] = Field(default=None, description="Memory model, bits.")
    wall_seconds: float = Field(..., ge=0.0, description="Wall time for the point.")
    seed: int = Field(..., description="Master seed.")

    @model_validator(mode="after")
    def _consistent_counts(self) -> FerRecord:
        if self.frame_errors > self.frames:
            raise ValueError("frame_errors exceeds frames")
        if self.ml_bound_errors > self.frame_errors:
            raise ValueError("ml_bound_errors exceeds frame_errors")
        if not math.isclose(self.fer, self.frame_errors / self.frames, rel_tol=1e-5, abs_tol=0.0):
            raise ValueError("fer must equal frame_errors / frames")
        return self
