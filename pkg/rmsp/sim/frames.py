"""Decoder dispatch and the per-frame Monte-Carlo worker."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from rmsp.channel.awgn import llr, transmit
from rmsp.coding.automorphism import sample_stage_perm
from rmsp.coding.rm_code import RmCode, build_code, encode, random_message
from rmsp.cost.ledger import CostLedger
from rmsp.decoders.sp_rld import ens_ssp_rld_decode, sp_rld_decode, ssp_rld_decode
from rmsp.decoders.ssc_fht import aut_ssc_fht_decode, ssc_fht_decode
from rmsp.domain.schemas import ChannelConfig, DecoderName, SimulationConfig
from rmsp.sim.oracle import ML_ORACLE_MAX_K, ml_bound_flag, ml_oracle_decode
from rmsp.sim.rng import frame_streams

@dataclass(frozen=True)
class FrameOutcome:
    frame_index: int
    error: bool
    ml_bound: bool
    gamma: int
    steps_seq: int
    steps_par: int


def decode_frame(
    config: SimulationConfig,
    code: RmCode,
    alpha: np.ndarray,
    rng: np.random.Generator,
    ledger: CostLedger,
) -> np.ndarray:
    """Run the decoder named in ``config`` on one LLR vector."""
    decoder = config.decoder
    if decoder is DecoderName.SP_RLD:
        return sp_rld_decode(alpha, code, config.sp_config(), rng, ledger)
    if decoder is DecoderName.SSP_RLD:
        return ssp_rld_decode(alpha, code, config.sp_config(), rng, ledger)
    if decoder is DecoderName.ENS_SSP_RLD:
        cfg = config.sp_config()
        return ens_ssp_rld_decode(
            alpha, code, config.S, cfg.branch_list_size, config.T, rng, ledger, cfg=cfg
        )
    if decoder is DecoderName.SSC_FHT:
        return ssc_fht_decode(alpha, code, ledger)[0]
    if decoder is DecoderName.AUT_SSC_FHT:
        return aut_ssc_fht_decode(alpha, code, config.P, rng, ledger, width=config.aut_width)
    if decoder is DecoderName.PER_SSC_FHT:
        return aut_ssc_fht_decode(
            alpha,
            code,
            config.P,
            rng,
            ledger,
            sampler=sample_stage_perm,
            width=config.aut_width,
        )
    return ml_oracle_decode(alpha, code, max_k=ML_ORACLE_MAX_K)


def point_channel(config: SimulationConfig, code: RmCode, ebn0_db: float) -> ChannelConfig:
    """Channel of one Eb/N0 point; its seed is the campaign master seed."""
    return ChannelConfig(
        ebn0_db=ebn0_db, rate=code.rate, seed=config.seed, noiseless=config.noiseless
    )


def simulate_frames(
    config: SimulationConfig,
    point_index: int,
    ebn0_db: float,
    start: int,
    stop: int,
) -> List[FrameOutcome]:
    """Simulate frames ``start..stop-1`` of one Eb/N0 point (top-level so it pickles)."""
    code = build_code(config.r, config.m)
    channel = point_channel(config, code, ebn0_db)
    sigma = channel.sigma
    outcomes: List[FrameOutcome] = []
    for frame_index in range(start, stop):
        streams = frame_streams(channel.seed, point_index, frame_index)
        x = encode(code, random_message(code, streams.message))
        alpha = llr(transmit(x, sigma, streams.noise), sigma)
        ledger = CostLedger(sp_mode=config.sp_mode)
        x_hat = decode_frame(config, code, alpha, streams.decoder, ledger)
        error = not np.array_equal(x_hat, x)
        outcomes.append(
            FrameOutcome(
                frame_index=frame_index,
                error=error,
                ml_bound=error and ml_bound_flag(x_hat, x, alpha),
                gamma=ledger.gamma,
                steps_seq=ledger.steps_seq,
                steps_par=ledger.steps_par,
            )
        )
    return outcomes
