"""Service layer: Monte-Carlo FER campaigns."""

from __future__ import annotations

import logging
import time
from concurrent.futures import Executor, ProcessPoolExecutor
from typing import Any, Dict, List, Optional

from rmsp.coding.rm_code import RmCode, build_code
from rmsp.cost.memory import aut_ssc_fht_memory_bits, memory_bits
from rmsp.domain.errors import ConfigurationError, InvalidParameterError, OracleLimitError
from rmsp.domain.schemas import DecoderName, FerRecord, SimulationConfig, SpMode
from rmsp.sim.frames import FrameOutcome, simulate_frames
from rmsp.sim.oracle import ML_ORACLE_MAX_K

logger = logging.getLogger(__name__)

_LIST_DECODERS = {
    DecoderName.SP_RLD,
    DecoderName.SSP_RLD,
    DecoderName.ENS_SSP_RLD,
    DecoderName.SSC_FHT,
    DecoderName.AUT_SSC_FHT,
    DecoderName.PER_SSC_FHT,
}


def validated_code(config: SimulationConfig) -> RmCode:
    """Build the code and check it against the decoder's domain."""
    try:
        code = build_code(config.r, config.m)
    except InvalidParameterError as exc:
        raise ConfigurationError(str(exc)) from exc
    if config.decoder in _LIST_DECODERS and not 1 <= code.r <= code.m - 1:
        raise ConfigurationError(
            f"decoder {config.decoder.value} needs 1 <= r <= m-1, got {code.label}"
        )
    if config.decoder is DecoderName.ML_ORACLE and code.K > ML_ORACLE_MAX_K:
        raise OracleLimitError(
            f"ml-oracle enumerates 2^K codewords and is limited to K <= {ML_ORACLE_MAX_K}; "
            f"{code.label} has K={code.K}"
        )
    return code


def decoder_memory_bits(config: SimulationConfig, code: RmCode) -> Optional[int]:
    """Memory model of the configured decoder (None for the ML oracle)."""
    q, mode = config.quant_bits, config.sp_mode
    decoder = config.decoder
    if decoder in (DecoderName.SP_RLD, DecoderName.SSP_RLD):
        return memory_bits(code, config.L, q, mode)
    if decoder is DecoderName.ENS_SSP_RLD:
        return memory_bits(code, config.L_prime or config.L, q, mode, config.T)
    if decoder is DecoderName.SSC_FHT:
        return memory_bits(code, 1, q, SpMode.SEQUENTIAL)
    if decoder in (DecoderName.AUT_SSC_FHT, DecoderName.PER_SSC_FHT):
        width = config.P if mode is SpMode.PARALLEL else config.aut_width
        return aut_ssc_fht_memory_bits(code, config.P, width, q)
    return None


def _decoder_params(config: SimulationConfig) -> Dict[str, Any]:
    decoder = config.decoder
    if decoder is DecoderName.SP_RLD:
        return {"L": config.L}
    if decoder is DecoderName.SSP_RLD:
        return {"L": config.L, "S": config.S}
    if decoder is DecoderName.ENS_SSP_RLD:
        return {"S": config.S, "L_prime": config.L_prime or config.L, "T": config.T}
    if decoder in (DecoderName.AUT_SSC_FHT, DecoderName.PER_SSC_FHT):
        return {"P": config.P, "W": config.aut_width}
    return {}


class FerSimulator:
    """FER campaign for one code and decoder over a list of Eb/N0 points."""

    def __init__(self, config: SimulationConfig) -> None:
        self._config = config
        self._code = validated_code(config)
        self._phi_bits = decoder_memory_bits(config, self._code)

    @property
    def code(self) -> RmCode:
        return self._code

    def run(self) -> List[FerRecord]:
        config = self._config
        logger.info(
            "Simulating %s with %s over %d point(s), seed=%d, workers=%d",
            self._code.label,
            config.decoder.value,
            len(config.ebn0_db),
            config.seed,
            config.workers,
        )
        executor: Optional[Executor] = None
        if config.workers > 1:
            executor = ProcessPoolExecutor(max_workers=config.workers)
        try:
            return [
                self.run_point(index, ebn0_db, executor=executor)
                for index, ebn0_db in enumerate(config.ebn0_db)
            ]
        finally:
            if executor is not None:
                executor.shutdown()

    def run_point(
        self, point_index: int, ebn0_db: float, *, executor: Optional[Executor] = None
    ) -> FerRecord:
        """
        Simulate one Eb/N0 point.

        Frames are processed in batches and examined in frame order; the point ends at the
        frame that reaches ``target_errors`` (or at ``max_frames``), so the result does not
        depend on how frames were spread over workers.
        """
        config = self._config
        started = time.perf_counter()
        frames = errors = ml_errors = 0
        gamma = steps_seq = steps_par = 0
        next_frame = 0
        reached_target = False
        while not reached_target and next_frame < config.max_frames:
            stop = min(next_frame + config.batch_frames, config.max_frames)
            for outcome in self._simulate(point_index, ebn0_db, next_frame, stop, executor):
                frames += 1
                errors += int(outcome.error)
                ml_errors += int(outcome.ml_bound)
                gamma += outcome.gamma
                steps_seq += outcome.steps_seq
                steps_par += outcome.steps_par
                if errors >= config.target_errors:
                    reached_target = True
                    break
            logger.debug(
                "Eb/N0=%.2f dB: %d frames, %d errors after batch ending at %d",
                ebn0_db,
                frames,
                errors,
                stop,
            )
            next_frame = stop

        elapsed = time.perf_counter() - started
        record = FerRecord(
            r=self._code.r,
            m=self._code.m,
            decoder=config.decoder.value,
            **_decoder_params(config),
            ebn0_db=ebn0_db,
            frames=frames,
            frame_errors=errors,
            fer=errors / frames,
            ml_bound_errors=ml_errors,
            gamma=gamma / frames,
            upsilon_seq=steps_seq / frames,
            upsilon_par=steps_par / frames,
            phi_bits=self._phi_bits,
            wall_seconds=elapsed,
            seed=config.seed,
        )
        logger.info(
            "Eb/N0=%.2f dB done: frames=%d errors=%d fer=%.3e ml_bound=%d (%.1fs)",
            ebn0_db,
            frames,
            errors,
            record.fer,
            ml_errors,
            elapsed,
        )
        return record

    def _simulate(
        self,
        point_index: int,
        ebn0_db: float,
        start: int,
        stop: int,
        executor: Optional[Executor],
    ) -> List[FrameOutcome]:
        config = self._config
        if executor is None:
            return simulate_frames(config, point_index, ebn0_db, start, stop)
        chunk = -(-(stop - start) // config.workers)
        futures = [
            executor.submit(simulate_frames, config, point_index, ebn0_db, a, min(a + chunk, stop))
            for a in range(start, stop, chunk)
        ]
        outcomes = [outcome for future in futures for outcome in future.result()]
        return sorted(outcomes, key=lambda o: o.frame_index)


# PUBLIC_INTERFACE
def run_fer(config: SimulationConfig) -> List[FerRecord]:
    """PUBLIC_INTERFACE: Run every Eb/N0 point of ``config`` and return one record per point."""
    return FerSimulator(config).run()
