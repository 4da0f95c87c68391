"""
Command-line interface for FER simulation and decoder cost reports.

    rmsp simulate --code 2,8 --decoder ssp-rld --S 3 --L 8 --ebn0 1.0,1.5 --out fer.csv
    rmsp cost --code 2,9 --decoder ssp-rld --S 4 --L 2
    rmsp memory --code 2,9 --L 2 --sp-mode par

Unset Monte-Carlo options fall back to the environment / .env settings (see
``rmsp.core.config``). Failures are reported as Problem Details JSON on stderr.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
import typer

from rmsp.channel.awgn import llr, transmit
from rmsp.coding.rm_code import build_code, encode, random_message
from rmsp.common.exception_handlers import cli_error_boundary
from rmsp.core.config import get_settings
from rmsp.core.logging import configure_logging
from rmsp.cost.ledger import CostLedger
from rmsp.cost.memory import memory_bits, memory_kilobytes
from rmsp.domain.repositories import FerRecordRepository, write_plot_data
from rmsp.domain.schemas import DecoderName, SimulationConfig, SpMode
from rmsp.domain.services import FerSimulator, decoder_memory_bits, validated_code
from rmsp.sim.frames import decode_frame, point_channel
from rmsp.sim.rng import frame_streams

app = typer.Typer(
    add_completion=False,
    help="Reed-Muller list decoding with successive permutations: FER and cost tools.",
)

logger = logging.getLogger(__name__)


def _print_version(value: bool) -> None:
    if value:
        settings = get_settings()
        typer.echo(f"{settings.APP_NAME} {settings.APP_VERSION}")
        raise typer.Exit()


@app.callback()
def _root(
    version: bool = typer.Option(
        False, "--version", callback=_print_version, is_eager=True, help="Print the version."
    ),
) -> None:
    pass


def _parse_code(value: str) -> Tuple[int, int]:
    try:
        r_text, m_text = value.split(",")
        return int(r_text), int(m_text)
    except ValueError:
        raise typer.BadParameter(f"expected 'r,m' (e.g. 2,8), got {value!r}") from None


def _parse_points(value: str) -> List[float]:
    try:
        points = [float(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise typer.BadParameter(f"expected comma-separated dB values, got {value!r}") from None
    if not points:
        raise typer.BadParameter("at least one Eb/N0 point is required")
    return points


_CODE_OPTION = typer.Option(..., "--code", help="Code as 'r,m', e.g. 2,8.")
_DECODER_OPTION = typer.Option(DecoderName.SSP_RLD, "--decoder", help="Decoder under test.")
_L_OPTION = typer.Option(1, "--L", min=1, help="List size.")
_S_OPTION = typer.Option(None, "--S", min=0, help="SP budget (omit for unlimited).")
_T_OPTION = typer.Option(1, "--T", min=1, help="Ensemble size (ens-ssp-rld).")
_LP_OPTION = typer.Option(None, "--Lp", min=1, help="Per-branch list size (ens-ssp-rld).")
_P_OPTION = typer.Option(1, "--P", min=1, help="Permutations (aut-/per-ssc-fht).")
_W_OPTION = typer.Option(
    None, "--W", min=1, help="Permuted decoders run at a time (default L, capped at P)."
)
_SP_MODE_OPTION = typer.Option(SpMode.SEQUENTIAL, "--sp-mode", help="SP schedule for the model.")


# PUBLIC_INTERFACE
@app.command("simulate")
def simulate(
    code: str = _CODE_OPTION,
    decoder: DecoderName = _DECODER_OPTION,
    L: int = _L_OPTION,  # noqa: N803
    S: Optional[int] = _S_OPTION,  # noqa: N803
    T: int = _T_OPTION,  # noqa: N803
    Lp: Optional[int] = _LP_OPTION,  # noqa: N803
    P: int = _P_OPTION,  # noqa: N803
    W: Optional[int] = _W_OPTION,  # noqa: N803
    ebn0: str = typer.Option(..., "--ebn0", help="Comma-separated Eb/N0 points in dB."),
    max_frames: Optional[int] = typer.Option(None, "--max-frames", min=1),
    target_errors: Optional[int] = typer.Option(None, "--target-errors", min=1),
    seed: Optional[int] = typer.Option(None, "--seed", min=0),
    workers: Optional[int] = typer.Option(None, "--workers", min=1),
    sp_mode: SpMode = _SP_MODE_OPTION,
    out: Optional[Path] = typer.Option(None, "--out", help="Append FER rows to this CSV."),
    noiseless: bool = typer.Option(False, "--noiseless", help="Clamp sigma (sanity check)."),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Overrides LOG_LEVEL."),
) -> None:
    """
    PUBLIC_INTERFACE
    Run a Monte-Carlo FER campaign and print one line per Eb/N0 point.

    With --out, rows are appended to the CSV and a ``<stem>.<decoder>.dat`` plot file is
    written next to it.
    """
    settings = get_settings()
    configure_logging(log_level or settings.LOG_LEVEL)
    r, m = _parse_code(code)
    points = _parse_points(ebn0)
    with cli_error_boundary("rmsp simulate"):
        config = SimulationConfig(
            r=r,
            m=m,
            decoder=decoder,
            L=L,
            S=S,
            T=T,
            L_prime=Lp,
            P=P,
            W=W,
            ebn0_db=points,
            max_frames=max_frames or settings.MAX_FRAMES,
            target_errors=target_errors or settings.TARGET_ERRORS,
            seed=settings.DEFAULT_SEED if seed is None else seed,
            workers=workers or settings.WORKERS,
            batch_frames=settings.BATCH_FRAMES,
            sp_mode=sp_mode,
            quant_bits=settings.QUANT_BITS,
            noiseless=noiseless,
        )
        logger.info("Resolved config: %s", config.model_dump_json())
        records = FerSimulator(config).run()
        for rec in records:
            typer.echo(
                f"{rec.ebn0_db:6.2f} dB  frames={rec.frames:<8d} errors={rec.frame_errors:<6d} "
                f"fer={rec.fer:.5e}  ml_bound={rec.ml_bound_errors:<6d} gamma={rec.gamma:.4g}"
            )
        if out is not None:
            FerRecordRepository(out).add_all(records)
            for path in write_plot_data(records, out):
                logger.info("Wrote plot data %s", path)


# PUBLIC_INTERFACE
@app.command("cost")
def cost(
    code: str = _CODE_OPTION,
    decoder: DecoderName = _DECODER_OPTION,
    L: int = _L_OPTION,  # noqa: N803
    S: Optional[int] = _S_OPTION,  # noqa: N803
    T: int = _T_OPTION,  # noqa: N803
    Lp: Optional[int] = _LP_OPTION,  # noqa: N803
    P: int = _P_OPTION,  # noqa: N803
    W: Optional[int] = _W_OPTION,  # noqa: N803
    ebn0: float = typer.Option(8.0, "--ebn0", help="Eb/N0 of the instrumented frame."),
    seed: Optional[int] = typer.Option(None, "--seed", min=0),
    sp_mode: SpMode = _SP_MODE_OPTION,
) -> None:
    """PUBLIC_INTERFACE: Decode one frame with an instrumented ledger and print its costs."""
    settings = get_settings()
    configure_logging(settings.LOG_LEVEL)
    r, m = _parse_code(code)
    with cli_error_boundary("rmsp cost"):
        config = SimulationConfig(
            r=r,
            m=m,
            decoder=decoder,
            L=L,
            S=S,
            T=T,
            L_prime=Lp,
            P=P,
            W=W,
            ebn0_db=[ebn0],
            seed=settings.DEFAULT_SEED if seed is None else seed,
            sp_mode=sp_mode,
            quant_bits=settings.QUANT_BITS,
        )
        rm = validated_code(config)
        channel = point_channel(config, rm, ebn0)
        streams = frame_streams(channel.seed, 0, 0)
        x = encode(rm, random_message(rm, streams.message))
        alpha = llr(transmit(x, channel.sigma, streams.noise), channel.sigma)
        ledger = CostLedger(sp_mode=sp_mode)
        x_hat = decode_frame(config, rm, alpha, streams.decoder, ledger)
        phi = decoder_memory_bits(config, rm)
        report = {
            "code": rm.label,
            "decoder": decoder.value,
            "ebn0_db": ebn0,
            "frame_error": not bool(np.array_equal(x_hat, x)),
            "gamma": ledger.gamma,
            "adds": ledger.adds,
            "compares": ledger.compares,
            "upsilon_seq": ledger.steps_seq,
            "upsilon_par": ledger.steps_par,
            "phi_bits": phi,
            "phi_kb": None if phi is None else round(memory_kilobytes(phi), 2),
        }
        typer.echo(json.dumps(report, indent=2))


# PUBLIC_INTERFACE
@app.command("memory")
def memory(
    code: str = _CODE_OPTION,
    L: int = _L_OPTION,  # noqa: N803
    T: int = _T_OPTION,  # noqa: N803
    Q: Optional[int] = typer.Option(None, "--Q", min=1, help="Bits per real value."),  # noqa: N803
    sp_mode: SpMode = _SP_MODE_OPTION,
) -> None:
    """PUBLIC_INTERFACE: Print the memory model of (Ens-)SSP-RLD in bits and kB."""
    r, m = _parse_code(code)
    with cli_error_boundary("rmsp memory"):
        rm = build_code(r, m)
        bits = memory_bits(rm, L, Q or get_settings().QUANT_BITS, sp_mode, T)
        typer.echo(
            f"{rm.label} L={L} T={T} {sp_mode.value}: {bits} bits "
            f"({memory_kilobytes(bits):.2f} kB)"
        )


# PUBLIC_INTERFACE
def main(argv: Optional[List[str]] = None) -> None:
    """
    PUBLIC_INTERFACE
    Entrypoint to run the Typer CLI.

    Args:
        argv: Optional argv override (primarily for tests). If None, uses sys.argv[1:].

    Returns:
        None. Exits via Typer/SystemExit.
    """
    app(prog_name="rmsp", args=argv if argv is not None else sys.argv[1:])


if __name__ == "__main__":
    main()
