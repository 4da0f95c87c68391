"""Memory requirement (bits) of the list decoders.

Q bits per stored real value; hard decisions take one bit. A single decoder keeps the
channel LLRs, one LLR buffer per path (m buffers per path when all s SP candidates are
evaluated in parallel), one permutation slot per stage and two bit buffers per path.
The ensemble stores T such decoders without the channel buffer and adds one shared copy.
"""

from __future__ import annotations

from rmsp.coding.rm_code import RmCode
from rmsp.domain.errors import InvalidParameterError
from rmsp.domain.schemas import SpMode

DEFAULT_QUANT_BITS = 32


def _validate(L: int, Q: int, T: int) -> None:
    if L < 1 or Q < 1 or T < 1:
        raise InvalidParameterError(f"L, Q and T must be >= 1 (got L={L}, Q={Q}, T={T})")


def single_decoder_bits(code: RmCode, L: int, Q: int, sp_mode: SpMode) -> int:
    """Bits of one SP-RLD / SSP-RLD decoder with list size L."""
    _validate(L, Q, 1)
    n, m = code.N, code.m
    parallel = sp_mode is SpMode.PARALLEL
    if L == 1:
        llr_buffers = (m + 1) if parallel else 2
        return llr_buffers * n * Q + m * Q + n
    llr_buffers = (m * L + 1) if parallel else (L + 1)
    return n * llr_buffers * Q + m * Q + 2 * n * L


def ensemble_bits(code: RmCode, L: int, Q: int, sp_mode: SpMode, T: int) -> int:
    """Bits of T concurrent decoders with per-branch list size L plus one channel buffer."""
    _validate(L, Q, T)
    n, m = code.N, code.m
    parallel = sp_mode is SpMode.PARALLEL
    if L == 1:
        per_branch = (m * n * Q if parallel else n * Q) + m * Q + n
    else:
        per_branch = (m * n * L * Q if parallel else n * L * Q) + m * Q + 2 * n * L
    return per_branch * T + n * Q


# PUBLIC_INTERFACE
def memory_bits(
    code: RmCode,
    L: int,
    Q: int = DEFAULT_QUANT_BITS,
    sp_mode: SpMode = SpMode.SEQUENTIAL,
    T: int = 1,
) -> int:
    """
    PUBLIC_INTERFACE
    Memory of (Ens-)SSP-RLD in bits.

    T = 1 selects the single-decoder formulas; T > 1 the ensemble formulas with L as the
    per-branch list size. Both coincide at T = 1.
    """
    if T == 1:
        return single_decoder_bits(code, L, Q, sp_mode)
    return ensemble_bits(code, L, Q, sp_mode, T)


def aut_ssc_fht_memory_bits(code: RmCode, P: int, width: int, Q: int = DEFAULT_QUANT_BITS) -> int:
    """
    Memory of ``width`` concurrent SSC-FHT decoders serving P permutations.

    Each running decoder holds one LLR buffer and one bit buffer; the channel LLRs are kept
    once. P only bounds ``width``.
    """
    if P < 1 or Q < 1:
        raise InvalidParameterError(f"P and Q must be >= 1 (got P={P}, Q={Q})")
    if not 1 <= width <= P:
        raise InvalidParameterError(f"width must lie in [1, P={P}], got {width}")
    n = code.N
    return width * (n * Q + n) + n * Q


def memory_kilobytes(bits: int) -> float:
    return bits / 8 / 1024
