import numpy as np
import pytest

from rmsp.channel.awgn import llr, sigma_from_ebn0, transmit
from rmsp.coding.rm_code import build_code, encode, random_message
from rmsp.cost.ledger import CostLedger, ceil_log2, charge_f_stage, charge_fht, charge_g_stage
from rmsp.cost.memory import (
    aut_ssc_fht_memory_bits,
    ensemble_bits,
    memory_bits,
    memory_kilobytes,
    single_decoder_bits,
)
from rmsp.decoders import ssp_rld_decode
from rmsp.domain.errors import InvalidParameterError
from rmsp.domain.schemas import SpConfig, SpMode

RM29 = build_code(2, 9)


@pytest.mark.parametrize("n, expected", [(1, 0), (2, 1), (3, 2), (8, 3), (9, 4)])
def test_ceil_log2(n, expected):
    assert ceil_log2(n) == expected


def test_sorting_eight_candidates():
    ledger = CostLedger()
    ledger.charge_sort(8)
    assert (ledger.compares, ledger.steps_seq, ledger.steps_par) == (24, 3, 3)


def test_stage_charges():
    ledger = CostLedger()
    charge_f_stage(ledger, 16)
    assert (ledger.gamma, ledger.steps_seq) == (8, 1)
    charge_g_stage(ledger, 16, paths=2)
    assert (ledger.adds, ledger.steps_seq) == (16, 2)
    charge_fht(ledger, 8)
    assert (ledger.adds, ledger.steps_seq) == (16 + 24, 5)


def test_merging_branch_ledgers():
    fast, slow = CostLedger(adds=10, steps_seq=5, steps_par=2), CostLedger(adds=4, steps_seq=7)
    assert CostLedger.parallel([fast, slow]).steps_seq == 7
    assert CostLedger.batched([fast, slow], 1).steps_seq == 12
    merged = CostLedger.batched([fast, slow], 1)
    assert merged.adds == 14
    assert merged.steps_par == 2
    assert CostLedger.parallel([]).gamma == 0


def test_time_steps_follow_the_schedule():
    ledger = CostLedger(sp_mode=SpMode.PARALLEL)
    ledger.charge(adds=3, steps=9, steps_par=2)
    assert ledger.time_steps == 2
    assert ledger.as_dict()["sp_mode"] == "par"


def _instrumented_ssp_4_2(seed, ebn0_db=3.0):
    gen = np.random.default_rng(seed)
    x = encode(RM29, random_message(RM29, gen))
    sigma = sigma_from_ebn0(ebn0_db, RM29.rate)
    alpha = llr(transmit(x, sigma, gen), sigma)
    ledger = CostLedger()
    ssp_rld_decode(alpha, RM29, SpConfig(L=2, S=4), gen, ledger)
    return ledger


def test_ssp_4_2_on_rm29_matches_published_costs():
    ledger = _instrumented_ssp_4_2(seed=11)
    assert 0.85 * 337 <= ledger.steps_seq <= 1.15 * 337
    assert 0.85 * 8.33e4 <= ledger.gamma <= 1.15 * 8.33e4
    assert ledger.steps_par < ledger.steps_seq


def test_ledger_is_data_independent():
    first = _instrumented_ssp_4_2(seed=1, ebn0_db=1.0)
    for seed in range(2, 8):
        other = _instrumented_ssp_4_2(seed=seed, ebn0_db=1.0 + seed / 4)
        assert other.as_dict() == first.as_dict()


def test_memory_table_values():
    assert memory_bits(RM29, 2, 32, SpMode.SEQUENTIAL) == 51_488
    assert memory_bits(RM29, 2, 32, SpMode.PARALLEL) == 313_632
    assert memory_kilobytes(51_488) == pytest.approx(6.29, abs=0.01)
    assert memory_kilobytes(313_632) == pytest.approx(38.29, abs=0.01)


@pytest.mark.parametrize("mode", list(SpMode))
@pytest.mark.parametrize("L", [1, 2, 8])
def test_ensemble_of_one_matches_single_decoder(mode, L):
    assert ensemble_bits(RM29, L, 32, mode, 1) == single_decoder_bits(RM29, L, 32, mode)


def test_ensemble_memory_grows_with_branches():
    one = memory_bits(RM29, 1, 32, SpMode.SEQUENTIAL, T=1)
    eight = memory_bits(RM29, 1, 32, SpMode.SEQUENTIAL, T=8)
    assert eight == 8 * (one - RM29.N * 32) + RM29.N * 32


def test_aut_memory_model():
    n, q = RM29.N, 32
    assert aut_ssc_fht_memory_bits(RM29, 48, 1, q) == (n * q + n) + n * q
    assert aut_ssc_fht_memory_bits(RM29, 48, 48, q) == 48 * (n * q + n) + n * q
    with pytest.raises(InvalidParameterError):
        aut_ssc_fht_memory_bits(RM29, 4, 5, q)
    with pytest.raises(InvalidParameterError):
        memory_bits(RM29, 0)
