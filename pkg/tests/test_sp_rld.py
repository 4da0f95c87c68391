import numpy as np
import pytest

from rmsp.coding.automorphism import identity, stage_perm
from rmsp.coding.kernels import bipolar, f_stage
from rmsp.coding.paths import DecodePath, NodeRef
from rmsp.coding.rm_code import build_code, codeword_set, encode, is_codeword, random_message
from rmsp.cost.ledger import CostLedger
from rmsp.decoders import (
    ens_ssp_rld_decode,
    perm_metric,
    select_permutation,
    sp_rld_decode,
    ssc_fht_decode,
    ssp_rld_decode,
)
from rmsp.decoders.sp_rld import NodeVisit, run_ensemble, run_list_decoder
from rmsp.domain.errors import ContractViolationError, UnsupportedNodeError
from rmsp.domain.schemas import SpConfig
from rmsp.sim.oracle import ml_oracle_decode

SWAP_BITS_0_4 = stage_perm(np.array([4, 1, 2, 3, 0]))


def _identity_sampler(s, _rng):
    return identity(s)


def _two_level_alpha():
    return np.where(np.arange(32) < 16, 4.0, 0.01)


def _root_path(alpha):
    return DecodePath(alpha=alpha, pm=0.0, pi_init=identity(5), pi_sp=identity(5))


def test_perm_metric_examples():
    assert perm_metric(np.array([3.0, 1.0, 1.0, -1.0]), 1) == 4.0
    assert perm_metric(np.array([3.0, -1.0, 2.0, -2.0]), 2) == 8.0
    word = codeword_set(build_code(1, 3))[9]
    alpha = bipolar(word) * np.linspace(0.5, 4.0, 8)
    assert perm_metric(alpha, 1) == pytest.approx(np.abs(alpha).sum())
    with pytest.raises(ContractViolationError):
        perm_metric(alpha, 0)


def test_select_permutation_with_only_identity():
    alpha = _two_level_alpha()
    path = _root_path(alpha)
    choice = select_permutation(path, NodeRef(3, 5), np.random.default_rng(0), candidates=1)
    assert choice.perm.is_identity()
    assert np.array_equal(choice.alpha_left, f_stage(alpha))
    assert choice.metric == pytest.approx(0.16)
    assert path.pi_sp.is_identity()


def test_select_permutation_prefers_the_bit_swap():
    path = _root_path(_two_level_alpha())
    ledger = CostLedger()
    choice = select_permutation(
        path,
        NodeRef(3, 5),
        np.random.default_rng(0),
        candidates=2,
        sampler=lambda s, _rng: SWAP_BITS_0_4,
        ledger=ledger,
    )
    assert choice.perm == SWAP_BITS_0_4
    assert path.pi_sp == SWAP_BITS_0_4
    assert choice.metric == pytest.approx(32.08)
    assert choice.metric >= perm_metric(f_stage(path.alpha), 2)
    assert ledger.compares == 2 * (16 + 1)
    assert ledger.adds == 2 * 15


def test_select_permutation_never_beats_identity_on_a_tie():
    path = _root_path(np.full(32, 2.0))
    choice = select_permutation(
        path, NodeRef(3, 5), np.random.default_rng(0), sampler=lambda s, _rng: SWAP_BITS_0_4
    )
    assert choice.perm.is_identity()


def test_select_permutation_needs_a_non_leaf_left_child():
    path = DecodePath(alpha=np.ones(16), pm=0.0, pi_init=identity(4), pi_sp=identity(4))
    with pytest.raises(ContractViolationError):
        select_permutation(path, NodeRef(1, 4), np.random.default_rng(0))


@pytest.mark.parametrize("r, m", [(1, 3), (2, 5), (3, 6)])
def test_noiseless_decodes_are_exact(r, m, rng, noiseless_llrs):
    code = build_code(r, m)
    x = encode(code, random_message(code, rng))
    alpha = noiseless_llrs(x)
    result = run_list_decoder(alpha, code, SpConfig(L=4), rng)
    assert np.array_equal(result.codeword, x)
    assert result.pm == 0.0
    assert np.array_equal(sp_rld_decode(alpha, code, SpConfig(L=2), rng), x)
    assert np.array_equal(ssp_rld_decode(alpha, code, SpConfig(L=2, S=1), rng), x)
    assert np.array_equal(ens_ssp_rld_decode(alpha, code, 1, 1, 4, rng), x)


def test_outputs_are_codewords(rng, make_frame):
    code = build_code(2, 6)
    for _ in range(40):
        _, alpha = make_frame(code, 1.0, rng)
        for cfg in (SpConfig(L=1), SpConfig(L=4), SpConfig(L=3, S=2)):
            assert is_codeword(code, ssp_rld_decode(alpha, code, cfg, rng))


def test_list_decoding_never_beats_ml(rng, make_frame):
    code = build_code(2, 4)
    agree = 0
    for _ in range(200):
        _, alpha = make_frame(code, 3.0, rng)
        x_hat = sp_rld_decode(alpha, code, SpConfig(L=16), rng)
        x_ml = ml_oracle_decode(alpha, code)
        assert bipolar(x_hat) @ alpha <= bipolar(x_ml) @ alpha + 1e-9
        agree += int(np.array_equal(x_hat, x_ml))
    assert agree >= 170


def test_single_path_without_sp_is_ssc_fht(rng, make_frame):
    code = build_code(2, 7)
    cfg = SpConfig(L=1, S=0)
    for _ in range(100):
        _, alpha = make_frame(code, 2.0, rng)
        plain = ssp_rld_decode(alpha, code, cfg, rng, sampler=_identity_sampler)
        assert np.array_equal(plain, ssc_fht_decode(alpha, code)[0])


def test_sp_budget_schedule_on_rm35(rng, make_frame):
    code = build_code(3, 5)
    _, alpha = make_frame(code, 2.0, rng)

    def trace_for(S):
        trace = []
        ssp_rld_decode(alpha, code, SpConfig(L=2, S=S), np.random.default_rng(3), trace=trace)
        return trace

    assert trace_for(2) == [NodeVisit(3, 5, True), NodeVisit(2, 4, True)]
    assert trace_for(1) == [NodeVisit(3, 5, True), NodeVisit(2, 4, False)]
    assert all(not visit.used_sp for visit in trace_for(0))


def test_unbounded_budget_reduces_to_sp_rld(rng, make_frame):
    code = build_code(2, 6)
    for _ in range(20):
        _, alpha = make_frame(code, 1.5, rng)
        seed = int(rng.integers(1 << 30))
        full = sp_rld_decode(alpha, code, SpConfig(L=4), np.random.default_rng(seed))
        budget = ssp_rld_decode(alpha, code, SpConfig(L=4, S=99), np.random.default_rng(seed))
        assert np.array_equal(full, budget)


def test_decoding_is_scale_invariant(rng, make_frame):
    code = build_code(2, 6)
    cfg = SpConfig(L=4, S=3)
    for _ in range(200):
        _, alpha = make_frame(code, 1.0, rng)
        seed = int(rng.integers(1 << 30))
        reference = ssp_rld_decode(alpha, code, cfg, np.random.default_rng(seed))
        for c in (0.1, 3.0, 10.0):
            scaled = ssp_rld_decode(c * alpha, code, cfg, np.random.default_rng(seed))
            assert np.array_equal(scaled, reference)


def test_ensemble_of_one_is_ssp_rld(rng, make_frame):
    code = build_code(2, 6)
    for _ in range(20):
        _, alpha = make_frame(code, 1.0, rng)
        ens_ledger, single_ledger = CostLedger(), CostLedger()
        ens = ens_ssp_rld_decode(alpha, code, 2, 2, 1, np.random.default_rng(7), ens_ledger)
        single = ssp_rld_decode(
            alpha, code, SpConfig(L=2, S=2), np.random.default_rng(7), single_ledger
        )
        assert np.array_equal(ens, single)
        assert ens_ledger == single_ledger


def test_ensemble_keeps_the_best_branch(rng, make_frame):
    code = build_code(2, 6)
    cfg = SpConfig(L=1, S=2, L_prime=1, T=6)
    for _ in range(20):
        _, alpha = make_frame(code, 1.0, rng)
        result = run_ensemble(alpha, code, cfg, rng)
        assert len(result.branch_pms) == 6
        assert result.pm == pytest.approx(min(result.branch_pms))


def test_code_outside_the_decodable_range_is_rejected(rng):
    for r, m in ((0, 4), (4, 4)):
        with pytest.raises(UnsupportedNodeError):
            sp_rld_decode(np.ones(16), build_code(r, m), SpConfig(L=2), rng)


def test_missing_rng_draws_from_the_config_seed(rng, make_frame):
    code = build_code(2, 6)
    cfg = SpConfig(L=2, S=2, seed=17)
    for _ in range(10):
        _, alpha = make_frame(code, 1.0, rng)
        seeded = ssp_rld_decode(alpha, code, cfg, np.random.default_rng(17))
        assert np.array_equal(ssp_rld_decode(alpha, code, cfg, None), seeded)
        ensemble = run_ensemble(alpha, code, cfg.model_copy(update={"T": 3}), None)
        again = run_ensemble(alpha, code, cfg.model_copy(update={"T": 3}), None)
        assert ensemble.branch_pms == again.branch_pms


def test_first_order_code_is_decoded_ml(rng, make_frame):
    code = build_code(1, 3)
    for _ in range(1000):
        _, alpha = make_frame(code, 0.0, rng)
        x_ml = ml_oracle_decode(alpha, code)
        assert np.array_equal(sp_rld_decode(alpha, code, SpConfig(L=1), rng), x_ml)
        assert np.array_equal(ssc_fht_decode(alpha, code)[0], x_ml)
