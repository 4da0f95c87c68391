import numpy as np
import pytest

from rmsp.coding.automorphism import (
    AffinePerm,
    apply_index,
    compose,
    from_text,
    gf2_inverse,
    identity,
    invert,
    permute_vector,
    sample_affine,
    sample_stage_perm,
    stage_perm,
    to_text,
    unpermute_vector,
)
from rmsp.coding.rm_code import build_code, codeword_set, is_codeword
from rmsp.domain.errors import InvalidParameterError

SWAP_AND_SHIFT = AffinePerm(np.array([[0, 1], [1, 0]]), np.array([1, 0]))


def test_identity_maps_every_index_to_itself():
    p = identity(3)
    assert [apply_index(p, i) for i in range(8)] == list(range(8))
    assert invert(p) == p
    assert p.is_identity()


def test_hand_built_affine_map():
    # i = (i0, i1) -> (i1 ^ 1, i0)
    assert [apply_index(SWAP_AND_SHIFT, i) for i in range(4)] == [1, 3, 0, 2]


def test_permute_vector_scatters_forward():
    v = np.array([10, 20, 30, 40])
    out = permute_vector(SWAP_AND_SHIFT, v)
    assert out.tolist() == [30, 10, 40, 20]
    assert unpermute_vector(SWAP_AND_SHIFT, out).tolist() == v.tolist()
    assert permute_vector(invert(SWAP_AND_SHIFT), out).tolist() == v.tolist()


def test_stage_permutation_examples():
    assert apply_index(stage_perm(np.array([1, 0, 2])), 1) == 2
    assert [apply_index(stage_perm(np.array([1, 0])), i) for i in range(4)] == [0, 2, 1, 3]
    embedded = stage_perm(np.array([0, 2, 1]))
    assert [apply_index(embedded, i) for i in (0, 2, 4, 6)] == [0, 4, 2, 6]
    assert stage_perm(np.arange(4)).is_identity()


def test_stage_perm_rejects_non_permutation():
    with pytest.raises(InvalidParameterError):
        stage_perm(np.array([0, 0, 1]))


def test_group_laws(rng):
    for _ in range(50):
        p, q = sample_affine(5, rng), sample_affine(5, rng)
        assert compose(identity(5), p) == p
        assert compose(invert(p), p).is_identity()
        assert invert(invert(p)) == p
        assert np.array_equal(compose(p, q).index_map, p.index_map[q.index_map])
        i = int(rng.integers(0, 32))
        assert apply_index(invert(p), apply_index(p, i)) == i


def test_sampled_maps_are_bijections(rng):
    for s in (1, 3, 6):
        for _ in range(200):
            assert sorted(sample_affine(s, rng).index_map.tolist()) == list(range(2**s))
            assert sorted(sample_stage_perm(s, rng).index_map.tolist()) == list(range(2**s))


def test_affine_group_of_s2_has_24_elements(rng):
    seen = {to_text(sample_affine(2, rng)) for _ in range(2000)}
    assert len(seen) == 24


def test_sampling_is_deterministic():
    a = [sample_affine(6, np.random.default_rng(5)) for _ in range(2)]
    assert a[0] == a[1]


def test_gf2_inverse(rng):
    p = sample_affine(6, rng)
    product = (p.A.astype(int) @ gf2_inverse(p.A).astype(int)) % 2
    assert np.array_equal(product, np.eye(6, dtype=int))
    with pytest.raises(InvalidParameterError):
        gf2_inverse(np.array([[1, 1], [1, 1]]))


@pytest.mark.parametrize("r, s", [(1, 3), (1, 4), (2, 4)])
def test_automorphisms_preserve_the_code(r, s, rng):
    code = build_code(r, s)
    book = codeword_set(code)
    members = {row.tobytes() for row in book}
    for _ in range(1000):
        p = sample_affine(s, rng)
        x = book[int(rng.integers(0, len(book)))]
        y = permute_vector(p, x)
        assert y.tobytes() in members
        assert is_codeword(code, y)


def test_text_format():
    assert to_text(identity(3)) == "1,2,4;0"
    assert from_text(2, to_text(SWAP_AND_SHIFT)) == SWAP_AND_SHIFT
    for bad in ("1,2;", "1,2,4;0", "1,1;0", "zz;0"):
        with pytest.raises(InvalidParameterError):
            from_text(2, bad)
