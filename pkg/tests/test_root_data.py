import pytest
from hypothesis import given, strategies as st

from klrspecht.root_data import CartanType, DominantWeight, RootVector, weight_pairing


def test_affine_cartan_matrix_rank_two():
    ct = CartanType.affine(2)
    assert [[ct.cartan_entry(i, j) for j in range(3)] for i in range(3)] == [[2, -1, 0], [-2, 2, -2], [0, -1, 2]]


def test_infinite_cartan_window():
    ct = CartanType.infinite()
    assert [[ct.cartan_entry(i, j) for j in range(4)] for i in range(4)] == [
        [2, -1, 0, 0],
        [-2, 2, -1, 0],
        [0, -1, 2, -1],
        [0, 0, -1, 2],
    ]


@pytest.mark.parametrize("ct", [CartanType.infinite(), CartanType.affine(2), CartanType.affine(3), CartanType.affine(4)])
def test_bilinear_form_is_symmetric_and_matches_symmetrizer(ct):
    idx = ct.indices(6)
    for i in idx:
        assert ct.bilinear_form(i, i) == 2 * ct.symmetrizer(i)
        for j in idx:
            assert ct.bilinear_form(i, j) == ct.bilinear_form(j, i)


def test_long_roots():
    assert CartanType.infinite().bilinear_form(0, 0) == 4
    assert CartanType.infinite().bilinear_form(5, 5) == 2
    ct = CartanType.affine(3)
    assert [ct.bilinear_form(i, i) for i in range(4)] == [4, 2, 2, 4]


def test_residue_folding():
    assert [CartanType.affine(3).residue(k) for k in range(-7, 8)] == [1, 0, 1, 2, 3, 2, 1, 0, 1, 2, 3, 2, 1, 0, 1]
    assert [CartanType.infinite().residue(k) for k in (-3, 0, 4)] == [3, 0, 4]


@given(st.integers(2, 6), st.integers(-50, 50))
def test_residue_is_periodic_and_even(ell, k):
    ct = CartanType.affine(ell)
    assert ct.residue(k) == ct.residue(k + 2 * ell) == ct.residue(-k)
    assert 0 <= ct.residue(k) <= ell


def test_parse_and_errors():
    assert CartanType.parse("inf") == CartanType.infinite()
    assert CartanType.parse("aff", 3) == CartanType.affine(3)
    with pytest.raises(ValueError):
        CartanType.parse("aff")
    with pytest.raises(ValueError):
        CartanType.affine(1)
    with pytest.raises(ValueError):
        CartanType.affine(2).check_index(3)
    with pytest.raises(ValueError):
        CartanType.infinite().indices()
    assert str(CartanType.affine(2)) == "C_2^(1)"


def test_root_vector_arithmetic():
    beta = RootVector.of([0, 1, 1, 3])
    assert beta[1] == 2 and beta[2] == 0 and beta.height == 4
    assert beta + RootVector.simple(2) == RootVector.of({0: 1, 1: 2, 2: 1, 3: 1})
    assert str(RootVector.of({0: 2, 1: 5, 4: 1})) == "2a0 + 5a1 + a4"
    with pytest.raises(ValueError):
        RootVector.of({0: -1})


def test_dominant_weight_from_multicharge():
    ct = CartanType.affine(2)
    lam = DominantWeight.from_multicharge(ct, (0, 4, 2))
    assert lam[0] == 2 and lam[2] == 1 and lam.level == 3
    assert weight_pairing(ct, 0, lam, RootVector()) == 2
