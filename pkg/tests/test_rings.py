from __future__ import annotations

import numpy as np
import pytest

from starclean.algebra import projections
from starclean.corpus import build_corpus
from starclean.errors import AxiomViolation, InvalidParameter, InvalidProjection, InvolutionViolation, SizeCapExceeded
from starclean.rings import (
    attach_involution,
    decode_matrix,
    encode_matrix,
    enumerate_involutions,
    frobenius_involution,
    identity_involution,
    make_corner_ring,
    make_gf,
    make_matrix_ring,
    make_matrix_star_ring,
    make_product,
    make_table_ring,
    make_zmod,
    matrix_order,
    swap_involution,
    validate_involution,
    validate_ring,
)


def _z(n: int):
    return attach_involution(make_zmod(n), identity_involution(make_zmod(n)))


def test_zmod_tables_and_identities():
    r = make_zmod(6)
    assert r.order == 6
    assert r.zero == 0 and r.one == 1
    assert int(r.add[4, 5]) == 3
    assert int(r.mul[4, 5]) == 2
    assert int(r.neg[2]) == 4
    assert r.label == "Z6"


def test_zero_ring_has_one_equal_to_zero():
    r = make_zmod(1)
    assert r.order == 1
    assert r.zero == r.one == 0


def test_gf4_is_a_field_with_frobenius_of_order_two():
    r = make_gf(4)
    assert r.order == 4
    for x in range(1, 4):
        assert any(int(r.mul[x, y]) == r.one for y in range(4))
    star = frobenius_involution(4)
    assert list(star) == [0, 1, 3, 2]
    s = attach_involution(r, star, label="GF(4)^frob")
    assert s.label == "GF(4)^frob"


def test_gf_rejects_non_prime_powers_and_large_exponents():
    with pytest.raises(InvalidParameter):
        make_gf(6)
    with pytest.raises(InvalidParameter):
        make_gf(8)


def test_frobenius_needs_a_square_order():
    with pytest.raises(InvalidParameter):
        frobenius_involution(5)


def test_product_encoding_is_row_major():
    r = make_product(make_zmod(2), make_zmod(3))
    assert r.order == 6
    assert r.label == "Z2xZ3"
    assert r.one == 1 * 3 + 1
    # (1, 2) * (1, 2) = (1, 1)
    assert int(r.mul[5, 5]) == 4


def test_nested_product_labels_are_parenthesized():
    z2 = make_zmod(2)
    inner = make_product(z2, z2)
    assert make_product(z2, inner).label == "Z2x(Z2xZ2)"


def test_matrix_encoding_places_entries_by_radix():
    assert encode_matrix([[1, 0], [0, 0]], 2) == 1
    assert encode_matrix([[0, 1], [0, 0]], 2) == 2
    assert encode_matrix([[0, 0], [1, 0]], 2) == 4
    assert encode_matrix([[0, 0], [0, 1]], 2) == 8
    assert encode_matrix([[1, 0], [1, 0]], 2) == 5
    assert decode_matrix(5, 2, 2) == [[1, 0], [1, 0]]


def test_m2z2_multiplication_matches_matrix_product():
    r = make_matrix_ring(make_zmod(2), 2)
    assert r.order == 16
    assert r.one == 9
    # E11 * E12 = E12, E12 * E11 = 0
    assert int(r.mul[1, 2]) == 2
    assert int(r.mul[2, 1]) == 0
    # E12 * E21 = E11
    assert int(r.mul[2, 4]) == 1


def test_size_cap_is_checked_before_building():
    with pytest.raises(SizeCapExceeded) as excinfo:
        make_matrix_ring(make_zmod(4), 3)
    assert excinfo.value.order == 4**9
    assert excinfo.value.cap == 4096
    with pytest.raises(SizeCapExceeded):
        make_zmod(10, max_order=5)


def test_huge_matrix_order_is_reported_as_a_power():
    with pytest.raises(SizeCapExceeded) as excinfo:
        make_matrix_ring(make_zmod(2), 500)
    assert excinfo.value.order is None
    assert excinfo.value.order_text == "2^250000"
    assert str(excinfo.value) == "M500(Z2) would have order 2^250000, above the size cap 4096"
    assert matrix_order(2, 500, stop_above=4096) == 8192
    assert matrix_order(1, 500, stop_above=4096) == 1
    assert matrix_order(3, 2) == 81


def test_table_ring_discovers_identities():
    add = [[(x + y) % 3 for y in range(3)] for x in range(3)]
    mul = [[(x * y) % 3 for y in range(3)] for x in range(3)]
    r = make_table_ring(3, add, mul, label="F3")
    assert r.zero == 0 and r.one == 1
    assert list(r.neg) == [0, 2, 1]


def test_table_ring_without_multiplicative_identity_fails():
    add = [[0, 1], [1, 0]]
    mul = [[0, 0], [0, 0]]
    with pytest.raises(AxiomViolation) as excinfo:
        make_table_ring(2, add, mul)
    assert excinfo.value.law == "multiplicative-identity"


def test_table_ring_rejects_out_of_range_entries():
    with pytest.raises(AxiomViolation) as excinfo:
        make_table_ring(2, [[0, 1], [1, 2]], [[0, 0], [0, 1]])
    assert excinfo.value.law == "add-closure"
    assert excinfo.value.witness == (1, 1)


def test_identity_is_not_an_involution_on_m2z2():
    r = make_matrix_ring(make_zmod(2), 2)
    with pytest.raises(InvolutionViolation) as excinfo:
        attach_involution(r, identity_involution(r))
    assert excinfo.value.law == "anti-multiplicativity"
    assert excinfo.value.witness == (1, 2)


def test_involution_must_be_a_permutation():
    r = make_zmod(3)
    with pytest.raises(InvolutionViolation) as excinfo:
        attach_involution(r, [0, 1, 1])
    assert excinfo.value.law == "permutation"


def test_swap_involution_on_z2xz2():
    r = make_product(make_zmod(2), make_zmod(2))
    star = swap_involution(2)
    assert list(star) == [0, 2, 1, 3]
    s = attach_involution(r, star, label="Z2xZ2^swap")
    assert s.order == 4


def test_conjugate_transpose_on_m2z2():
    s = make_matrix_star_ring(_z(2), 2)
    assert s.label == "M2(Z2)"
    assert int(s.star[2]) == 4
    assert int(s.star[5]) == 3


def test_corner_ring_of_m2z2_at_e11():
    s = make_matrix_star_ring(_z(2), 2)
    corner = make_corner_ring(s, 1)
    assert corner.star_ring.order == 2
    assert list(corner.embedding) == [0, 1]
    assert corner.star_ring.ring.one == corner.index_of(1)
    assert corner.index_of(2) is None
    assert corner.star_ring.label == "corner(M2(Z2), p=1)"


def test_corner_rejects_non_projection():
    s = make_matrix_star_ring(_z(2), 2)
    # E11 + E12 is idempotent but not self-adjoint
    with pytest.raises(InvalidProjection) as excinfo:
        make_corner_ring(s, 3)
    assert excinfo.value.element == 3
    with pytest.raises(InvalidProjection):
        make_corner_ring(s, 2)


def test_enumerate_involutions_small_rings():
    assert enumerate_involutions(make_zmod(4)) == [(0, 1, 2, 3)]
    assert enumerate_involutions(make_product(make_zmod(2), make_zmod(2))) == [(0, 1, 2, 3), (0, 2, 1, 3)]
    assert enumerate_involutions(make_gf(4)) == [(0, 1, 2, 3), (0, 1, 3, 2)]


def test_enumerate_involutions_has_an_order_limit():
    with pytest.raises(InvalidParameter):
        enumerate_involutions(make_zmod(10))


def test_tables_are_read_only():
    r = make_zmod(3)
    with pytest.raises(ValueError):
        r.add[0, 0] = 1
    assert isinstance(r.mul, np.ndarray)


_QUICK = [entry.star_ring for entry in build_corpus("quick") if entry.star_ring is not None]


@pytest.mark.parametrize("s", _QUICK, ids=lambda s: s.label)
def test_corpus_rings_pass_exhaustive_revalidation(s):
    validate_ring(s.ring, exhaustive=True)
    validate_involution(s.ring, s.star)


@pytest.mark.parametrize("base", [make_zmod(4), make_gf(9), make_product(make_zmod(2), make_zmod(3))], ids=lambda r: r.label)
def test_one_by_one_matrices_have_the_base_tables(base):
    m = make_matrix_ring(base, 1)
    assert m.order == base.order
    assert (m.add == base.add).all()
    assert (m.mul == base.mul).all()
    assert (m.neg == base.neg).all()
    assert (m.zero, m.one) == (base.zero, base.one)


@pytest.mark.parametrize("s", _QUICK, ids=lambda s: s.label)
def test_corner_embedding_is_an_injective_star_homomorphism(s):
    for p in projections(s):
        corner = make_corner_ring(s, p)
        c, emb = corner.star_ring, corner.embedding.astype(np.int64)
        assert len(set(emb.tolist())) == c.order
        assert (s.ring.add[emb[:, None], emb[None, :]] == emb[c.ring.add]).all()
        assert (s.ring.mul[emb[:, None], emb[None, :]] == emb[c.ring.mul]).all()
        assert (s.star[emb] == emb[c.star]).all()
        assert corner.lift(c.ring.one) == p
