"""Extensions, subring closures, minimality decisions, and conductors."""

import numpy as np
import pytest

import finring as fr


def test_make_extension_validates():
    z2, z4 = fr.zmod(2), fr.zmod(4)
    ext = fr.make_extension(z2, fr.galois_field(2, 2), [0, 1])
    assert ext.is_proper and ext.small is z2
    assert [int(t) for t in ext.outside()] == [2, 3]
    with pytest.raises(fr.HomLawError):
        fr.make_extension(z2, z4, [0, 2])  # not unital
    with pytest.raises(ValueError):
        fr.make_extension(z4, z2, [0, 1, 0, 1])  # not injective


def test_subring_mask_validation():
    gf4 = fr.galois_field(2, 2)
    fr.SubringMask(gf4, np.array([True, True, False, False]))
    with pytest.raises(ValueError):
        fr.SubringMask(gf4, np.array([True, False, True, False]))  # misses one
    with pytest.raises(ValueError):
        fr.SubringMask(gf4, np.array([True, True, True, False]))  # 2*2 = 3


def test_adjoin_reaches_whole_field():
    ext = fr.make_extension(fr.zmod(2), fr.galois_field(2, 2), [0, 1])
    assert fr.adjoin(ext, [2]).is_whole
    assert fr.adjoin(ext, []).members() == (0, 1)
    with pytest.raises(ValueError):
        fr.adjoin(ext, [9])


def test_diagonal_extension_z4():
    z4 = fr.zmod(4)
    ext, sub = fr.diagonal_extension(z4, 3, 1)
    assert [int(x) for x in ext.iota.mapping] == [0, 5, 10, 15]
    # pairs (c, d) with c - d even
    assert sub.members() == (0, 2, 5, 7, 8, 10, 13, 15)
    assert sub.gens == (13,)
    se = fr.subring_extension(ext.big, sub)
    assert se.small.order == 8
    assert fr.is_minimal(se)


def test_diagonal_extension_unit_difference_is_whole():
    ext, sub = fr.diagonal_extension(fr.zmod(6), 1, 0)
    assert sub.is_whole


def test_diagonal_extension_non_maximal_difference():
    z12 = fr.zmod(12)
    ext, sub = fr.diagonal_extension(z12, 4, 0)
    assert sub.size == 36
    assert not fr.is_minimal(fr.subring_extension(ext.big, sub))


def test_diagonal_extension_argument_checks():
    with pytest.raises(ValueError):
        fr.diagonal_extension(fr.zmod(4), 4, 0)
    with pytest.raises(fr.CapExceeded):
        fr.diagonal_extension(fr.zmod(30), 1, 0, cap=512)


def test_conductor_zero_for_field_and_square_zero():
    z2 = fr.zmod(2)
    cond, mask_t = fr.conductor(fr.make_extension(z2, fr.galois_field(2, 2), [0, 1]))
    assert cond.is_zero and int(mask_t.sum()) == 1
    cond, mask_t = fr.conductor(fr.canonical_idealization_extension(z2))
    assert cond.is_zero and int(mask_t.sum()) == 1


def test_conductor_of_diagonal_subring():
    z4 = fr.zmod(4)
    ext, sub = fr.diagonal_extension(z4, 3, 1)
    se = fr.subring_extension(ext.big, sub)
    cond, mask_t = fr.conductor(se)
    # (S : R x R) pulls back to the size-4 ideal of pairs of evens
    assert cond.size == 4 and cond.members() == (0, 1, 4, 5)
    assert int(mask_t.sum()) == 4
    assert fr.is_maximal(se.small, cond)


def test_conductor_whole_when_not_proper():
    z4 = fr.zmod(4)
    ident = fr.make_extension(z4, z4, [0, 1, 2, 3])
    cond, mask_t = fr.conductor(ident)
    assert not cond.is_proper and bool(mask_t.all())


def test_intermediate_idealization_form():
    z4 = fr.zmod(4)
    ci = fr.canonical_idealization_extension(z4)
    got = fr.intermediate_idealization_form(ci, fr.adjoin(ci, [14]))
    assert isinstance(got, fr.Ideal) and got.members() == (0, 2)
    # every intermediate subring is R(+)I, one per ideal of R
    forms = [fr.intermediate_idealization_form(ci, s) for s in fr.intermediate_subrings(ci)]
    assert [f.members() for f in forms] == [(0,), (0, 2), (0, 1, 2, 3)]


def test_intermediate_idealization_form_rejects():
    z4 = fr.zmod(4)
    ci = fr.canonical_idealization_extension(z4)
    with pytest.raises(ValueError):
        fr.intermediate_idealization_form(fr.diagonal_base_extension(z4), fr.adjoin(ci, []))
    diag = fr.diagonal_base_extension(z4)
    with pytest.raises(ValueError):
        # wrong embedding shape for the same big order
        fr.intermediate_idealization_form(
            fr.make_extension(z4, ci.big, [int(x) for x in ci.iota.mapping[[0, 3, 2, 1]]]),
            np.ones(16, dtype=bool),
        )


def test_is_minimal_field_extension():
    z2 = fr.zmod(2)
    assert fr.is_minimal_field_extension(fr.make_extension(z2, fr.galois_field(2, 2), [0, 1]))
    assert not fr.is_minimal_field_extension(fr.make_extension(z2, fr.galois_field(2, 4), [0, 1]))
    with pytest.raises(ValueError):
        fr.is_minimal_field_extension(fr.canonical_idealization_extension(z2))


def test_mask_is_minimal_rejects_whole():
    z4 = fr.zmod(4)
    with pytest.raises(ValueError):
        fr.mask_is_minimal(z4, np.ones(4, dtype=bool))
    with pytest.raises(ValueError):
        fr.is_minimal(fr.make_extension(z4, z4, [0, 1, 2, 3]))


def test_intermediate_subrings_idealization_z4():
    subs = fr.intermediate_subrings(fr.canonical_idealization_extension(fr.zmod(4)))
    assert [s.size for s in subs] == [4, 8, 16]
    assert subs[0].gens == () and subs[-1].is_whole


def test_intermediate_subrings_cap():
    with pytest.raises(fr.CapExceeded):
        fr.intermediate_subrings(fr.diagonal_base_extension(fr.zmod(6)))


def test_minimality_oracle_agreement():
    cases = []
    for n in (2, 3, 4):
        ring = fr.zmod(n)
        cases.append(fr.canonical_idealization_extension(ring))
        cases.append(fr.diagonal_base_extension(ring))
    cases.append(fr.make_extension(fr.zmod(2), fr.galois_field(2, 2), [0, 1]))
    cases.append(fr.make_extension(fr.zmod(2), fr.galois_field(2, 4), [0, 1]))
    for ext in cases:
        fast = fr.is_minimal(ext)
        assert fr.minimality_oracle(ext) == fast
        # a minimal extension has the two-node lattice and conversely
        assert (len(fr.intermediate_subrings(ext)) == 2) == fast


def test_minimality_oracle_cap():
    with pytest.raises(fr.CapExceeded):
        fr.minimality_oracle(fr.diagonal_base_extension(fr.zmod(6)))


def test_adjoined_extension_roundtrip():
    z4 = fr.zmod(4)
    base = fr.diagonal_base_extension(z4)
    grown = fr.adjoined_extension(base, [13], tag="S")
    assert grown.small.order == 8 and grown.small.tag == "S"
    assert grown.big is base.big
    # image of the new small ring is exactly the closure mask
    assert [int(x) for x in grown.iota.mapping] == [0, 2, 5, 7, 8, 10, 13, 15]
