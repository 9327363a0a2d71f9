"""Localizations, local decompositions, crucial ideals, total quotient rings."""

import numpy as np
import pytest

import finring as fr


def test_localize_z6_at_two():
    z6 = fr.zmod(6)
    loc = fr.localize(z6, [2])
    assert loc.inverted == (2,) and loc.closure == (2, 4)
    assert loc.idempotent == 4
    assert loc.ring.order == 3
    assert [loc.hom(i) for i in range(6)] == [0, 2, 1, 0, 2, 1]
    assert not loc.is_degenerate


def test_localize_z6_at_three():
    loc = fr.localize(fr.zmod(6), [3])
    assert loc.idempotent == 3 and loc.ring.order == 2


def test_localize_at_unit_changes_nothing():
    z6 = fr.zmod(6)
    loc = fr.localize(z6, [5])
    assert loc.ring.order == 6 and loc.hom.is_bijective


def test_localize_at_zero_degenerates():
    loc = fr.localize(fr.zmod(6), [0])
    assert loc.is_degenerate and loc.ring is None and loc.hom is None


def test_localize_argument_checks():
    z6 = fr.zmod(6)
    with pytest.raises(ValueError):
        fr.localize(z6, [])
    with pytest.raises(ValueError):
        fr.localize(z6, [6])


def test_localize_at_prime_is_local():
    z6 = fr.zmod(6)
    ms = fr.max_spectrum(z6)
    lp = fr.localize_at_prime(z6, ms[0])
    assert lp.ring.order == 2 and lp.idempotent == 3
    lp2 = fr.localize_at_prime(z6, ms[1])
    assert lp2.ring.order == 3 and lp2.idempotent == 4
    for loc in (lp, lp2):
        assert len(fr.max_spectrum(loc.ring)) == 1
    with pytest.raises(ValueError):
        fr.localize_at_prime(z6, fr.zero_ideal(z6))  # (0) is not prime in Z/6


def test_ring_corner_mask():
    z6 = fr.zmod(6)
    loc = fr.localize(z6, [2])
    assert [int(x) for x in np.flatnonzero(fr.ring_corner_mask(loc))] == [0, 2, 4]


def test_local_decomposition_z12():
    dec = fr.local_decomposition(fr.zmod(12))
    assert [f.idempotent for f in dec.factors] == [4, 9]
    assert [f.ring.order for f in dec.factors] == [3, 4]
    assert dec.product_ring.order == 12
    assert dec.reassembly.is_bijective


def test_local_decomposition_local_ring_is_trivial():
    dec = fr.local_decomposition(fr.zmod(8))
    assert len(dec.factors) == 1
    assert dec.factors[0].ring.order == 8
    assert dec.factors[0].idempotent == 1


def test_local_decomposition_matches_max_spectrum():
    for ring in (fr.zmod(6), fr.zmod(30), fr.galois_field(3, 2)):
        dec = fr.local_decomposition(ring)
        assert len(dec.factors) == len(fr.max_spectrum(ring))


def test_crucial_ideal_of_diagonal_subring():
    z6 = fr.zmod(6)
    ext, sub = fr.diagonal_extension(z6, 2, 0)
    se = fr.subring_extension(ext.big, sub)
    crucial, records = fr.crucial_maximal_ideal(se)
    cond, _ = fr.conductor(se)
    assert crucial == cond and crucial.size == 9
    # exactly one prime fails to localize isomorphically
    assert [r.is_isomorphism for r in records] == [False, True, True]
    bad = records[0]
    assert bad.prime_members == (0, 1, 2, 6, 7, 8, 12, 13, 14)
    assert (bad.small_local_order, bad.big_local_order) == (2, 4)
    assert bad.is_injective


def test_crucial_ideal_of_field_extension():
    ext = fr.make_extension(fr.zmod(2), fr.galois_field(2, 2), [0, 1])
    crucial, records = fr.crucial_maximal_ideal(ext)
    assert crucial.is_zero and len(records) == 1
    assert not records[0].is_isomorphism


def test_crucial_ideal_requires_minimality():
    with pytest.raises(ValueError):
        fr.crucial_maximal_ideal(fr.canonical_idealization_extension(fr.zmod(4)))


def test_total_quotient_ring_is_identity():
    for ring in (fr.zmod(6), fr.zmod(8), fr.galois_field(2, 2)):
        tq, hom = fr.total_quotient_ring(ring)
        assert tq is ring
        assert [hom(i) for i in range(ring.order)] == list(range(ring.order))
