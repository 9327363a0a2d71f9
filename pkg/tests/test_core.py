"""Table rings, axiom validation, homomorphisms, and the span closure."""

import numpy as np
import pytest

import finring as fr
from finring.core import EXHAUSTIVE_LIMIT, adjoin_element_mask, eventual_idempotents


def test_zmod_matches_modular_arithmetic():
    ring = fr.zmod(6)
    for i in range(6):
        for j in range(6):
            assert ring.add(i, j) == (i + j) % 6
            assert ring.mul(i, j) == (i * j) % 6
    assert ring.zero == 0 and ring.one == 1
    assert ring.characteristic == 6
    assert ring.units() == [1, 5]
    assert list(ring.neg_table) == [0, 5, 4, 3, 2, 1]


def test_zmod_rejects_zero_ring():
    with pytest.raises(ValueError):
        fr.zmod(1)
    with pytest.raises(ValueError):
        fr.zmod(0)


def test_order_cap_explicit_beats_env(monkeypatch):
    monkeypatch.setenv("FINRING_MAX_ORDER", "8")
    with pytest.raises(fr.CapExceeded):
        fr.zmod(9)
    # explicit argument wins over the environment
    assert fr.zmod(9, cap=16).order == 9
    monkeypatch.delenv("FINRING_MAX_ORDER")
    with pytest.raises(fr.CapExceeded):
        fr.zmod(600)


def test_validation_mode_thresholds():
    assert fr.zmod(6).validation_mode == "exhaustive"
    assert fr.zmod(EXHAUSTIVE_LIMIT, cap=EXHAUSTIVE_LIMIT).validation_mode == "exhaustive"
    assert fr.zmod(100, cap=128).validation_mode == "sampled"


def test_broken_tables_report_violations():
    n = 4
    add = [[(i + j) % n for j in range(n)] for i in range(n)]
    mul = [[(i * j) % n for j in range(n)] for i in range(n)]
    mul[2][3] = 1  # breaks commutativity against mul[3][2] == 2
    with pytest.raises(fr.RingAxiomError) as excinfo:
        fr.from_tables(add, mul)
    laws = {v.law for v in excinfo.value.violations}
    assert "multiplicative commutativity" in laws


def test_validate_tables_flags_broken_associativity():
    n = 4
    add = [[(i + j) % n for j in range(n)] for i in range(n)]
    mul = [[(i * j) % n for j in range(n)] for i in range(n)]
    mul[3][3] = 2
    mul[3][3] = 2
    violations = fr.validate_tables(np.array(add), np.array(mul))
    assert violations, "corrupt table slipped through"


def test_gf4_structure():
    """GF(4) reduces modulo x^2 + x + 1, so x * x = x + 1."""
    ring = fr.galois_field(2, 2)
    assert ring.order == 4
    assert ring.characteristic == 2
    # element codes: 2 = x, 3 = x + 1
    assert ring.mul(2, 2) == 3
    assert ring.mul(2, 3) == 1
    assert ring.add(2, 3) == 1
    assert fr.ring_predicates(ring).is_field


def test_gf8_and_gf9_sample_products():
    gf8 = fr.galois_field(2, 3)
    assert gf8.pow(2, 3) == 3  # x^3 = x + 1 for the least irreducible x^3+x+1
    assert fr.ring_predicates(gf8).is_field
    gf9 = fr.galois_field(3, 2)
    assert gf9.mul(3, 3) == 2  # x^2 = -1 for the least irreducible x^2+1
    assert gf9.add(4, 4) == 8  # digitwise: (x+1)+(x+1) = 2x+2
    assert gf9.characteristic == 3
    assert fr.ring_predicates(gf9).is_field


def test_galois_field_rejects_non_prime_characteristic():
    with pytest.raises(ValueError):
        fr.galois_field(4, 1)
    with pytest.raises(ValueError):
        fr.galois_field(6, 2)


def test_gf_p1_matches_zmod():
    a, b = fr.galois_field(5), fr.zmod(5)
    assert np.array_equal(a.add_table, b.add_table)
    assert np.array_equal(a.mul_table, b.mul_table)


def test_product_projections_and_crt_isomorphism():
    ring, proj_l, proj_r = fr.product(fr.zmod(2), fr.zmod(3))
    assert ring.order == 6
    for idx in range(6):
        assert proj_l(idx) == idx // 3
        assert proj_r(idx) == idx % 3
    iso = fr.ring_isomorphic(ring, fr.zmod(6))
    assert iso is not None
    assert list(iso.mapping) == [0, 4, 2, 3, 1, 5]


def test_hom_validation_rejects_non_homomorphisms():
    z2, z6 = fr.zmod(2), fr.zmod(6)
    with pytest.raises(fr.HomLawError):
        fr.RingHom(z2, z6, [0, 3])  # 1 must map to 1
    with pytest.raises(fr.HomLawError):
        fr.RingHom(z2, z6, [0, 1])  # additivity fails: 1+1 = 0 vs 2


def test_hom_reduction_compose_inverse():
    z6, z2 = fr.zmod(6), fr.zmod(2)
    red = fr.RingHom(z6, z2, [0, 1, 0, 1, 0, 1])
    assert red.is_surjective and not red.is_injective
    assert red.injectivity_witness() == (0, 2)
    assert fr.identity_hom(z2).compose(red)(5) == 1
    ring, _, _ = fr.product(z2, fr.zmod(3))
    iso = fr.ring_isomorphic(ring, z6)
    back = iso.inverse()
    for idx in range(6):
        assert back(iso(idx)) == idx


def test_element_profile_of_nilpotent():
    ring = fr.zmod(8)
    prof = fr.element_profile(ring, 2)
    assert prof.is_nilpotent and prof.nilpotency_index == 3
    assert prof.is_zero_divisor and not prof.is_unit
    assert prof.additive_order == 4
    assert list(ring.nilpotency_index) == [1, 0, 3, 0, 2, 0, 3, 0]


def test_eventual_idempotents_z12():
    ring = fr.zmod(12)
    got = eventual_idempotents(ring, np.arange(12))
    assert list(got) == [0, 1, 4, 9, 4, 1, 0, 1, 4, 9, 4, 1]
    assert fr.eventual_idempotent(ring, 2) == 4


def test_predicates_across_constructions():
    assert fr.ring_predicates(fr.zmod(4)).is_local
    assert not fr.ring_predicates(fr.zmod(4)).is_reduced
    assert fr.ring_predicates(fr.zmod(6)).is_vnr
    assert not fr.ring_predicates(fr.zmod(6)).is_local
    mixed, _, _ = fr.product(fr.zmod(2), fr.zmod(4))
    preds = fr.ring_predicates(mixed)
    assert not preds.is_vnr and not preds.is_reduced and not preds.is_local


def test_regular_iff_unit_in_finite_rings():
    for ring in (fr.zmod(6), fr.zmod(8), fr.galois_field(3, 2), fr.zmod(12)):
        assert np.array_equal(~ring.zero_divisor_mask, ring.unit_mask)


def test_adjoin_element_closure_against_worklist():
    """The span closure must agree with a naive one-op-at-a-time worklist."""

    def worklist_closure(ring, mask, t):
        members = set(np.flatnonzero(mask)) | {t}
        while True:
            fresh = set()
            for x in members:
                for y in members:
                    fresh.add(ring.add(x, y))
                    fresh.add(ring.mul(x, y))
            if fresh <= members:
                out = np.zeros(ring.order, dtype=bool)
                out[list(members)] = True
                return out
            members |= fresh

    ring, _, _ = fr.product(fr.zmod(4), fr.zmod(4))
    diag = np.zeros(16, dtype=bool)
    diag[[0, 5, 10, 15]] = True
    for t in range(16):
        fast = adjoin_element_mask(ring, diag, t)
        slow = worklist_closure(ring, diag, t)
        assert np.array_equal(fast, slow), f"closure mismatch at t={t}"


def test_adjoin_element_of_member_is_identity():
    ring = fr.zmod(6)
    base = np.ones(6, dtype=bool)
    got = adjoin_element_mask(ring, base, 3)
    assert got.all()
