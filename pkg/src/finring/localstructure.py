"""Localization and local structure of finite commutative rings.

In a finite ring every localization is realized inside the ring itself: the
multiplicative closure of the inverted set contains, for each member s, the
first idempotent power of s, and the product e of those idempotents cuts out
the corner ring eR, which is canonically isomorphic to the localization. The
corner ring's element i is the i-th member of eR in ascending index order;
e itself is the corner's identity.

A finite commutative ring is the product of local rings, one per maximal
ideal; local_decomposition makes that explicit through the primitive
idempotents and verifies the reassembly map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    FiniteRing,
    RingHom,
    SelfCheckError,
    eventual_idempotents,
    identity_hom,
)
from . import ideals
from .ideals import Ideal
from .extensions import Extension, is_minimal

__all__ = [
    "CrucialIdealError",
    "LocalDecomposition",
    "LocalFactor",
    "Localization",
    "PrimeLocalizationRecord",
    "crucial_maximal_ideal",
    "local_decomposition",
    "localize",
    "localize_at_prime",
    "ring_corner_mask",
    "total_quotient_ring",
]


@dataclass(frozen=True)
class Localization:
    """Corner-ring realization of a localization.

    ring and hom are None exactly when the inverted set reaches 0, in which
    case the localization collapses (degenerate, flagged rather than built).
    """

    source: FiniteRing
    inverted: tuple[int, ...]
    closure: tuple[int, ...]
    idempotent: int
    ring: FiniteRing | None
    hom: RingHom | None

    @property
    def is_degenerate(self) -> bool:
        return self.ring is None


def _mult_closure_mask(ring: FiniteRing, elems: Sequence[int] | np.ndarray) -> np.ndarray:
    mask = np.zeros(ring.order, dtype=bool)
    mask[np.asarray(elems, dtype=np.int64)] = True
    while True:
        members = np.flatnonzero(mask)
        prods = ring.mul_table[np.ix_(members, members)]
        before = int(mask.sum())
        mask[prods.ravel()] = True
        if int(mask.sum()) == before:
            return mask


def _corner_ring(ring: FiniteRing, e: int, *, tag: str | None = None) -> tuple[FiniteRing, RingHom]:
    members = np.unique(ring.mul_table[e])
    pos = np.full(ring.order, -1, dtype=np.int32)
    pos[members] = np.arange(members.size, dtype=np.int32)
    cadd = pos[ring.add_table[np.ix_(members, members)]]
    cmul = pos[ring.mul_table[np.ix_(members, members)]]
    corner = FiniteRing(cadd, cmul, tag or f"corner({ring.tag}, e={e})", cap=ring.order)
    hom = RingHom(ring, corner, pos[ring.mul_table[e]])
    return corner, hom


def localize(ring: FiniteRing, elems: Sequence[int]) -> Localization:
    """Invert a nonempty set of elements.

    e is the product of the first idempotent powers of every member of the
    multiplicative closure; the corner ring eR with the map r -> er is the
    localization. Every inverted element must become a unit there, which is
    self-checked.
    """
    if len(elems) == 0:
        raise ValueError("cannot localize at an empty set")
    for s in elems:
        if not 0 <= int(s) < ring.order:
            raise ValueError(f"element index {s} out of range for order {ring.order}")
    cmask = _mult_closure_mask(ring, [int(s) for s in elems])
    cmembers = np.flatnonzero(cmask)
    idems = np.unique(eventual_idempotents(ring, cmembers))
    e = ring.one
    for f in idems:
        e = ring.mul(e, int(f))
    closure_t = tuple(int(x) for x in cmembers)
    inverted_t = tuple(sorted({int(s) for s in elems}))
    if e == ring.zero:
        return Localization(ring, inverted_t, closure_t, e, None, None)
    corner, hom = _corner_ring(ring, e)
    if not corner.unit_mask[hom.mapping[cmembers]].all():
        raise SelfCheckError("an inverted element is not a unit in the corner ring")
    return Localization(ring, inverted_t, closure_t, e, corner, hom)


def localize_at_prime(ring: FiniteRing, prime: Ideal) -> Localization:
    """Localize at the complement of a prime ideal; the result is local."""
    if not ideals.is_prime(ring, prime):
        raise ValueError("can only localize at a prime ideal")
    complement = np.flatnonzero(~prime.mask)
    loc = localize(ring, [int(x) for x in complement])
    if loc.is_degenerate:
        raise SelfCheckError("localization at a prime collapsed to zero")
    assert loc.ring is not None
    if len(ideals.max_spectrum(loc.ring)) != 1:
        raise SelfCheckError("localization at a prime is not local")
    return loc


@dataclass(frozen=True)
class LocalFactor:
    idempotent: int
    ring: FiniteRing
    hom: RingHom


@dataclass(frozen=True)
class LocalDecomposition:
    source: FiniteRing
    factors: tuple[LocalFactor, ...]
    product_ring: FiniteRing
    reassembly: RingHom


def local_decomposition(ring: FiniteRing) -> LocalDecomposition:
    """Split R into corner rings over its primitive idempotents.

    Verifies: the primitive idempotents are pairwise orthogonal and sum to 1,
    every factor is local, the factor count equals the number of maximal
    ideals, and the combined map into the iterated product is a validated
    isomorphism.
    """
    from .core import product

    idems = [int(x) for x in np.flatnonzero(ring.idempotent_mask)]
    nonzero = [e for e in idems if e != ring.zero]
    primitive = [
        e
        for e in nonzero
        if all(f == e or ring.mul(e, f) != f for f in nonzero)
    ]
    if not primitive:
        raise SelfCheckError("no primitive idempotents found")
    for i, e in enumerate(primitive):
        for f in primitive[i + 1 :]:
            if ring.mul(e, f) != ring.zero:
                raise SelfCheckError(f"primitive idempotents {e} and {f} are not orthogonal")
    total = ring.zero
    for e in primitive:
        total = ring.add(total, e)
    if total != ring.one:
        raise SelfCheckError("primitive idempotents do not sum to one")

    factors = []
    for e in primitive:
        corner, hom = _corner_ring(ring, e)
        if len(ideals.max_spectrum(corner)) != 1:
            raise SelfCheckError(f"corner at idempotent {e} is not local")
        factors.append(LocalFactor(e, corner, hom))

    prod_ring = factors[0].ring
    mapping = factors[0].hom.mapping.astype(np.int64)
    for fac in factors[1:]:
        prod_ring, _, _ = product(prod_ring, fac.ring, cap=ring.order)
        mapping = mapping * fac.ring.order + fac.hom.mapping
    reassembly = RingHom(ring, prod_ring, mapping)
    if not reassembly.is_bijective:
        raise SelfCheckError("reassembly into the product of corners is not bijective")
    if len(factors) != len(ideals.max_spectrum(ring)):
        raise SelfCheckError("factor count differs from the number of maximal ideals")
    return LocalDecomposition(ring, tuple(factors), prod_ring, reassembly)


@dataclass(frozen=True)
class PrimeLocalizationRecord:
    """One row of the crucial-ideal table: behaviour of the extension at one prime."""

    prime_members: tuple[int, ...]
    small_local_order: int
    big_local_order: int
    is_injective: bool
    is_isomorphism: bool


class CrucialIdealError(RuntimeError):
    """The localization table does not single out exactly one prime."""

    def __init__(self, message: str, records: Sequence[PrimeLocalizationRecord]):
        super().__init__(message)
        self.records = tuple(records)


def crucial_maximal_ideal(ext: Extension) -> tuple[Ideal, list[PrimeLocalizationRecord]]:
    """The unique maximal ideal of R where a minimal extension localizes badly.

    Re-verifies minimality, then localizes both rings at every maximal ideal
    of R and asserts that the induced map on corners is an isomorphism at all
    but exactly one prime, which is returned with the full table.
    """
    if not is_minimal(ext):
        raise ValueError("crucial ideal is defined for minimal extensions only")
    small, big = ext.small, ext.big
    records: list[PrimeLocalizationRecord] = []
    crucial: Ideal | None = None
    for prime in ideals.max_spectrum(small):
        loc_small = localize_at_prime(small, prime)
        complement = np.flatnonzero(~prime.mask)
        loc_big = localize(big, [int(x) for x in ext.iota.mapping[complement]])
        if loc_big.is_degenerate:
            raise SelfCheckError("image of a prime complement collapsed the big ring")
        assert loc_small.ring is not None and loc_big.ring is not None
        assert loc_small.hom is not None and loc_big.hom is not None
        small_members = np.flatnonzero(ring_corner_mask(loc_small))
        induced = RingHom(
            loc_small.ring,
            loc_big.ring,
            loc_big.hom.mapping[ext.iota.mapping[small_members]],
        )
        iso = induced.is_bijective
        records.append(
            PrimeLocalizationRecord(
                prime_members=prime.members(),
                small_local_order=loc_small.ring.order,
                big_local_order=loc_big.ring.order,
                is_injective=induced.is_injective,
                is_isomorphism=iso,
            )
        )
        if not iso:
            if crucial is not None:
                raise CrucialIdealError("more than one prime localizes non-isomorphically", records)
            crucial = prime
    if crucial is None:
        raise CrucialIdealError("every localization is an isomorphism", records)
    return crucial, records


def ring_corner_mask(loc: Localization) -> np.ndarray:
    """Membership mask of the corner subring e*R inside the source ring."""
    assert loc.ring is not None
    mask = np.zeros(loc.source.order, dtype=bool)
    mask[np.unique(loc.source.mul_table[loc.idempotent])] = True
    return mask


def total_quotient_ring(ring: FiniteRing) -> tuple[FiniteRing, RingHom]:
    """Invert every regular element; in a finite ring this changes nothing.

    Asserts that the localization at the non-zero-divisors is an isomorphism
    and returns the ring with its identity map.
    """
    regular = np.flatnonzero(~ring.zero_divisor_mask)
    loc = localize(ring, [int(x) for x in regular])
    if loc.is_degenerate or loc.ring is None or loc.hom is None:
        raise SelfCheckError("total quotient ring collapsed")
    if loc.ring.order != ring.order or not loc.hom.is_bijective:
        raise SelfCheckError("total quotient ring differs from the ring itself")
    return ring, identity_hom(ring)
