"""Ideals as membership masks, quotient rings, maximal spectra, and the
square-zero extension R(+)M for cyclic modules M = R/I.

An ideal is stored as a boolean mask over the parent ring's element indices
plus the generators it was built from. Quotient rings use the least element
of each coset as its canonical representative, and coset indices follow the
sorted order of those representatives.

Idealization index convention: with module R/I of order m, the pair
(r, e-bar) has index r * m + c where c is the coset index of e.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import (
    CapExceeded,
    FiniteRing,
    RingHom,
    SelfCheckError,
    order_cap,
)

__all__ = [
    "CyclicModuleSpec",
    "Ideal",
    "ideal_generated",
    "idealization",
    "is_ideal_mask",
    "is_maximal",
    "is_prime",
    "max_spectrum",
    "quotient",
    "whole_ideal",
    "zero_ideal",
]


def is_ideal_mask(ring: FiniteRing, mask: np.ndarray) -> bool:
    """Whether the masked set contains zero, is additively closed, and absorbs."""
    if not mask[ring.zero]:
        return False
    members = np.flatnonzero(mask)
    if not mask[ring.add_table[np.ix_(members, members)]].all():
        return False
    return bool(mask[ring.mul_table[:, members]].all())


_is_ideal_mask = is_ideal_mask


class Ideal:
    """An ideal of a table ring, held as a mask plus generator provenance."""

    def __init__(self, ring: FiniteRing, mask: np.ndarray, gens: Iterable[int] = ()):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (ring.order,):
            raise ValueError(f"mask must have length {ring.order}, got shape {mask.shape}")
        if not _is_ideal_mask(ring, mask):
            raise ValueError("mask is not closed under addition and absorption")
        mask = mask.copy()
        mask.setflags(write=False)
        self.ring = ring
        self.mask = mask
        self.gens = tuple(int(g) for g in gens)

    def members(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.mask))

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    @property
    def size(self) -> int:
        return int(self.mask.sum())

    @property
    def is_proper(self) -> bool:
        return not bool(self.mask[self.ring.one])

    @property
    def is_zero(self) -> bool:
        return self.size == 1

    def key(self) -> bytes:
        return self.mask.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring is other.ring and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((id(self.ring), self.key()))

    def __repr__(self) -> str:
        mem = self.members()
        shown = ",".join(map(str, mem[:8])) + (",..." if len(mem) > 8 else "")
        return f"<Ideal of {self.ring.tag!r} {{{shown}}}>"


def zero_ideal(ring: FiniteRing) -> Ideal:
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.zero] = True
    return Ideal(ring, mask)


def whole_ideal(ring: FiniteRing) -> Ideal:
    return Ideal(ring, np.ones(ring.order, dtype=bool), gens=(ring.one,))


def _grow_by_principal(ring: FiniteRing, mask: np.ndarray, g: int) -> np.ndarray:
    """Sum of an absorbing additive subgroup with the principal ideal R*g."""
    row = np.unique(ring.mul_table[g])
    if mask[row].all():
        return mask
    members = np.flatnonzero(mask)
    out = np.zeros_like(mask)
    out[ring.add_table[np.ix_(members, row)].ravel()] = True
    return out


def ideal_generated(ring: FiniteRing, gens: Sequence[int]) -> Ideal:
    """The ideal generated by gens, computed as the sum of principal ideals."""
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.zero] = True
    for g in gens:
        if not 0 <= int(g) < ring.order:
            raise ValueError(f"generator index {g} out of range for order {ring.order}")
        mask = _grow_by_principal(ring, mask, int(g))
    return Ideal(ring, mask, gens=tuple(int(g) for g in gens))


def quotient(ring: FiniteRing, ideal: Ideal, *, tag: str | None = None) -> tuple[FiniteRing, RingHom]:
    """Quotient ring R/I with least-index coset representatives.

    Returns the quotient and the canonical surjection. I must be proper.
    """
    if ideal.ring is not ring:
        raise ValueError("ideal belongs to a different ring")
    if not ideal.is_proper:
        raise ValueError("cannot form a quotient by the whole ring (zero ring excluded)")
    members = np.flatnonzero(ideal.mask)
    rep_of = ring.add_table[:, members].min(axis=1)
    reps = np.unique(rep_of)
    m = reps.size
    pos = np.full(ring.order, -1, dtype=np.int32)
    pos[reps] = np.arange(m, dtype=np.int32)
    qadd = pos[rep_of[ring.add_table[np.ix_(reps, reps)]]]
    qmul = pos[rep_of[ring.mul_table[np.ix_(reps, reps)]]]
    if tag is None:
        gens = ",".join(map(str, ideal.gens)) if ideal.gens else ",".join(map(str, ideal.members()))
        tag = f"{ring.tag}/<{gens}>"
    # a quotient is never larger than its parent, which already passed its cap
    q = FiniteRing(qadd, qmul, tag, cap=ring.order, seed=0)
    surj = RingHom(ring, q, pos[rep_of])
    if not surj.is_surjective:
        raise SelfCheckError("quotient projection is not surjective")
    return q, surj


def is_maximal(ring: FiniteRing, ideal: Ideal) -> bool:
    """Proper and the quotient is a field (every nonzero class invertible)."""
    if not ideal.is_proper:
        return False
    q, _ = quotient(ring, ideal)
    nonzero = np.arange(q.order) != q.zero
    return bool((q.unit_mask | ~nonzero).all())


def is_prime(ring: FiniteRing, ideal: Ideal) -> bool:
    """Proper and the quotient has no nonzero zero divisors."""
    if not ideal.is_proper:
        return False
    q, _ = quotient(ring, ideal)
    nonzero = np.arange(q.order) != q.zero
    return not bool((q.zero_divisor_mask & nonzero).any())


def _extension_stays_proper(ring: FiniteRing, mask: np.ndarray, y: int) -> bool:
    # 1 lies in I + R*y  iff  1 - r*y lands in I for some r
    row = np.unique(ring.mul_table[y])
    diffs = ring.sub_table[ring.one, row]
    return not bool(mask[diffs].any())


CROSSCHECK_LIMIT = 36


def max_spectrum(ring: FiniteRing) -> list[Ideal]:
    """All maximal ideals, sorted by member tuple.

    Seeds from each non-unit's principal ideal and closes upward: repeatedly
    absorbs the least outside element that keeps the ideal proper, restarting
    the scan after each growth. A non-unit already inside some found maximal
    ideal is skipped; any undiscovered maximal ideal still gets seeded because
    it owns an element outside every other maximal ideal (prime avoidance).
    """
    cached = ring._derived_cache.get("max_spectrum")
    if cached is not None:
        return list(cached)  # type: ignore[arg-type]
    n = ring.order
    found: dict[bytes, Ideal] = {}
    covered = np.zeros(n, dtype=bool)
    for x in range(n):
        if ring.unit_mask[x] or covered[x]:
            continue
        mask = ideal_generated(ring, [x]).mask
        while True:
            for y in range(n):
                if not mask[y] and _extension_stays_proper(ring, mask, y):
                    mask = _grow_by_principal(ring, mask, y)
                    break
            else:
                break
        ideal = Ideal(ring, mask, gens=(x,))
        found.setdefault(ideal.key(), ideal)
        covered |= mask
    result = sorted(found.values(), key=lambda i: i.members())
    nonunit = ~ring.unit_mask
    if (nonunit & ~covered).any():
        raise SelfCheckError("a non-unit escaped every maximal ideal found")
    if n <= CROSSCHECK_LIMIT:
        for ideal in result:
            if not ideal.is_proper:
                raise SelfCheckError("maximal spectrum produced an improper ideal")
            for y in range(n):
                if not ideal.mask[y] and _extension_stays_proper(ring, ideal.mask, y):
                    raise SelfCheckError(f"ideal reported maximal admits proper growth by {y}")
            if not is_maximal(ring, ideal):
                raise SelfCheckError("quotient check contradicts maximal spectrum")
    ring._derived_cache["max_spectrum"] = tuple(result)
    return result


@dataclass(frozen=True)
class CyclicModuleSpec:
    """The cyclic module R/I, given by its denominator ideal.

    The zero ideal encodes the module R itself; I = R gives the zero module.
    """

    ring: FiniteRing
    denominator: Ideal

    def __post_init__(self) -> None:
        if self.denominator.ring is not self.ring:
            raise ValueError("denominator ideal belongs to a different ring")

    @staticmethod
    def whole_ring(ring: FiniteRing) -> "CyclicModuleSpec":
        return CyclicModuleSpec(ring, zero_ideal(ring))


def idealization(
    ring: FiniteRing,
    module: CyclicModuleSpec,
    *,
    cap: int | None = None,
    seed: int = 0,
    tag: str | None = None,
) -> tuple[FiniteRing, RingHom]:
    """The ring R(+)M on pairs (r, m) with (r1,m1)(r2,m2) = (r1 r2, r1 m2 + r2 m1).

    M = R/I is handled through additive cosets directly, so I may be any
    ideal including R itself (zero module; the result is then isomorphic
    to R). Returns the ring and the embedding r -> (r, 0).
    """
    if module.ring is not ring:
        raise ValueError("module is over a different ring")
    n = ring.order
    dmem = np.flatnonzero(module.denominator.mask)
    rep_of = ring.add_table[:, dmem].min(axis=1)
    creps = np.unique(rep_of)
    m = creps.size
    total = n * m
    if total > order_cap(cap):
        raise CapExceeded(f"idealization of order {total} exceeds order cap {order_cap(cap)}")
    cpos = np.full(n, -1, dtype=np.int32)
    cpos[creps] = np.arange(m, dtype=np.int32)
    madd = cpos[rep_of[ring.add_table[np.ix_(creps, creps)]]]          # coset + coset
    act = cpos[rep_of[ring.mul_table[:, creps]]]                       # ring action on cosets

    idx = np.arange(total, dtype=np.int64)
    rr = (idx // m).astype(np.int32)
    cc = (idx % m).astype(np.int32)
    radd = ring.add_table[rr[:, None], rr[None, :]].astype(np.int64)
    rmul = ring.mul_table[rr[:, None], rr[None, :]].astype(np.int64)
    add = radd * m + madd[cc[:, None], cc[None, :]]
    mul = rmul * m + madd[act[rr[:, None], cc[None, :]], act[rr[None, :], cc[:, None]]]
    if tag is None:
        gens = ",".join(map(str, module.denominator.gens)) if module.denominator.gens else "0"
        tag = f"Id({ring.tag}; {gens})"
    big = FiniteRing(add, mul, tag, cap=cap, seed=seed)
    embed = RingHom(ring, big, np.arange(n, dtype=np.int64) * m + cpos[rep_of[ring.zero]])
    if not embed.is_injective:
        raise SelfCheckError("idealization embedding is not injective")
    return big, embed
