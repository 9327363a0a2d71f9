"""Unital ring extensions, subring closures, minimality, and conductors.

An extension is an injective unital homomorphism iota: R -> T between table
rings. Subrings of T are boolean masks. The central decision, is_minimal,
uses the finite-ring fact that an extension is minimal exactly when every
single element outside the image already generates all of T; the exhaustive
intermediate-subring oracle in this module double-checks that on small
instances.

Extension families built here:

* diagonal_extension: Delta(R) inside R x R together with the subring
  generated by Delta(R) and one extra pair (a, b), which must coincide with
  the pair set {(c, d) : c - d in <a - b>}.
* canonical_idealization_extension: r -> (r, 0) into R(+)R.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .core import (
    CapExceeded,
    FiniteRing,
    RingHom,
    SelfCheckError,
    adjoin_element_mask,
    ring_predicates,
    _is_prime_int,
)
from . import ideals
from .ideals import CyclicModuleSpec, Ideal

__all__ = [
    "Extension",
    "NotOfForm",
    "SubringMask",
    "adjoin",
    "adjoined_extension",
    "canonical_idealization_extension",
    "conductor",
    "diagonal_base_extension",
    "diagonal_extension",
    "intermediate_idealization_form",
    "intermediate_subrings",
    "is_minimal",
    "is_minimal_field_extension",
    "make_extension",
    "mask_is_minimal",
    "minimality_oracle",
    "subring_extension",
]

ORACLE_LIMIT = 16


class SubringMask:
    """A validated subring of a table ring: mask plus generator provenance."""

    def __init__(self, ring: FiniteRing, mask: np.ndarray, gens: Iterable[int] = ()):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (ring.order,):
            raise ValueError(f"mask must have length {ring.order}, got shape {mask.shape}")
        if not (mask[ring.zero] and mask[ring.one]):
            raise ValueError("subring must contain zero and one")
        members = np.flatnonzero(mask)
        if not mask[ring.add_table[np.ix_(members, members)]].all():
            raise ValueError("set is not closed under addition")
        if not mask[ring.mul_table[np.ix_(members, members)]].all():
            raise ValueError("set is not closed under multiplication")
        if not mask[ring.neg_table[members]].all():
            raise ValueError("set is not closed under negation")
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
    def is_whole(self) -> bool:
        return bool(self.mask.all())

    def key(self) -> bytes:
        return self.mask.tobytes()

    def __repr__(self) -> str:
        return f"<SubringMask of {self.ring.tag!r} size {self.size}>"


class Extension:
    """An injective unital embedding of a small table ring into a bigger one."""

    def __init__(self, small: FiniteRing, big: FiniteRing, iota: RingHom):
        if iota.source is not small or iota.target is not big:
            raise ValueError("embedding endpoints do not match the given rings")
        if not iota.is_injective:
            raise ValueError(f"embedding is not injective, collides at {iota.injectivity_witness()}")
        self.small = small
        self.big = big
        self.iota = iota

    @cached_property
    def image_mask(self) -> np.ndarray:
        return self.iota.image_mask

    @property
    def is_proper(self) -> bool:
        return self.small.order < self.big.order

    def outside(self) -> np.ndarray:
        return np.flatnonzero(~self.image_mask)

    def __repr__(self) -> str:
        return f"<Extension {self.small.tag!r} in {self.big.tag!r}>"


def make_extension(small: FiniteRing, big: FiniteRing, mapping: Sequence[int] | np.ndarray) -> Extension:
    """Validate mapping as an injective unital homomorphism and wrap it."""
    return Extension(small, big, RingHom(small, big, mapping))


def adjoin(ext: Extension, elems: Sequence[int]) -> SubringMask:
    """Subring of the big ring generated by the image and the given elements.

    Folds single-element spans: R[t1][t2] = R[t1, t2], so the fold order does
    not change the result; elements are processed in ascending order anyway.
    """
    mask = ext.image_mask.copy()
    for t in sorted({int(t) for t in elems}):
        if not 0 <= t < ext.big.order:
            raise ValueError(f"element index {t} out of range for order {ext.big.order}")
        mask = adjoin_element_mask(ext.big, mask, t)
    return SubringMask(ext.big, mask, gens=sorted({int(t) for t in elems}))


def subring_extension(big: FiniteRing, sub: SubringMask | np.ndarray, *, tag: str | None = None) -> Extension:
    """Reify a subring mask as its own table ring embedded in the big one.

    The subring's element i is the i-th member of the mask in ascending
    index order.
    """
    if isinstance(sub, SubringMask):
        mask = sub.mask
    else:
        mask = np.asarray(sub, dtype=bool)
        sub = SubringMask(big, mask)
        mask = sub.mask
    members = np.flatnonzero(mask)
    pos = np.full(big.order, -1, dtype=np.int32)
    pos[members] = np.arange(members.size, dtype=np.int32)
    sadd = pos[big.add_table[np.ix_(members, members)]]
    smul = pos[big.mul_table[np.ix_(members, members)]]
    small = FiniteRing(sadd, smul, tag or f"subring({big.tag}, size {members.size})", cap=big.order)
    return Extension(small, big, RingHom(small, big, members))


def adjoined_extension(ext: Extension, elems: Sequence[int], *, tag: str | None = None) -> Extension:
    """Extension whose small ring is adjoin(ext, elems), inside the same big ring."""
    sub = adjoin(ext, elems)
    return subring_extension(ext.big, sub, tag=tag)


def mask_is_minimal(big: FiniteRing, base_mask: np.ndarray) -> bool:
    """Single-adjunction minimality decision on a proper subring mask."""
    base_mask = np.asarray(base_mask, dtype=bool)
    if base_mask.all():
        raise ValueError("minimality is only defined for proper subrings")
    for t in np.flatnonzero(~base_mask):
        if not adjoin_element_mask(big, base_mask, int(t)).all():
            return False
    return True


def is_minimal(ext: Extension) -> bool:
    """True when no subring sits strictly between the image and the big ring.

    Equivalent single-adjunction form: every element outside the image
    generates the whole big ring over it. The equivalence holds because a
    strictly intermediate subring contains some outside element whose
    adjunction stays inside it.
    """
    if not ext.is_proper:
        raise ValueError("minimality is only defined for proper extensions")
    return mask_is_minimal(ext.big, ext.image_mask)


def conductor(ext: Extension) -> tuple[Ideal, np.ndarray]:
    """The largest ideal of the big ring contained in the image.

    Computed directly as {t : t * T inside the image}; returns the pullback
    as an ideal of the small ring together with the membership mask over the
    big ring. Self-checks that the mask is an ideal of T inside the image and
    that the pullback is an ideal of R.
    """
    big, small = ext.big, ext.small
    img = ext.image_mask
    mask_t = img[big.mul_table].all(axis=1)
    if (mask_t & ~img).any():
        raise SelfCheckError("conductor escaped the image")
    members = np.flatnonzero(mask_t)
    if members.size:
        if not mask_t[big.add_table[np.ix_(members, members)]].all():
            raise SelfCheckError("conductor is not additively closed in T")
        if not mask_t[big.mul_table[:, members]].all():
            raise SelfCheckError("conductor is not absorbing in T")
    mask_r = mask_t[ext.iota.mapping]
    pull = Ideal(small, mask_r, gens=tuple(int(x) for x in np.flatnonzero(mask_r)))
    mask_t = mask_t.copy()
    mask_t.setflags(write=False)
    return pull, mask_t


@dataclass(frozen=True)
class NotOfForm:
    """Returned when a subring of R(+)R is not R(+)I; witness is the least
    index present on exactly one side of the comparison."""

    witness: int


def intermediate_idealization_form(ext: Extension, sub: SubringMask | np.ndarray) -> Ideal | NotOfForm:
    """Recognize a subring of R(+)R containing (R, 0) as R(+)I.

    ext must be the canonical embedding r -> (r, 0) into R(+)R with the full
    module, so pair (r, e) has index r * n + e. Returns the ideal I of R with
    sub = {(r, e) : e in I}, or NotOfForm with the least differing index.
    """
    n = ext.small.order
    if ext.big.order != n * n:
        raise ValueError("big ring does not have the canonical R(+)R size")
    expected_embed = np.arange(n, dtype=np.int64) * n
    if not np.array_equal(ext.iota.mapping, expected_embed):
        raise ValueError("extension is not the canonical idealization embedding")
    mask = sub.mask if isinstance(sub, SubringMask) else np.asarray(sub, dtype=bool)
    if (ext.image_mask & ~mask).any():
        raise ValueError("subring does not contain the embedded copy of R")
    imask = mask[:n].copy()
    candidate = np.tile(imask, n)
    diff = mask != candidate
    if diff.any():
        return NotOfForm(int(np.flatnonzero(diff)[0]))
    if not ideals._is_ideal_mask(ext.small, imask):
        raise SelfCheckError("module part of a subring failed the ideal laws")
    return Ideal(ext.small, imask, gens=tuple(int(x) for x in np.flatnonzero(imask)))


def is_minimal_field_extension(ext: Extension) -> bool:
    """For a proper extension of finite fields: no intermediate field.

    Decided by the generic single-adjunction scan and cross-checked against
    the degree criterion: [T : R] must be prime.
    """
    if not ext.is_proper:
        raise ValueError("extension is not proper")
    if not ring_predicates(ext.small).is_field or not ring_predicates(ext.big).is_field:
        raise ValueError("both rings must be fields")
    slow = is_minimal(ext)
    q, big = ext.small.order, ext.big.order
    deg = 0
    power = 1
    while power < big:
        power *= q
        deg += 1
    if power != big:
        raise SelfCheckError("field extension order is not a power of the base order")
    fast = _is_prime_int(deg)
    if slow != fast:
        raise SelfCheckError(f"degree criterion ({deg}) disagrees with the subring scan")
    return slow


def diagonal_base_extension(ring: FiniteRing, *, cap: int | None = None, seed: int = 0) -> Extension:
    """The diagonal embedding r -> (r, r) into R x R."""
    from .core import product

    n = ring.order
    big, _, _ = product(ring, ring, cap=cap, seed=seed)
    diag = np.arange(n, dtype=np.int64) * n + np.arange(n, dtype=np.int64)
    return make_extension(ring, big, diag)


def diagonal_extension(
    ring: FiniteRing,
    a: int,
    b: int,
    *,
    cap: int | None = None,
    seed: int = 0,
) -> tuple[Extension, SubringMask]:
    """Diagonal embedding r -> (r, r) into R x R plus the subring generated
    by the diagonal and the single pair (a, b).

    The closure is also computed on an independent route, as the pair set
    {(c, d) : c - d in <a - b>}; any disagreement is an engine bug and
    raises. Pair (c, d) has index c * |R| + d.
    """
    n = ring.order
    for name, v in (("a", a), ("b", b)):
        if not 0 <= v < n:
            raise ValueError(f"{name} index {v} out of range for order {n}")
    ext = diagonal_base_extension(ring, cap=cap, seed=seed)
    big = ext.big
    closure = adjoin_element_mask(big, ext.image_mask, a * n + b)
    dmask = ideals.ideal_generated(ring, [ring.sub(a, b)]).mask
    direct = dmask[ring.sub_table].ravel()
    if not np.array_equal(closure, direct):
        raise SelfCheckError("pair closure disagrees with the difference-ideal description")
    return ext, SubringMask(big, closure, gens=(a * n + b,))


def canonical_idealization_extension(ring: FiniteRing, *, cap: int | None = None, seed: int = 0) -> Extension:
    """The embedding r -> (r, 0) of R into R(+)R (full cyclic module)."""
    big, embed = ideals.idealization(ring, CyclicModuleSpec.whole_ring(ring), cap=cap, seed=seed)
    return Extension(ring, big, embed)


def intermediate_subrings(ext: Extension, *, limit: int = ORACLE_LIMIT) -> list[SubringMask]:
    """Every subring between the image and the big ring, endpoints included.

    Breadth-first closure: repeatedly adjoin one outside element to each known
    subring. Complete because any subring V containing the image equals the
    closure of the image plus finitely many of V's elements added one at a
    time, and every such chain of closures is walked. Guarded by an order cap
    because the lattice can be exponential.
    """
    big = ext.big
    if big.order > limit:
        raise CapExceeded(f"subring lattice enumeration capped at order {limit}, got {big.order}")
    base = ext.image_mask
    seen: dict[bytes, tuple[np.ndarray, tuple[int, ...]]] = {base.tobytes(): (base, ())}
    frontier = [base.tobytes()]
    while frontier:
        next_frontier: list[bytes] = []
        for key in sorted(frontier):
            mask, gens = seen[key]
            for t in np.flatnonzero(~mask):
                grown = adjoin_element_mask(big, mask, int(t))
                gkey = grown.tobytes()
                if gkey not in seen:
                    seen[gkey] = (grown, gens + (int(t),))
                    next_frontier.append(gkey)
        frontier = next_frontier
    nodes = sorted(seen.values(), key=lambda mg: (int(mg[0].sum()), tuple(np.flatnonzero(mg[0]))))
    return [SubringMask(big, mask, gens=gens) for mask, gens in nodes]


def minimality_oracle(ext: Extension) -> bool:
    """Exhaustive minimality check on small instances (big order <= 16).

    Closes the image together with every subset of outside elements of size
    one or two; the extension is minimal exactly when every such closure is
    already the whole ring.
    """
    if not ext.is_proper:
        raise ValueError("minimality is only defined for proper extensions")
    big = ext.big
    if big.order > ORACLE_LIMIT:
        raise CapExceeded(f"minimality oracle capped at order {ORACLE_LIMIT}, got {big.order}")
    base = ext.image_mask
    out = [int(t) for t in np.flatnonzero(~base)]
    for i, t in enumerate(out):
        first = adjoin_element_mask(big, base, t)
        if not first.all():
            return False
        for u in out[i + 1 :]:
            if not adjoin_element_mask(big, first, u).all():
                return False
    return True
