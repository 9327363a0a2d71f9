"""Brute-force verifiers for the structure of minimal ring extensions.

Every verifier computes both sides of its claim by independent routes and
compares them exactly:

* unit criterion: the pair (r, s) generates all of R x R over the diagonal
  exactly when r - s is a unit; closure scan vs unit-table scan.
* diagonal subrings: the subring generated by the diagonal and one pair
  (a, b) is {(c, d) : c - d in <a - b>}, its size is |R| * |<a - b>|, and it
  is a minimal subring extension exactly when <a - b> is maximal.
* idealization subrings: inside R(+)R, adjoining (a, b) to the base copy of
  R yields R(+)<b>; R(+)m is a maximal subring for m maximal; the base copy
  itself is a maximal subring exactly when R is a field.
* classification over a von Neumann regular base: a minimal extension
  matches exactly one of the cases inert (residue-field growth), decomposed
  (an idempotent witness q with q^2 - q in m), or ramified (a square-zero
  witness q), always at m = the conductor, and the ramified big ring is
  isomorphic over R to the idealization R(+)R/m.
* conductors: for every constructed minimal extension the conductor is a
  prime ideal of R, equals the crucial maximal ideal singled out by
  localization, and is the contraction of a maximal ideal of T.

Case labels use the kinds "inert", "decomposed", "ramified" with the least
witness element q where one exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import (
    CapExceeded,
    FiniteRing,
    RingHom,
    SelfCheckError,
    adjoin_element_mask,
    eventual_idempotents,
    order_cap,
    ring_predicates,
    _is_prime_int,
)
from . import ideals
from .ideals import CyclicModuleSpec, Ideal
from . import extensions as ext_mod
from .extensions import (
    Extension,
    NotOfForm,
    conductor,
    diagonal_base_extension,
    canonical_idealization_extension,
    intermediate_idealization_form,
    intermediate_subrings,
    is_minimal,
    is_minimal_field_extension,
    make_extension,
    minimality_oracle,
    subring_extension,
)
from . import localstructure
from .localstructure import CrucialIdealError, local_decomposition

__all__ = [
    "CaseLabel",
    "DECOMPOSED",
    "DEFAULT_ISO_CAP",
    "EntryContext",
    "ExtensionCandidate",
    "INERT",
    "RAMIFIED",
    "VerdictReport",
    "algebra_isomorphic",
    "catalog_minimal_extensions",
    "classify_vnr_extension",
    "find_field_embedding",
    "quadratic_field_extension",
    "ring_isomorphic",
    "verify_crucial_ideal",
    "verify_conductor_prime",
    "verify_diagonal_theorem",
    "verify_idealization_results",
    "verify_infrastructure",
    "verify_minimality_oracle",
    "verify_unit_criterion",
    "vnr_minimal_extension_candidates",
]

INERT = "inert"
DECOMPOSED = "decomposed"
RAMIFIED = "ramified"
DEFAULT_ISO_CAP = 64


@dataclass(frozen=True)
class VerdictReport:
    """Outcome of one verifier run: exact pass/fail plus witness data."""

    theorem: str
    subject: str
    passed: bool
    witnesses: dict
    counterexample: dict | None = None


@dataclass(frozen=True)
class CaseLabel:
    """Classification of a minimal extension of a regular ring."""

    kind: str
    q: int | None
    max_ideal: Ideal


class EntryContext:
    """Shared per-ring caches for one verification entry.

    Holds the two big-ring scans (R x R over the diagonal, R(+)R over the
    base copy) and memoizes principal ideals, maximality and mask-level
    minimality so the verifiers do not recompute each other's closures.
    """

    def __init__(self, ring: FiniteRing, *, cap: int | None = None, iso_cap: int = DEFAULT_ISO_CAP, seed: int = 0):
        self.ring = ring
        self.cap = order_cap(cap)
        self.iso_cap = iso_cap
        self.seed = seed
        self._principal: dict[int, Ideal] = {}
        self._maximal: dict[bytes, bool] = {}
        self._minimal: dict[tuple[int, bytes], bool] = {}
        self._diag: tuple[Extension, np.ndarray] | None = None
        self._idz: tuple[Extension, np.ndarray] | None = None

    def principal(self, d: int) -> Ideal:
        got = self._principal.get(d)
        if got is None:
            got = ideals.ideal_generated(self.ring, [d])
            self._principal[d] = got
        return got

    def maximal(self, ideal: Ideal) -> bool:
        key = ideal.key()
        got = self._maximal.get(key)
        if got is None:
            got = ideals.is_maximal(self.ring, ideal)
            self._maximal[key] = got
        return got

    def mask_minimal(self, big: FiniteRing, base_mask: np.ndarray) -> bool:
        key = (id(big), base_mask.tobytes())
        got = self._minimal.get(key)
        if got is None:
            got = ext_mod.mask_is_minimal(big, base_mask)
            self._minimal[key] = got
        return got

    def diagonal_scan(self) -> tuple[Extension, np.ndarray]:
        if self._diag is None:
            ext = diagonal_base_extension(self.ring, cap=self.cap, seed=self.seed)
            self._diag = (ext, _pair_scan(ext))
        return self._diag

    def idealization_scan(self) -> tuple[Extension, np.ndarray]:
        if self._idz is None:
            ext = canonical_idealization_extension(self.ring, cap=self.cap, seed=self.seed)
            self._idz = (ext, _pair_scan(ext))
        return self._idz


def _pair_scan(ext: Extension) -> np.ndarray:
    """Closure of the base subring with each single element adjoined, rowwise."""
    big = ext.big
    base = ext.image_mask
    closures = np.zeros((big.order, big.order), dtype=bool)
    for t in range(big.order):
        closures[t] = adjoin_element_mask(big, base, t)
    return closures


def _ctx_for(ring: FiniteRing, ctx: EntryContext | None, cap: int | None, seed: int) -> EntryContext:
    if ctx is not None:
        if ctx.ring is not ring:
            raise ValueError("context belongs to a different ring")
        return ctx
    return EntryContext(ring, cap=cap, seed=seed)


def verify_unit_criterion(
    ring: FiniteRing,
    *,
    ctx: EntryContext | None = None,
    cap: int | None = None,
    seed: int = 0,
) -> VerdictReport:
    """Pair (r, s) generates R x R over the diagonal iff r - s is a unit.

    The left side is a genuine subring closure per pair; the right side only
    reads the unit scan of R.
    """
    ctx = _ctx_for(ring, ctx, cap, seed)
    _, closures = ctx.diagonal_scan()
    n = ring.order
    generated_full = closures.all(axis=1)
    diffs = ring.sub_table.ravel()
    unit_side = ring.unit_mask[diffs]
    agree = generated_full == unit_side
    counterexample = None
    if not agree.all():
        t = int(np.flatnonzero(~agree)[0])
        counterexample = {
            "r": t // n,
            "s": t % n,
            "difference": int(diffs[t]),
            "generates_whole_ring": bool(generated_full[t]),
            "difference_is_unit": bool(unit_side[t]),
        }
    witnesses = {
        "pairs_checked": n * n,
        "generating_pairs": int(generated_full.sum()),
        "unit_differences": int(unit_side.sum()),
    }
    return VerdictReport("unit-criterion", ring.tag, counterexample is None, witnesses, counterexample)


def verify_diagonal_theorem(
    ring: FiniteRing,
    *,
    ctx: EntryContext | None = None,
    cap: int | None = None,
    seed: int = 0,
) -> VerdictReport:
    """The diagonal pair-closure description, its size, and its minimality law.

    For every pair (a, b): the closure of the diagonal plus (a, b) must equal
    {(c, d) : c - d in <a - b>} elementwise, have size |R| * |<a - b>|, and
    (when proper) be a minimal subring extension of exactly the pairs whose
    difference ideal is maximal.
    """
    ctx = _ctx_for(ring, ctx, cap, seed)
    ext, closures = ctx.diagonal_scan()
    big = ext.big
    n = ring.order
    diffs = ring.sub_table.ravel()
    counterexample = None
    minimal_pairs = 0
    distinct: set[bytes] = set()
    for d in range(n):
        ideal = ctx.principal(d)
        distinct.add(ideal.key())
        direct = ideal.mask[ring.sub_table].ravel()
        rows = np.flatnonzero(diffs == d)
        mismatch = closures[rows] != direct[None, :]
        if mismatch.any():
            r0, c0 = _first_index_2d(mismatch)
            t = int(rows[r0])
            counterexample = {
                "a": t // n,
                "b": t % n,
                "difference": d,
                "first_disagreeing_pair": [int(c0) // n, int(c0) % n],
                "in_closure": bool(closures[t, c0]),
                "in_difference_ideal_set": bool(direct[c0]),
            }
            break
        size = int(direct.sum())
        if size != n * ideal.size:
            counterexample = {
                "difference": d,
                "closure_size": size,
                "expected_size": n * ideal.size,
            }
            break
        if direct.all():
            minimal = False
            expected = False  # the whole ring is never a proper subring, nor <d> maximal
        else:
            minimal = ctx.mask_minimal(big, direct)
            expected = ctx.maximal(ideal)
        if minimal != expected:
            counterexample = {
                "difference": d,
                "ideal_members": [int(x) for x in ideal.members()],
                "closure_is_minimal_extension": minimal,
                "ideal_is_maximal": expected,
            }
            break
        if minimal:
            minimal_pairs += int(rows.size)
    witnesses = {
        "pairs_checked": n * n,
        "distinct_difference_ideals": len(distinct),
        "minimal_pairs": minimal_pairs,
    }
    return VerdictReport("diagonal-minimality", ring.tag, counterexample is None, witnesses, counterexample)


def _first_index_2d(bad: np.ndarray) -> tuple[int, int]:
    flat = int(np.flatnonzero(bad.ravel())[0])
    return flat // bad.shape[1], flat % bad.shape[1]


def verify_idealization_results(
    ring: FiniteRing,
    *,
    ctx: EntryContext | None = None,
    cap: int | None = None,
    seed: int = 0,
) -> VerdictReport:
    """Subrings of R(+)R over the base copy of R.

    Adjoining (a, b) must give R(+)<b> for every pair; R(+)m must be a
    maximal subring for every maximal ideal m; minimality of R[(a, b)]
    must track maximality of <b>; and the base copy is a maximal subring
    exactly when R is a field.
    """
    ctx = _ctx_for(ring, ctx, cap, seed)
    ext, closures = ctx.idealization_scan()
    big = ext.big
    n = ring.order
    counterexample = None
    minimal_pairs = 0
    for b in range(n):
        ideal = ctx.principal(b)
        expected_mask = np.tile(ideal.mask, n)
        rows = np.arange(n, dtype=np.int64) * n + b
        mismatch = closures[rows] != expected_mask[None, :]
        if mismatch.any():
            r0, c0 = _first_index_2d(mismatch)
            counterexample = {
                "a": int(rows[r0]) // n,
                "b": b,
                "first_disagreeing_element": [int(c0) // n, int(c0) % n],
                "in_closure": bool(closures[int(rows[r0]), c0]),
                "in_module_form": bool(expected_mask[c0]),
            }
            break
        form = intermediate_idealization_form(ext, expected_mask)
        if isinstance(form, NotOfForm):
            counterexample = {"b": b, "not_of_module_form_at": form.witness}
            break
        if form != ideal:
            counterexample = {
                "b": b,
                "module_ideal": [int(x) for x in form.members()],
                "principal_ideal": [int(x) for x in ideal.members()],
            }
            break
        if expected_mask.all():
            minimal = False
            expected = False
        else:
            minimal = ctx.mask_minimal(big, expected_mask)
            expected = ctx.maximal(ideal)
        if minimal != expected:
            counterexample = {
                "b": b,
                "ideal_members": [int(x) for x in ideal.members()],
                "closure_is_minimal_extension": minimal,
                "ideal_is_maximal": expected,
            }
            break
        if minimal:
            minimal_pairs += n
    max_count = 0
    if counterexample is None:
        for m_ideal in ideals.max_spectrum(ring):
            mask = np.tile(m_ideal.mask, n)
            if not ctx.mask_minimal(big, mask):
                counterexample = {
                    "maximal_ideal": [int(x) for x in m_ideal.members()],
                    "submodule_subring_is_maximal": False,
                }
                break
            max_count += 1
    base_minimal = None
    base_field = None
    if counterexample is None:
        base_minimal = ctx.mask_minimal(big, ext.image_mask)
        nonzero = np.arange(n) != ring.zero
        base_field = bool((ring.unit_mask | ~nonzero).all())
        if base_minimal != base_field:
            counterexample = {
                "base_copy_is_maximal_subring": base_minimal,
                "ring_is_field": base_field,
            }
    witnesses = {
        "pairs_checked": n * n,
        "minimal_pairs": minimal_pairs,
        "maximal_submodule_subrings": max_count,
        "base_copy_minimal": bool(base_minimal) if base_minimal is not None else None,
        "ring_is_field": bool(base_field) if base_field is not None else None,
        "scope": "subrings containing the embedded copy of R",
    }
    return VerdictReport("idealization-subrings", ring.tag, counterexample is None, witnesses, counterexample)


def _profile_matrix(ring: FiniteRing) -> np.ndarray:
    return np.stack(
        [
            ring.additive_order.astype(np.int64),
            ring.unit_mask.astype(np.int64),
            ring.idempotent_mask.astype(np.int64),
            ring.nilpotency_index.astype(np.int64),
            ring.zero_divisor_mask.astype(np.int64),
        ],
        axis=1,
    )


def _find_table_iso(
    ring_a: FiniteRing,
    ring_b: FiniteRing,
    seed_pairs: Sequence[tuple[int, int]],
    cap: int,
) -> RingHom | None:
    """Backtracking search for a table isomorphism honoring the seed pairs.

    Assignments propagate through both operation tables; candidates are tried
    in ascending index order at the least unassigned element, so the first
    hit is the lexicographically least isomorphism extending the seeds.
    """
    n = ring_a.order
    if ring_b.order != n:
        return None
    if n > cap:
        raise CapExceeded(f"isomorphism search capped at order {cap}, got {n}")
    prof_a = _profile_matrix(ring_a)
    prof_b = _profile_matrix(ring_b)
    if sorted(map(tuple, prof_a)) != sorted(map(tuple, prof_b)):
        return None
    add_a, mul_a = ring_a.add_table, ring_a.mul_table
    add_b, mul_b = ring_b.add_table, ring_b.mul_table
    phi = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=bool)
    assigned: list[int] = []

    def assign(x: int, v: int, trail: list[int]) -> bool:
        queue = [(x, v)]
        while queue:
            x, v = queue.pop()
            if phi[x] == v:
                continue
            if phi[x] != -1 or used[v]:
                return False
            if not np.array_equal(prof_a[x], prof_b[v]):
                return False
            phi[x] = v
            used[v] = True
            assigned.append(x)
            trail.append(x)
            for y in assigned:
                w = int(phi[y])
                queue.append((int(add_a[x, y]), int(add_b[v, w])))
                queue.append((int(mul_a[x, y]), int(mul_b[v, w])))
        return True

    def undo(trail: list[int]) -> None:
        for x in reversed(trail):
            used[phi[x]] = False
            phi[x] = -1
            assigned.pop()

    root: list[int] = []
    for x, v in seed_pairs:
        if not assign(int(x), int(v), root):
            return None

    def search() -> bool:
        open_slots = np.flatnonzero(phi < 0)
        if open_slots.size == 0:
            return True
        x = int(open_slots[0])
        for v in range(n):
            if used[v] or not np.array_equal(prof_a[x], prof_b[v]):
                continue
            trail: list[int] = []
            if assign(x, v, trail) and search():
                return True
            undo(trail)
        return False

    if not search():
        return None
    return RingHom(ring_a, ring_b, phi)


def ring_isomorphic(ring_a: FiniteRing, ring_b: FiniteRing, *, cap: int = DEFAULT_ISO_CAP) -> RingHom | None:
    """A ring isomorphism (least under the search order) or None."""
    if ring_a.order != ring_b.order:
        return None
    return _find_table_iso(
        ring_a,
        ring_b,
        [(ring_a.zero, ring_b.zero), (ring_a.one, ring_b.one)],
        cap,
    )


def algebra_isomorphic(ext_a: Extension, ext_b: Extension, *, cap: int = DEFAULT_ISO_CAP) -> RingHom | None:
    """An isomorphism of the big rings commuting with the two embeddings.

    Both extensions must share the same small ring object. Returns the least
    such isomorphism under the search order, or None.
    """
    if ext_a.small is not ext_b.small:
        raise ValueError("extensions must share the same base ring object")
    if ext_a.big.order != ext_b.big.order:
        return None
    seeds = list(zip(map(int, ext_a.iota.mapping), map(int, ext_b.iota.mapping)))
    hom = _find_table_iso(ext_a.big, ext_b.big, seeds, cap)
    if hom is None:
        return None
    if not np.array_equal(hom.mapping[ext_a.iota.mapping], ext_b.iota.mapping):
        raise SelfCheckError("isomorphism stopped commuting with the embeddings")
    return hom


def find_field_embedding(field_small: FiniteRing, field_big: FiniteRing) -> RingHom | None:
    """Least unital field embedding, found through multiplicative generators.

    Maps a generator g of the small field's unit group to the least element
    of matching multiplicative order whose induced map is additive.
    """
    q = field_small.order
    gen = None
    for g in range(q):
        if g != field_small.zero and _mult_order(field_small, g) == q - 1:
            gen = g
            break
    if gen is None:
        raise ValueError("small ring has no multiplicative generator; not a field?")
    powers = [field_small.one]
    while len(powers) < q - 1:
        powers.append(field_small.mul(powers[-1], gen))
    for c in range(field_big.order):
        if c == field_big.zero or _mult_order(field_big, c) != q - 1:
            continue
        mapping = np.empty(q, dtype=np.int64)
        mapping[field_small.zero] = field_big.zero
        cur = field_big.one
        for x in powers:
            mapping[x] = cur
            cur = field_big.mul(cur, c)
        ok = (
            field_big.add_table[mapping[:, None], mapping[None, :]] == mapping[field_small.add_table]
        ).all()
        if ok:
            return RingHom(field_small, field_big, mapping)
    return None


def _mult_order(ring: FiniteRing, x: int) -> int:
    if x == ring.zero:
        return 0
    cur = x
    k = 1
    while cur != ring.one:
        cur = ring.mul(cur, x)
        k += 1
        if k > ring.order:
            return 0  # not a unit: the power chain never reaches one
    return k


def quadratic_field_extension(field_small: FiniteRing, *, cap: int | None = None, seed: int = 0) -> tuple[FiniteRing, RingHom]:
    """A degree-two field extension together with its embedding."""
    from .core import galois_field

    q = field_small.order
    p = 2
    while q % p:
        p += 1
    k = 0
    power = 1
    while power < q:
        power *= p
        k += 1
    if power != q:
        raise ValueError(f"order {q} is not a prime power; not a field")
    big = galois_field(p, 2 * k, cap=cap, seed=seed)
    emb = find_field_embedding(field_small, big)
    if emb is None:
        raise SelfCheckError(f"no embedding of a field of order {q} into GF({big.order})")
    return big, emb


@dataclass(frozen=True)
class ExtensionCandidate:
    """One constructed minimal-extension candidate over a maximal ideal."""

    kind: str
    max_ideal: Ideal
    ext: Extension | None
    skip_reason: str | None = None


def vnr_minimal_extension_candidates(
    ring: FiniteRing,
    *,
    cap: int | None = None,
    seed: int = 0,
) -> list[ExtensionCandidate]:
    """The three candidate minimal extensions per maximal ideal of a regular ring.

    inert: replace the local factor at m by a degree-two field extension;
    decomposed: R x R/m with r -> (r, r mod m); ramified: R(+)R/m.
    Candidates whose order exceeds the cap are returned with a skip reason.
    """
    from .core import product

    if not ring_predicates(ring).is_vnr:
        raise ValueError("candidates are defined over von Neumann regular rings only")
    decomp = local_decomposition(ring)
    out: list[ExtensionCandidate] = []
    for m_ideal in ideals.max_spectrum(ring):
        factor_at = None
        for fac in decomp.factors:
            kernel = fac.hom.mapping == fac.ring.zero
            if np.array_equal(kernel, m_ideal.mask):
                factor_at = fac
                break
        if factor_at is None:
            raise SelfCheckError("no local factor matches a maximal ideal")
        # inert
        try:
            big_field, femb = quadratic_field_extension(factor_at.ring, cap=cap, seed=seed)
            pieces = [
                (big_field, femb.mapping[factor_at.hom.mapping]) if fac is factor_at else (fac.ring, fac.hom.mapping)
                for fac in decomp.factors
            ]
            big, mapping = pieces[0][0], pieces[0][1].astype(np.int64)
            for piece_ring, piece_map in pieces[1:]:
                big, _, _ = product(big, piece_ring, cap=cap, seed=seed)
                mapping = mapping * piece_ring.order + piece_map
            out.append(ExtensionCandidate(INERT, m_ideal, make_extension(ring, big, mapping)))
        except CapExceeded as exc:
            out.append(ExtensionCandidate(INERT, m_ideal, None, str(exc)))
        # decomposed
        try:
            quot, proj = ideals.quotient(ring, m_ideal)
            big, _, _ = product(ring, quot, cap=cap, seed=seed)
            mapping = np.arange(ring.order, dtype=np.int64) * quot.order + proj.mapping
            out.append(ExtensionCandidate(DECOMPOSED, m_ideal, make_extension(ring, big, mapping)))
        except CapExceeded as exc:
            out.append(ExtensionCandidate(DECOMPOSED, m_ideal, None, str(exc)))
        # ramified
        try:
            big, embed = ideals.idealization(ring, CyclicModuleSpec(ring, m_ideal), cap=cap, seed=seed)
            out.append(ExtensionCandidate(RAMIFIED, m_ideal, Extension(ring, big, embed)))
        except CapExceeded as exc:
            out.append(ExtensionCandidate(RAMIFIED, m_ideal, None, str(exc)))
    return out


def classify_vnr_extension(
    ext: Extension,
    *,
    iso_cap: int = DEFAULT_ISO_CAP,
) -> tuple[CaseLabel | None, VerdictReport]:
    """Classify a minimal extension of a von Neumann regular ring.

    Scans every maximal ideal of R against all three case conditions, then
    asserts that exactly one (ideal, case) matches and that the ideal is the
    conductor, which must be maximal. Cross-checks the structure statement:
    a ramified big ring is isomorphic over R to R(+)R/m, otherwise the big
    ring is again regular.
    """
    ring, big = ext.small, ext.big
    if not ring_predicates(ring).is_vnr:
        raise ValueError("base ring is not von Neumann regular")
    if not is_minimal(ext):
        raise ValueError("extension is not minimal")
    n = big.order
    cond_ideal, _ = conductor(ext)
    failures: list[dict] = []
    witnesses: dict = {
        "conductor_members": [int(x) for x in cond_ideal.members()],
        "conductor_maximal": ideals.is_maximal(ring, cond_ideal),
    }
    if not witnesses["conductor_maximal"]:
        failures.append({"check": "conductor-maximal", "conductor_members": witnesses["conductor_members"]})

    img = ext.image_mask
    arange_t = np.arange(n, dtype=np.int64)
    sq = big.mul_table.diagonal().astype(np.int64)
    cube = big.mul_table[sq, arange_t]
    sq_minus_self = big.sub_table[sq, arange_t]
    outside = ~img

    matches: list[tuple[Ideal, str, int | None]] = []
    table: list[dict] = []
    for m_ideal in ideals.max_spectrum(ring):
        mi_mask = np.zeros(n, dtype=bool)
        mi_mask[ext.iota.mapping[list(m_ideal.members())]] = True
        members = np.flatnonzero(mi_mask)
        if members.size:
            mq_ok = img[big.mul_table[members]].all(axis=0)
        else:
            mq_ok = np.ones(n, dtype=bool)

        case_inert = False
        if ideals.is_ideal_mask(big, mi_mask):
            t_ideal = Ideal(big, mi_mask, gens=tuple(int(x) for x in members))
            if ideals.is_maximal(big, t_ideal):
                quot_r, proj_r = ideals.quotient(ring, m_ideal)
                quot_t, proj_t = ideals.quotient(big, t_ideal)
                if quot_t.order > quot_r.order:
                    mapping = np.empty(quot_r.order, dtype=np.int64)
                    mapping[proj_r.mapping] = proj_t.mapping[ext.iota.mapping]
                    residue_ext = make_extension(quot_r, quot_t, mapping)
                    case_inert = is_minimal_field_extension(residue_ext)
        q_dec = _first_generating(ext, outside & mi_mask[sq_minus_self] & mq_ok)
        q_ram = _first_generating(ext, outside & img[sq] & img[cube] & mq_ok)
        row = {
            "max_ideal_members": [int(x) for x in m_ideal.members()],
            "inert": case_inert,
            "decomposed_witness": q_dec,
            "ramified_witness": q_ram,
        }
        table.append(row)
        if case_inert:
            matches.append((m_ideal, INERT, None))
        if q_dec is not None:
            matches.append((m_ideal, DECOMPOSED, q_dec))
        if q_ram is not None:
            matches.append((m_ideal, RAMIFIED, q_ram))

    witnesses["case_table"] = table
    label: CaseLabel | None = None
    if len(matches) != 1:
        failures.append(
            {
                "check": "exactly-one-case",
                "match_count": len(matches),
                "matches": [
                    {"max_ideal_members": [int(x) for x in m.members()], "kind": kind, "q": q}
                    for m, kind, q in matches
                ],
            }
        )
    else:
        m_ideal, kind, q = matches[0]
        if m_ideal != cond_ideal:
            failures.append(
                {
                    "check": "case-at-conductor",
                    "case_ideal_members": [int(x) for x in m_ideal.members()],
                    "conductor_members": witnesses["conductor_members"],
                }
            )
        else:
            label = CaseLabel(kind, q, m_ideal)
            witnesses["kind"] = kind
            witnesses["q"] = q
            if kind == RAMIFIED:
                model, embed = ideals.idealization(
                    ring, CyclicModuleSpec(ring, m_ideal), cap=max(big.order, 2)
                )
                model_ext = Extension(ring, model, embed)
                if model.order != big.order:
                    failures.append(
                        {"check": "ramified-isomorphism", "orders": [big.order, model.order]}
                    )
                elif big.order <= iso_cap:
                    iso = algebra_isomorphic(ext, model_ext, cap=iso_cap)
                    if iso is None:
                        failures.append({"check": "ramified-isomorphism", "found": False})
                    else:
                        witnesses["isomorphic_to_idealization"] = True
                else:
                    witnesses["isomorphism_check"] = f"skipped: order {big.order} above iso cap {iso_cap}"
            else:
                big_vnr = ring_predicates(big).is_vnr
                witnesses["big_ring_regular"] = big_vnr
                if not big_vnr:
                    failures.append({"check": "big-ring-regular", "found": False})
    passed = not failures
    counterexample = {"failures": failures} if failures else None
    report = VerdictReport(
        "vnr-classification",
        f"{ring.tag} in {big.tag}",
        passed,
        witnesses,
        counterexample,
    )
    return label, report


def _first_generating(ext: Extension, candidates: np.ndarray) -> int | None:
    """Least candidate element that generates the big ring over the image."""
    big = ext.big
    base = ext.image_mask
    for q in np.flatnonzero(candidates):
        if adjoin_element_mask(big, base, int(q)).all():
            return int(q)
    return None


def verify_conductor_prime(ext: Extension) -> VerdictReport:
    """For a minimal extension, the conductor must be a prime ideal of R."""
    if not is_minimal(ext):
        raise ValueError("conductor primality is claimed for minimal extensions only")
    cond_ideal, _ = conductor(ext)
    prime = ideals.is_prime(ext.small, cond_ideal)
    witnesses = {
        "conductor_members": [int(x) for x in cond_ideal.members()],
        "conductor_prime": prime,
    }
    counterexample = None if prime else {"conductor_members": witnesses["conductor_members"]}
    return VerdictReport(
        "minimal-extension-conductors",
        f"{ext.small.tag} in {ext.big.tag}",
        prime,
        witnesses,
        counterexample,
    )


def verify_crucial_ideal(ext: Extension) -> VerdictReport:
    """The crucial maximal ideal must equal the conductor and be a contraction.

    Localize at every maximal ideal of R (table in the witnesses), take the
    unique non-isomorphism prime, compare with the conductor, and find a
    maximal ideal of T contracting to it.
    """
    failures: list[dict] = []
    witnesses: dict = {}
    try:
        crucial, records = localstructure.crucial_maximal_ideal(ext)
    except CrucialIdealError as exc:
        witnesses["localization_table"] = [_record_row(r) for r in exc.records]
        return VerdictReport(
            "minimal-extension-conductors",
            f"{ext.small.tag} in {ext.big.tag}",
            False,
            witnesses,
            {"error": str(exc)},
        )
    witnesses["localization_table"] = [_record_row(r) for r in records]
    witnesses["crucial_members"] = [int(x) for x in crucial.members()]
    cond_ideal, _ = conductor(ext)
    witnesses["conductor_members"] = [int(x) for x in cond_ideal.members()]
    if crucial != cond_ideal:
        failures.append(
            {
                "check": "crucial-equals-conductor",
                "crucial_members": witnesses["crucial_members"],
                "conductor_members": witnesses["conductor_members"],
            }
        )
    contraction = None
    for big_max in ideals.max_spectrum(ext.big):
        pulled = big_max.mask[ext.iota.mapping]
        if np.array_equal(pulled, crucial.mask):
            contraction = [int(x) for x in big_max.members()]
            break
    witnesses["contracting_maximal_ideal"] = contraction
    if contraction is None:
        failures.append({"check": "contraction-exists", "found": False})
    passed = not failures
    return VerdictReport(
        "minimal-extension-conductors",
        f"{ext.small.tag} in {ext.big.tag}",
        passed,
        witnesses,
        {"failures": failures} if failures else None,
    )


def _record_row(record: localstructure.PrimeLocalizationRecord) -> dict:
    return {
        "prime_members": [int(x) for x in record.prime_members],
        "small_local_order": record.small_local_order,
        "big_local_order": record.big_local_order,
        "is_isomorphism": record.is_isomorphism,
    }


def catalog_minimal_extensions(ctx: EntryContext) -> list[tuple[str, Extension]]:
    """Every minimal extension the verifiers construct for one ring.

    Diagonal family (one pair per distinct maximal difference ideal),
    idealization family (R(+)m per maximal ideal m, plus the base copy when
    R is a field), and the regular-ring candidates. Families whose big ring
    exceeds the order cap are silently absent; the caller reports coverage.
    """
    ring = ctx.ring
    out: list[tuple[str, Extension]] = []
    try:
        diag_ext, _ = ctx.diagonal_scan()
        seen: set[bytes] = set()
        for d in range(ring.order):
            ideal = ctx.principal(d)
            if ideal.key() in seen:
                continue
            seen.add(ideal.key())
            if not ctx.maximal(ideal):
                continue
            mask = ideal.mask[ring.sub_table].ravel()
            sub = subring_extension(diag_ext.big, mask, tag=f"diagonal closure at difference {d}")
            out.append((f"diagonal-difference-{d}", sub))
    except CapExceeded:
        pass
    try:
        idz_ext, _ = ctx.idealization_scan()
        for i, m_ideal in enumerate(ideals.max_spectrum(ring)):
            mask = np.tile(m_ideal.mask, ring.order)
            sub = subring_extension(idz_ext.big, mask, tag=f"submodule subring at maximal ideal {i}")
            out.append((f"idealization-maximal-{i}", sub))
        nonzero = np.arange(ring.order) != ring.zero
        if bool((ring.unit_mask | ~nonzero).all()):
            out.append(("idealization-base-copy", idz_ext))
    except CapExceeded:
        pass
    if ring_predicates(ring).is_vnr:
        for i, cand in enumerate(vnr_minimal_extension_candidates(ring, cap=ctx.cap, seed=ctx.seed)):
            if cand.ext is not None:
                out.append((f"vnr-{cand.kind}-{i}", cand.ext))
    return out


def verify_infrastructure(
    ring: FiniteRing,
    *,
    ctx: EntryContext | None = None,
    cap: int | None = None,
    seed: int = 0,
) -> VerdictReport:
    """Engine consistency on one ring: scans, localizations, decomposition.

    Checks regular iff unit, the predicate implications field -> regular ->
    reduced, idempotent stability of the power map, locality of every
    localization at a prime, the corner decomposition reassembly, and that
    inverting all regular elements changes nothing.
    """
    failures: list[dict] = []
    if not np.array_equal(~ring.zero_divisor_mask, ring.unit_mask):
        bad = int(np.flatnonzero((~ring.zero_divisor_mask) != ring.unit_mask)[0])
        failures.append({"check": "regular-iff-unit", "element": bad})
    preds = ring_predicates(ring)
    if preds.is_field and not preds.is_vnr:
        failures.append({"check": "field-implies-regular"})
    if preds.is_vnr and not preds.is_reduced:
        failures.append({"check": "regular-implies-reduced"})
    idems = np.flatnonzero(ring.idempotent_mask)
    stable = eventual_idempotents(ring, idems)
    if not np.array_equal(stable, idems):
        failures.append({"check": "idempotent-power-stability"})
    spectrum = ideals.max_spectrum(ring)
    local_orders = []
    for prime in spectrum:
        loc = localstructure.localize_at_prime(ring, prime)
        assert loc.ring is not None
        local_orders.append(loc.ring.order)
    decomp = local_decomposition(ring)
    factor_orders = [fac.ring.order for fac in decomp.factors]
    localstructure.total_quotient_ring(ring)
    witnesses = {
        "validation_mode": ring.validation_mode,
        "predicates": {
            "is_field": preds.is_field,
            "is_reduced": preds.is_reduced,
            "is_vnr": preds.is_vnr,
            "is_local": preds.is_local,
        },
        "maximal_ideal_count": len(spectrum),
        "prime_localization_orders": local_orders,
        "local_factor_orders": factor_orders,
        "total_quotient_fixed": True,
    }
    passed = not failures
    return VerdictReport(
        "infrastructure",
        ring.tag,
        passed,
        witnesses,
        {"failures": failures} if failures else None,
    )


def verify_minimality_oracle(
    ring: FiniteRing,
    *,
    ctx: EntryContext | None = None,
    cap: int | None = None,
    seed: int = 0,
) -> VerdictReport:
    """Cross-validate the single-adjunction minimality decision on tiny rings.

    For every family subring with big ring of order at most 16: the
    exhaustive one-and-two-element closure oracle must agree with
    is_minimal, and minimal extensions must have exactly two lattice nodes.
    """
    ctx = _ctx_for(ring, ctx, cap, seed)
    if ring.order * ring.order > ext_mod.ORACLE_LIMIT:
        raise CapExceeded(
            f"oracle needs big rings of order at most {ext_mod.ORACLE_LIMIT}, got {ring.order * ring.order}"
        )
    failures: list[dict] = []
    checked = 0
    minimal_found = 0
    for family, (base_ext, _) in (
        ("diagonal", ctx.diagonal_scan()),
        ("idealization", ctx.idealization_scan()),
    ):
        big = base_ext.big
        seen: set[bytes] = set()
        masks: list[tuple[str, np.ndarray]] = []
        for d in range(ring.order):
            ideal = ctx.principal(d)
            if family == "diagonal":
                mask = ideal.mask[ring.sub_table].ravel()
            else:
                mask = np.tile(ideal.mask, ring.order)
            if mask.tobytes() in seen or mask.all():
                continue
            seen.add(mask.tobytes())
            masks.append((f"{family} ideal of {d}", mask))
        if base_ext.image_mask.tobytes() not in seen:
            masks.append((f"{family} base copy", base_ext.image_mask))
        for desc, mask in masks:
            sub = subring_extension(big, mask)
            fast = is_minimal(sub)
            slow = minimality_oracle(sub)
            nodes = intermediate_subrings(sub)
            two = len(nodes) == 2
            checked += 1
            if fast != slow or fast != two:
                failures.append(
                    {
                        "subring": desc,
                        "single_adjunction": fast,
                        "exhaustive_oracle": slow,
                        "lattice_nodes": len(nodes),
                    }
                )
            elif fast:
                minimal_found += 1
    witnesses = {"subrings_checked": checked, "minimal_found": minimal_found}
    passed = not failures
    return VerdictReport(
        "minimality-oracle",
        ring.tag,
        passed,
        witnesses,
        {"failures": failures} if failures else None,
    )
