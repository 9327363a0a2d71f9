"""Finite commutative rings with identity, represented as dense index tables.

A ring of order n has elements 0..n-1; addition and multiplication are n x n
lookup tables (numpy int32). Everything is exact: no floats, no hashing of
structures, and every constructed ring is checked against the ring axioms
before it is handed out. Rings are immutable once built.

Element index conventions used by the constructors in this package:

* ``zmod(n)``: element k is the residue class of k.
* ``galois_field(p, k)``: element code sum(c_i * p**i) is the polynomial
  sum(c_i * x**i) reduced modulo the lexicographically least monic
  irreducible of degree k (coefficients compared from the constant term up).
* ``product(R, S)``: pair (r, s) has index r * |S| + s.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

DEFAULT_ORDER_CAP = 512
EXHAUSTIVE_LIMIT = 64          # full triple scans up to this order, sampled above
SAMPLE_FACTOR = 10             # sampled triples per n^2 when above the limit
ORDER_CAP_ENV = "FINRING_MAX_ORDER"

__all__ = [
    "AxiomViolation",
    "CapExceeded",
    "DEFAULT_ORDER_CAP",
    "ElementProfile",
    "FiniteRing",
    "HomLawError",
    "RingAxiomError",
    "RingHom",
    "RingPredicates",
    "SelfCheckError",
    "adjoin_element_mask",
    "element_profile",
    "eventual_idempotent",
    "eventual_idempotents",
    "from_tables",
    "galois_field",
    "identity_hom",
    "order_cap",
    "pair_decode",
    "pair_encode",
    "product",
    "ring_predicates",
    "zmod",
]


class CapExceeded(ValueError):
    """Requested construction exceeds the configured order cap."""


class SelfCheckError(RuntimeError):
    """An internal cross-validation failed; this signals an engine bug."""


@dataclass(frozen=True)
class AxiomViolation:
    """One failed ring law together with the least witness tuple."""

    law: str
    witness: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.law} fails at {self.witness}"


class RingAxiomError(ValueError):
    """The given tables do not define a commutative ring with 1 != 0."""

    def __init__(self, violations: Iterable[AxiomViolation]):
        self.violations = tuple(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class HomLawError(ValueError):
    """A map between rings fails one of the homomorphism laws."""

    def __init__(self, law: str, witness: tuple[int, ...]):
        self.law = law
        self.witness = witness
        super().__init__(f"{law} fails at {witness}")


def order_cap(explicit: int | None = None) -> int:
    """Resolve the ring-order cap: explicit argument, then env var, then default."""
    if explicit is not None:
        cap = int(explicit)
    else:
        env = os.environ.get(ORDER_CAP_ENV, "").strip()
        cap = int(env) if env else DEFAULT_ORDER_CAP
    if cap < 2:
        raise ValueError(f"order cap must be at least 2, got {cap}")
    return cap


def _first_witness(bad: np.ndarray) -> tuple[int, ...]:
    # bad: boolean array of any rank; least multi-index in row-major order
    flat = int(np.flatnonzero(bad.ravel())[0])
    return tuple(int(i) for i in np.unravel_index(flat, bad.shape))


def _find_identity(table: np.ndarray) -> int | None:
    n = table.shape[0]
    hits = np.flatnonzero((table == np.arange(n, dtype=table.dtype)).all(axis=1))
    return int(hits[0]) if hits.size else None


def validate_tables(add: np.ndarray, mul: np.ndarray, *, seed: int = 0) -> list[AxiomViolation]:
    """Check the commutative unital ring axioms, returning every violation found.

    Orders up to EXHAUSTIVE_LIMIT get full triple scans for associativity and
    distributivity; larger orders use SAMPLE_FACTOR * n^2 seeded random triples.
    The order-2 laws (commutativity, identities, inverses) are always exhaustive.
    """
    n = add.shape[0]
    out: list[AxiomViolation] = []

    for name, t in (("addition table", add), ("multiplication table", mul)):
        if t.shape != (n, n):
            raise ValueError(f"{name} must be square of matching size, got {t.shape}")
        if t.min() < 0 or t.max() >= n:
            out.append(AxiomViolation(f"{name} entry out of range", _first_witness((t < 0) | (t >= n))))
    if out:
        return out

    bad = add != add.T
    if bad.any():
        out.append(AxiomViolation("additive commutativity", _first_witness(bad)))
    bad = mul != mul.T
    if bad.any():
        out.append(AxiomViolation("multiplicative commutativity", _first_witness(bad)))

    zero = _find_identity(add)
    if zero is None:
        out.append(AxiomViolation("additive identity", (0,)))
    else:
        no_inverse = ~(add == zero).any(axis=1)
        if no_inverse.any():
            out.append(AxiomViolation("additive inverses", _first_witness(no_inverse)))

    one = _find_identity(mul)
    if one is None:
        out.append(AxiomViolation("multiplicative identity", (0,)))
    elif zero is not None and one == zero:
        out.append(AxiomViolation("one distinct from zero", (zero,)))

    if n <= EXHAUSTIVE_LIMIT:
        left = add[add]                      # [a,b,c] -> (a+b)+c
        right = add[:, add]                  # [a,b,c] -> a+(b+c)
        bad = left != right
        if bad.any():
            out.append(AxiomViolation("additive associativity", _first_witness(bad)))
        left = mul[mul]
        right = mul[:, mul]
        bad = left != right
        if bad.any():
            out.append(AxiomViolation("multiplicative associativity", _first_witness(bad)))
        left = mul[:, add]                   # a*(b+c)
        right = add[mul[:, :, None], mul[:, None, :]]
        bad = left != right
        if bad.any():
            out.append(AxiomViolation("distributivity", _first_witness(bad)))
    else:
        rng = np.random.default_rng(seed)
        m = SAMPLE_FACTOR * n * n
        a, b, c = rng.integers(0, n, size=(3, m), dtype=np.int32)
        bad = add[add[a, b], c] != add[a, add[b, c]]
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            out.append(AxiomViolation("additive associativity (sampled)", (int(a[i]), int(b[i]), int(c[i]))))
        bad = mul[mul[a, b], c] != mul[a, mul[b, c]]
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            out.append(AxiomViolation("multiplicative associativity (sampled)", (int(a[i]), int(b[i]), int(c[i]))))
        bad = mul[a, add[b, c]] != add[mul[a, b], mul[a, c]]
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            out.append(AxiomViolation("distributivity (sampled)", (int(a[i]), int(b[i]), int(c[i]))))
    return out


class FiniteRing:
    """A finite commutative unital ring over element indices 0..order-1.

    Construction validates the axioms (exhaustively up to order 64, by seeded
    sampling above) and derives zero, one and the negation table. The instance
    carries cached structure scans (units, idempotents, nilpotents, additive
    orders) used throughout the package.
    """

    def __init__(
        self,
        add_table: Sequence[Sequence[int]] | np.ndarray,
        mul_table: Sequence[Sequence[int]] | np.ndarray,
        tag: str = "ring",
        *,
        cap: int | None = None,
        seed: int = 0,
    ):
        add = np.ascontiguousarray(np.asarray(add_table, dtype=np.int32))
        mul = np.ascontiguousarray(np.asarray(mul_table, dtype=np.int32))
        if add.ndim != 2 or add.shape[0] != add.shape[1]:
            raise ValueError(f"addition table must be square, got shape {add.shape}")
        n = add.shape[0]
        if n < 2:
            raise ValueError("ring must have at least two elements (zero ring excluded)")
        limit = order_cap(cap)
        if n > limit:
            raise CapExceeded(f"ring of order {n} exceeds order cap {limit}")
        violations = validate_tables(add, mul, seed=seed)
        if violations:
            raise RingAxiomError(violations)
        add.setflags(write=False)
        mul.setflags(write=False)
        self.add_table = add
        self.mul_table = mul
        self.order = n
        self.tag = tag
        self.zero = _find_identity(add)
        self.one = _find_identity(mul)
        self.validation_mode = "exhaustive" if n <= EXHAUSTIVE_LIMIT else "sampled"
        neg = np.argmax(add == self.zero, axis=1).astype(np.int32)
        neg.setflags(write=False)
        self.neg_table = neg
        self._derived_cache: dict[str, object] = {}

    def __repr__(self) -> str:
        return f"<FiniteRing {self.tag!r} order {self.order}>"

    def add(self, x: int, y: int) -> int:
        return int(self.add_table[x, y])

    def mul(self, x: int, y: int) -> int:
        return int(self.mul_table[x, y])

    def neg(self, x: int) -> int:
        return int(self.neg_table[x])

    def sub(self, x: int, y: int) -> int:
        return int(self.add_table[x, self.neg_table[y]])

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            raise ValueError("negative exponents are not defined in a ring")
        acc = self.one
        for _ in range(k):
            acc = int(self.mul_table[acc, x])
        return acc

    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def sub_table(self) -> np.ndarray:
        t = self.add_table[:, self.neg_table]
        t.setflags(write=False)
        return t

    @cached_property
    def unit_mask(self) -> np.ndarray:
        m = (self.mul_table == self.one).any(axis=1)
        m.setflags(write=False)
        return m

    @cached_property
    def idempotent_mask(self) -> np.ndarray:
        m = self.mul_table.diagonal() == np.arange(self.order, dtype=np.int32)
        m.setflags(write=False)
        return m

    @cached_property
    def zero_divisor_mask(self) -> np.ndarray:
        cols = np.flatnonzero(np.arange(self.order) != self.zero)
        m = (self.mul_table[:, cols] == self.zero).any(axis=1)
        m.setflags(write=False)
        return m

    @cached_property
    def nilpotency_index(self) -> np.ndarray:
        """Least k with x^k = 0 per element, or 0 for non-nilpotents."""
        n = self.order
        idx = np.zeros(n, dtype=np.int32)
        cur = np.arange(n, dtype=np.int32)
        base = np.arange(n, dtype=np.int32)
        for k in range(1, n + 1):
            fresh = (cur == self.zero) & (idx == 0)
            idx[fresh] = k
            cur = self.mul_table[cur, base]
        idx.setflags(write=False)
        return idx

    @cached_property
    def nilpotent_mask(self) -> np.ndarray:
        m = self.nilpotency_index > 0
        m.setflags(write=False)
        return m

    @cached_property
    def additive_order(self) -> np.ndarray:
        n = self.order
        out = np.zeros(n, dtype=np.int32)
        cur = np.arange(n, dtype=np.int32)
        base = np.arange(n, dtype=np.int32)
        for k in range(1, n + 1):
            fresh = (cur == self.zero) & (out == 0)
            out[fresh] = k
            cur = self.add_table[cur, base]
        if (out == 0).any():
            raise SelfCheckError("additive order scan did not terminate")
        out.setflags(write=False)
        return out

    @property
    def characteristic(self) -> int:
        return int(self.additive_order[self.one])

    def units(self) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.unit_mask)]


@dataclass(frozen=True)
class ElementProfile:
    """Structure facts about one element, all derived from the tables."""

    index: int
    is_unit: bool
    is_idempotent: bool
    is_nilpotent: bool
    is_zero_divisor: bool
    is_regular: bool
    additive_order: int
    nilpotency_index: int | None


def element_profile(ring: FiniteRing, x: int) -> ElementProfile:
    """Profile of element x; raises on an out-of-range index."""
    if not 0 <= x < ring.order:
        raise ValueError(f"element index {x} out of range for order {ring.order}")
    nil = int(ring.nilpotency_index[x])
    return ElementProfile(
        index=x,
        is_unit=bool(ring.unit_mask[x]),
        is_idempotent=bool(ring.idempotent_mask[x]),
        is_nilpotent=bool(ring.nilpotent_mask[x]),
        is_zero_divisor=bool(ring.zero_divisor_mask[x]),
        is_regular=not bool(ring.zero_divisor_mask[x]),
        additive_order=int(ring.additive_order[x]),
        nilpotency_index=nil if nil > 0 else None,
    )


@dataclass(frozen=True)
class RingPredicates:
    is_field: bool
    is_reduced: bool
    is_vnr: bool
    is_local: bool


def ring_predicates(ring: FiniteRing) -> RingPredicates:
    """Global predicates: field, reduced, von Neumann regular, local.

    is_vnr scans for x with a = a*a*x per element; is_local counts maximal
    ideals via the ideal machinery.
    """
    n = ring.order
    nonzero = np.arange(n) != ring.zero
    is_field = bool((ring.unit_mask | ~nonzero).all())
    is_reduced = not bool((ring.nilpotent_mask & nonzero).any())
    sq = ring.mul_table.diagonal()
    solvable = (ring.mul_table[sq] == np.arange(n, dtype=np.int32)[:, None]).any(axis=1)
    is_vnr = bool(solvable.all())
    from . import ideals  # deferred: ideals imports this module

    is_local = len(ideals.max_spectrum(ring)) == 1
    return RingPredicates(is_field=is_field, is_reduced=is_reduced, is_vnr=is_vnr, is_local=is_local)


def eventual_idempotents(ring: FiniteRing, elems: Sequence[int] | np.ndarray) -> np.ndarray:
    """For each s, the first idempotent power of s (exists in a finite ring)."""
    base = np.asarray(elems, dtype=np.int32)
    cur = base.copy()
    found = np.full(base.shape, -1, dtype=np.int32)
    for _ in range(2 * ring.order + 1):
        idem = ring.mul_table[cur, cur] == cur
        fresh = idem & (found < 0)
        found[fresh] = cur[fresh]
        if (found >= 0).all():
            break
        cur = ring.mul_table[cur, base]
    if (found < 0).any():
        raise SelfCheckError("power sequence produced no idempotent within bound")
    return found


def eventual_idempotent(ring: FiniteRing, s: int) -> int:
    if not 0 <= s < ring.order:
        raise ValueError(f"element index {s} out of range for order {ring.order}")
    return int(eventual_idempotents(ring, [s])[0])


class RingHom:
    """A unital ring homomorphism given as an index map, validated in full."""

    def __init__(self, source: FiniteRing, target: FiniteRing, mapping: Sequence[int] | np.ndarray):
        m = np.ascontiguousarray(np.asarray(mapping, dtype=np.int32))
        if m.shape != (source.order,):
            raise ValueError(f"mapping must have length {source.order}, got shape {m.shape}")
        if m.min() < 0 or m.max() >= target.order:
            raise ValueError("mapping image out of range for target ring")
        if int(m[source.zero]) != target.zero:
            raise HomLawError("zero preservation", (source.zero,))
        if int(m[source.one]) != target.one:
            raise HomLawError("unit preservation", (source.one,))
        bad = m[source.add_table] != target.add_table[m[:, None], m[None, :]]
        if bad.any():
            raise HomLawError("additivity", _first_witness(bad))
        bad = m[source.mul_table] != target.mul_table[m[:, None], m[None, :]]
        if bad.any():
            raise HomLawError("multiplicativity", _first_witness(bad))
        m.setflags(write=False)
        self.source = source
        self.target = target
        self.mapping = m

    def __call__(self, x: int) -> int:
        return int(self.mapping[x])

    def __repr__(self) -> str:
        return f"<RingHom {self.source.tag!r} -> {self.target.tag!r}>"

    @cached_property
    def image_mask(self) -> np.ndarray:
        mask = np.zeros(self.target.order, dtype=bool)
        mask[self.mapping] = True
        mask.setflags(write=False)
        return mask

    @cached_property
    def is_injective(self) -> bool:
        return int(self.image_mask.sum()) == self.source.order

    @cached_property
    def is_surjective(self) -> bool:
        return bool(self.image_mask.all())

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def injectivity_witness(self) -> tuple[int, int] | None:
        """A least pair of distinct elements with equal image, if any."""
        seen: dict[int, int] = {}
        for x, v in enumerate(self.mapping):
            v = int(v)
            if v in seen:
                return (seen[v], x)
            seen[v] = x
        return None

    def compose(self, inner: "RingHom") -> "RingHom":
        if inner.target is not self.source:
            raise ValueError("composition mismatch: inner target differs from outer source")
        return RingHom(inner.source, self.target, self.mapping[inner.mapping])

    def inverse(self) -> "RingHom":
        if not self.is_bijective:
            raise ValueError("only bijective homomorphisms invert")
        inv = np.empty(self.target.order, dtype=np.int32)
        inv[self.mapping] = np.arange(self.source.order, dtype=np.int32)
        return RingHom(self.target, self.source, inv)


def identity_hom(ring: FiniteRing) -> RingHom:
    return RingHom(ring, ring, np.arange(ring.order, dtype=np.int32))


def zmod(n: int, *, cap: int | None = None, seed: int = 0, tag: str | None = None) -> FiniteRing:
    """The ring of integers modulo n, n >= 2."""
    if n < 2:
        raise ValueError(f"modulus must be at least 2, got {n}")
    if n > order_cap(cap):
        raise CapExceeded(f"Z/{n} exceeds order cap {order_cap(cap)}")
    idx = np.arange(n, dtype=np.int64)
    add = (idx[:, None] + idx[None, :]) % n
    mul = (idx[:, None] * idx[None, :]) % n
    return FiniteRing(add, mul, tag or f"Z/{n}", cap=cap, seed=seed)


def _is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    # f monic; coefficients low degree first
    a = list(a)
    df = len(f) - 1
    while len(a) > df:
        lead = a[-1] % p
        if lead:
            shift = len(a) - 1 - df
            for i in range(df + 1):
                a[shift + i] = (a[shift + i] - lead * f[i]) % p
        a.pop()
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_is_zero(a: list[int]) -> bool:
    return all(c == 0 for c in a)


def _least_irreducible(p: int, k: int) -> list[int]:
    """Least monic irreducible of degree k over Z/p.

    "Least" means the smallest radix-p code of the non-leading coefficients,
    the same encoding element indices use, so x^3+x+1 (code 3) precedes
    x^3+x^2+1 (code 5) over Z/2. Irreducibility is brute force: no monic
    divisor of degree 1..k//2.
    """
    from itertools import product as iproduct

    for code in range(p**k):
        f = [(code // p**i) % p for i in range(k)] + [1]
        if f[0] == 0:
            continue  # divisible by x
        reducible = False
        for d in range(1, k // 2 + 1):
            for gt in iproduct(range(p), repeat=d):
                g = list(gt) + [1]
                if _poly_is_zero(_poly_mod(f, g, p)):
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            return f
    raise SelfCheckError(f"no irreducible of degree {k} over Z/{p} found")


def galois_field(p: int, k: int = 1, *, cap: int | None = None, seed: int = 0, tag: str | None = None) -> FiniteRing:
    """The field with p**k elements; see the module docstring for element codes.

    Multiplication is built from exp/log tables over a multiplicative
    generator; addition is digitwise modulo p.
    """
    if not _is_prime_int(p):
        raise ValueError(f"characteristic must be prime, got {p}")
    if k < 1:
        raise ValueError(f"extension degree must be at least 1, got {k}")
    n = p**k
    if n > order_cap(cap):
        raise CapExceeded(f"GF({n}) exceeds order cap {order_cap(cap)}")
    label = tag or f"GF({n})"
    if k == 1:
        return zmod(p, cap=cap, seed=seed, tag=label)

    f = _least_irreducible(p, k)

    def encode(poly: list[int]) -> int:
        return sum(c * p**i for i, c in enumerate(poly))

    # exp/log through the least multiplicative generator
    exp: list[int] | None = None
    for g in range(2, n):
        gpoly = [(g // p**i) % p for i in range(k)]
        chain = [1]
        cur = [1]
        for _ in range(n - 1):
            cur = _poly_mod(_poly_mul(cur, gpoly, p), f, p)
            code = encode(cur)
            if code == 1:
                break
            chain.append(code)
        if len(chain) == n - 1:
            exp = chain
            break
    if exp is None:
        raise SelfCheckError(f"no multiplicative generator found for GF({n})")
    log = np.zeros(n, dtype=np.int64)
    log[np.asarray(exp, dtype=np.int64)] = np.arange(n - 1, dtype=np.int64)

    digits = np.zeros((n, k), dtype=np.int64)
    codes = np.arange(n, dtype=np.int64)
    for i in range(k):
        digits[:, i] = (codes // p**i) % p
    sums = (digits[:, None, :] + digits[None, :, :]) % p
    weights = p ** np.arange(k, dtype=np.int64)
    add = (sums * weights).sum(axis=2)

    expa = np.asarray(exp, dtype=np.int64)
    mul = np.zeros((n, n), dtype=np.int64)
    nz = np.arange(1, n, dtype=np.int64)
    mul[np.ix_(nz, nz)] = expa[(log[nz][:, None] + log[nz][None, :]) % (n - 1)]
    return FiniteRing(add, mul, label, cap=cap, seed=seed)


def pair_encode(i: int, j: int, right_order: int) -> int:
    return i * right_order + j


def pair_decode(idx: int, right_order: int) -> tuple[int, int]:
    return idx // right_order, idx % right_order


def _wrap_tag(tag: str) -> str:
    return f"({tag})" if " x " in tag else tag


def product(
    left: FiniteRing,
    right: FiniteRing,
    *,
    cap: int | None = None,
    seed: int = 0,
    tag: str | None = None,
) -> tuple[FiniteRing, RingHom, RingHom]:
    """Direct product with componentwise operations; returns (ring, proj_left, proj_right)."""
    n = left.order * right.order
    if n > order_cap(cap):
        raise CapExceeded(f"product of order {n} exceeds order cap {order_cap(cap)}")
    i = np.repeat(np.arange(left.order, dtype=np.int32), right.order)
    j = np.tile(np.arange(right.order, dtype=np.int32), left.order)
    add = left.add_table[i[:, None], i[None, :]].astype(np.int64) * right.order + right.add_table[j[:, None], j[None, :]]
    mul = left.mul_table[i[:, None], i[None, :]].astype(np.int64) * right.order + right.mul_table[j[:, None], j[None, :]]
    ring = FiniteRing(add, mul, tag or f"{_wrap_tag(left.tag)} x {_wrap_tag(right.tag)}", cap=cap, seed=seed)
    return ring, RingHom(ring, left, i), RingHom(ring, right, j)


def from_tables(
    add_table: Sequence[Sequence[int]] | np.ndarray,
    mul_table: Sequence[Sequence[int]] | np.ndarray,
    *,
    tag: str = "table-ring",
    cap: int | None = None,
    seed: int = 0,
) -> FiniteRing:
    """Build a ring from raw tables; raises RingAxiomError listing all violations."""
    return FiniteRing(add_table, mul_table, tag, cap=cap, seed=seed)


def adjoin_element_mask(ring: FiniteRing, base_mask: np.ndarray, t: int) -> np.ndarray:
    """Membership mask of the least subring containing a closed base and t.

    base_mask must already be closed under + and *. The result is the span
    base + base*t + base*t^2 + ..., which is the generated subring and
    stabilizes as soon as one power layer lands entirely inside.
    """
    mask = base_mask.copy()
    if mask[t]:
        return mask
    base_members = np.flatnonzero(base_mask)
    mul = ring.mul_table
    add = ring.add_table
    p = t
    while True:
        layer = np.unique(mul[p, base_members])
        if mask[layer].all():
            break
        members = np.flatnonzero(mask)
        grown = np.zeros_like(mask)
        grown[add[np.ix_(members, layer)].ravel()] = True
        mask = grown
        p = int(mul[p, t])
    return mask
