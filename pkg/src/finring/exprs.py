"""Ring-expression language: parsing, canonical printing, construction.

Grammar (whitespace free between tokens):

    expr    := term ("x" term)*
    term    := primary ("/<" INT ("," INT)* ">")*
    primary := "Z" "/" INT
             | "GF" "(" INT ["," INT] ")"
             | "Id" "(" expr ";" INT ("," INT)* ")"
             | "Diag" "(" expr ")"
             | "(" expr ")"

Products associate left. Integers in quotient and idealization positions are
element indices of the operand ring. GF with one argument accepts a prime
power and is normalized to GF(p, k) at parse time. Canonical printing
round-trips: parse(format(t)) == t for every tree t.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .core import FiniteRing, galois_field, product, zmod, _is_prime_int
from . import ideals

__all__ = [
    "Diag",
    "ExprSyntaxError",
    "GF",
    "Idealization",
    "Prod",
    "Quot",
    "RingExpr",
    "ZMod",
    "build_ring",
    "format_ring_expr",
    "parse_ring_expr",
]


class ExprSyntaxError(ValueError):
    """Parse failure, carrying the offset into the source text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


@dataclass(frozen=True)
class ZMod:
    n: int


@dataclass(frozen=True)
class GF:
    p: int
    k: int


@dataclass(frozen=True)
class Prod:
    left: "RingExpr"
    right: "RingExpr"


@dataclass(frozen=True)
class Quot:
    operand: "RingExpr"
    gens: tuple[int, ...]


@dataclass(frozen=True)
class Idealization:
    operand: "RingExpr"
    gens: tuple[int, ...]


@dataclass(frozen=True)
class Diag:
    operand: "RingExpr"


RingExpr = Union[ZMod, GF, Prod, Quot, Idealization, Diag]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z]+)|(?P<sym>[/()<>,;]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ExprSyntaxError(f"unexpected character {rest[0]!r}", pos)
        if m.lastgroup == "int":
            tokens.append(("int", m.group("int"), m.start("int")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("sym", m.group("sym"), m.start("sym")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, ahead: int = 0) -> tuple[str, str, int] | None:
        j = self.i + ahead
        return self.tokens[j] if j < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def expect(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError(
                f"expected {value or kind}, found end of input", len(self.text)
            )
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise ExprSyntaxError(f"expected {value or kind}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> RingExpr:
        tree = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ExprSyntaxError(f"trailing input {tok[1]!r}", tok[2])
        return tree

    def expr(self) -> RingExpr:
        tree = self.term()
        while True:
            tok = self.peek()
            if tok is not None and tok[0] == "name" and tok[1] == "x":
                self.next()
                tree = Prod(tree, self.term())
            else:
                return tree

    def term(self) -> RingExpr:
        tree = self.primary()
        while True:
            tok, after = self.peek(), self.peek(1)
            if (
                tok is not None
                and tok[:2] == ("sym", "/")
                and after is not None
                and after[:2] == ("sym", "<")
            ):
                self.next()
                self.next()
                gens = self.int_list()
                self.expect("sym", ">")
                tree = Quot(tree, gens)
            else:
                return tree

    def int_list(self) -> tuple[int, ...]:
        out = [int(self.expect("int")[1])]
        while True:
            tok = self.peek()
            if tok is not None and tok[:2] == ("sym", ","):
                self.next()
                out.append(int(self.expect("int")[1]))
            else:
                return tuple(out)

    def primary(self) -> RingExpr:
        tok = self.next()
        if tok[:2] == ("sym", "("):
            tree = self.expr()
            self.expect("sym", ")")
            return tree
        if tok[0] != "name":
            raise ExprSyntaxError(f"expected a ring constructor, found {tok[1]!r}", tok[2])
        name = tok[1]
        if name == "Z":
            self.expect("sym", "/")
            return ZMod(int(self.expect("int")[1]))
        if name == "GF":
            self.expect("sym", "(")
            first = int(self.expect("int")[1])
            nxt = self.peek()
            if nxt is not None and nxt[:2] == ("sym", ","):
                self.next()
                k = int(self.expect("int")[1])
                self.expect("sym", ")")
                p = first
            else:
                self.expect("sym", ")")
                p, k = _split_prime_power(first, tok[2])
            if not _is_prime_int(p):
                raise ExprSyntaxError(f"GF characteristic {p} is not prime", tok[2])
            if k < 1:
                raise ExprSyntaxError("GF degree must be at least 1", tok[2])
            return GF(p, k)
        if name == "Id":
            self.expect("sym", "(")
            inner = self.expr()
            self.expect("sym", ";")
            gens = self.int_list()
            self.expect("sym", ")")
            return Idealization(inner, gens)
        if name == "Diag":
            self.expect("sym", "(")
            inner = self.expr()
            self.expect("sym", ")")
            return Diag(inner)
        raise ExprSyntaxError(f"unknown constructor {name!r}", tok[2])


def _split_prime_power(q: int, pos: int) -> tuple[int, int]:
    if q < 2:
        raise ExprSyntaxError(f"GF order must be at least 2, got {q}", pos)
    p = 2
    while q % p:
        p += 1
        if p * p > q:
            p = q
            break
    k = 0
    rest = q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise ExprSyntaxError(f"GF order {q} is not a prime power", pos)
    return p, k


def parse_ring_expr(text: str) -> RingExpr:
    """Parse the expression grammar; raises ExprSyntaxError with an offset."""
    return _Parser(text).parse()


def format_ring_expr(expr: RingExpr) -> str:
    """Canonical text of a tree; parse(format(t)) == t."""
    if isinstance(expr, ZMod):
        return f"Z/{expr.n}"
    if isinstance(expr, GF):
        return f"GF({expr.p})" if expr.k == 1 else f"GF({expr.p},{expr.k})"
    if isinstance(expr, Prod):
        left = format_ring_expr(expr.left)
        right = format_ring_expr(expr.right)
        if isinstance(expr.right, Prod):
            right = f"({right})"
        return f"{left} x {right}"
    if isinstance(expr, Quot):
        inner = format_ring_expr(expr.operand)
        if isinstance(expr.operand, Prod):
            inner = f"({inner})"
        return f"{inner}/<{','.join(map(str, expr.gens))}>"
    if isinstance(expr, Idealization):
        return f"Id({format_ring_expr(expr.operand)}; {','.join(map(str, expr.gens))})"
    if isinstance(expr, Diag):
        return f"Diag({format_ring_expr(expr.operand)})"
    raise TypeError(f"not a ring expression: {expr!r}")


def build_ring(
    expr: RingExpr | str,
    *,
    cap: int | None = None,
    seed: int = 0,
) -> FiniteRing:
    """Construct the table ring an expression denotes.

    Tags are the canonical printed form of each subtree, so reports show
    reparsable provenance.
    """
    if isinstance(expr, str):
        expr = parse_ring_expr(expr)
    tag = format_ring_expr(expr)
    if isinstance(expr, ZMod):
        return zmod(expr.n, cap=cap, seed=seed, tag=tag)
    if isinstance(expr, GF):
        return galois_field(expr.p, expr.k, cap=cap, seed=seed, tag=tag)
    if isinstance(expr, Prod):
        left = build_ring(expr.left, cap=cap, seed=seed)
        right = build_ring(expr.right, cap=cap, seed=seed)
        ring, _, _ = product(left, right, cap=cap, seed=seed, tag=tag)
        return ring
    if isinstance(expr, Quot):
        operand = build_ring(expr.operand, cap=cap, seed=seed)
        _check_indices(expr.gens, operand)
        ideal = ideals.ideal_generated(operand, list(expr.gens))
        ring, _ = ideals.quotient(operand, ideal, tag=tag)
        return ring
    if isinstance(expr, Idealization):
        operand = build_ring(expr.operand, cap=cap, seed=seed)
        _check_indices(expr.gens, operand)
        spec = ideals.CyclicModuleSpec(operand, ideals.ideal_generated(operand, list(expr.gens)))
        ring, _ = ideals.idealization(operand, spec, cap=cap, seed=seed, tag=tag)
        return ring
    if isinstance(expr, Diag):
        operand = build_ring(expr.operand, cap=cap, seed=seed)
        ring, _, _ = product(operand, operand, cap=cap, seed=seed, tag=tag)
        return ring
    raise TypeError(f"not a ring expression: {expr!r}")


def _check_indices(gens: tuple[int, ...], ring: FiniteRing) -> None:
    for g in gens:
        if not 0 <= g < ring.order:
            raise ValueError(
                f"generator index {g} out of range for {ring.tag!r} of order {ring.order}"
            )
