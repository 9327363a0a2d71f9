"""Catalog verification suite: run every verifier over a list of ring
expressions and emit one deterministic JSON report.

Report schema (key order fixed for golden-file comparison):

    {engine_version, config_echo,
     entries: [{expr, theorem, verdict: PASS|FAIL|SKIPPED,
                witnesses, counterexample, millis}]}

Entries appear in catalog x verifier order. A verifier that cannot run
because a construction would exceed the order cap records SKIPPED with the
reason; any unexpected exception records FAIL with the error string. millis
is always serialized as 0 so reports are byte-identical across runs and
worker counts; wall-clock timing is printed separately by the CLI.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import CapExceeded, FiniteRing, order_cap, ring_predicates
from .exprs import build_ring, parse_ring_expr
from .theorems import (
    EntryContext,
    VerdictReport,
    catalog_minimal_extensions,
    classify_vnr_extension,
    verify_conductor_prime,
    verify_crucial_ideal,
    verify_diagonal_theorem,
    verify_idealization_results,
    verify_infrastructure,
    verify_minimality_oracle,
    verify_unit_criterion,
    vnr_minimal_extension_candidates,
)

__all__ = [
    "SuiteConfig",
    "THEOREM_IDS",
    "default_catalog",
    "exit_code_for",
    "render_report_csv",
    "render_report_json",
    "run_suite",
]

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"

THEOREM_IDS = (
    "unit-criterion",
    "diagonal-minimality",
    "idealization-subrings",
    "vnr-classification",
    "minimal-extension-conductors",
    "minimality-oracle",
    "infrastructure",
)


def default_catalog() -> tuple[str, ...]:
    """The built-in catalog: cyclic rings, small fields, their pairwise
    products of order at most 36, and idealizations of order at most 64."""
    base = [f"Z/{n}" for n in range(2, 13)]
    base += [f"GF({q})" for q in (2, 3, 4, 5, 7, 8, 9)]

    def order_of(expr: str) -> int:
        ring_order = 1
        tree = parse_ring_expr(expr)
        stack = [tree]
        while stack:
            node = stack.pop()
            if hasattr(node, "n"):
                ring_order *= node.n
            elif hasattr(node, "p"):
                ring_order *= node.p**node.k
            else:
                stack.extend([node.left, node.right])
        return ring_order

    entries = list(base)
    for i, left in enumerate(base):
        for right in base[i:]:
            if order_of(left) * order_of(right) <= 36:
                entries.append(f"{left} x {right}")
    for expr in base:
        if order_of(expr) ** 2 <= 64:
            entries.append(f"Id({expr}; 0)")
    # cyclic quotient modules: Id(Z/n; d) of total order n * |Z/n / <d>| <= 64
    for n, d in ((4, 2), (6, 2), (6, 3), (8, 2), (8, 4), (9, 3), (10, 2), (12, 2), (12, 4)):
        entries.append(f"Id(Z/{n}; {d})")
    return tuple(entries)


@dataclass(frozen=True)
class SuiteConfig:
    """Configuration echoed into the report (except jobs, which cannot
    change any verdict, only scheduling)."""

    order_cap: int | None = None
    iso_cap: int = 64
    seed: int = 0
    catalog: tuple[str, ...] = field(default_factory=default_catalog)
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.order_cap is not None and self.order_cap < 2:
            raise ValueError("order cap must be at least 2")
        if self.iso_cap < 1:
            raise ValueError("iso cap must be positive")
        if not self.catalog:
            raise ValueError("catalog must be nonempty")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        object.__setattr__(self, "catalog", tuple(self.catalog))


@dataclass(frozen=True)
class _Skipped:
    reason: str


def _run_vnr_classification(ring: FiniteRing, ctx: EntryContext):
    if not ring_predicates(ring).is_vnr:
        return _Skipped("ring is not von Neumann regular")
    rows: list[dict] = []
    skipped: list[dict] = []
    failures: list[dict] = []
    for i, cand in enumerate(vnr_minimal_extension_candidates(ring, cap=ctx.cap, seed=ctx.seed)):
        name = f"{cand.kind}-{i}"
        ideal_members = [int(x) for x in cand.max_ideal.members()]
        if cand.ext is None:
            skipped.append({"candidate": name, "max_ideal_members": ideal_members, "reason": cand.skip_reason})
            continue
        label, report = classify_vnr_extension(cand.ext, iso_cap=ctx.iso_cap)
        agree = (
            label is not None
            and label.kind == cand.kind
            and label.max_ideal == cand.max_ideal
        )
        row = {
            "candidate": name,
            "max_ideal_members": ideal_members,
            "big_order": cand.ext.big.order,
            "classified_kind": label.kind if label else None,
            "witness_q": label.q if label else None,
            "passed": bool(report.passed and agree),
        }
        rows.append(row)
        if not row["passed"]:
            failures.append({"candidate": row, "detail": report.counterexample})
    if not rows:
        return _Skipped("no candidate fits the order cap")
    witnesses = {"candidates": rows, "skipped": skipped}
    return VerdictReport("vnr-classification", ring.tag, not failures, witnesses, {"failures": failures} if failures else None)


def _run_conductor_battery(ring: FiniteRing, ctx: EntryContext):
    exts = catalog_minimal_extensions(ctx)
    if not exts:
        return _Skipped("no minimal extension fits the order cap")
    rows: list[dict] = []
    failures: list[dict] = []
    for desc, ext in exts:
        rep_prime = verify_conductor_prime(ext)
        rep_crucial = verify_crucial_ideal(ext)
        row = {
            "extension": desc,
            "big_order": ext.big.order,
            "conductor_members": rep_prime.witnesses["conductor_members"],
            "conductor_prime": bool(rep_prime.passed),
            "crucial_members": rep_crucial.witnesses.get("crucial_members"),
            "crucial_equals_conductor": bool(rep_crucial.passed),
        }
        rows.append(row)
        if not (rep_prime.passed and rep_crucial.passed):
            failures.append(
                {
                    "extension": desc,
                    "conductor_detail": rep_prime.counterexample,
                    "crucial_detail": rep_crucial.counterexample,
                }
            )
    witnesses = {"extensions": rows, "count": len(rows)}
    return VerdictReport("minimal-extension-conductors", ring.tag, not failures, witnesses, {"failures": failures} if failures else None)


_RUNNERS = (
    ("unit-criterion", lambda ring, ctx: verify_unit_criterion(ring, ctx=ctx)),
    ("diagonal-minimality", lambda ring, ctx: verify_diagonal_theorem(ring, ctx=ctx)),
    ("idealization-subrings", lambda ring, ctx: verify_idealization_results(ring, ctx=ctx)),
    ("vnr-classification", _run_vnr_classification),
    ("minimal-extension-conductors", _run_conductor_battery),
    ("minimality-oracle", lambda ring, ctx: verify_minimality_oracle(ring, ctx=ctx)),
    ("infrastructure", lambda ring, ctx: verify_infrastructure(ring, ctx=ctx)),
)

assert tuple(name for name, _ in _RUNNERS) == THEOREM_IDS


def _entry(expr: str, theorem: str, verdict: str, witnesses: dict, counterexample: dict | None) -> dict:
    return {
        "expr": expr,
        "theorem": theorem,
        "verdict": verdict,
        "witnesses": _jsonable(witnesses),
        "counterexample": _jsonable(counterexample),
        "millis": 0,
    }


def _jsonable(value):
    """Coerce numpy scalars/arrays and tuples to plain JSON types."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    return value


def run_entry(expr_text: str, config: SuiteConfig) -> list[dict]:
    """All verifier entries for one catalog expression, in verifier order.

    The entry's expr field is the catalog text verbatim; the ring tag inside
    witnesses uses the canonical printed form.
    """
    expr_text = expr_text.strip()
    try:
        ring = build_ring(expr_text, cap=config.order_cap, seed=config.seed)
    except CapExceeded as exc:
        return [_entry(expr_text, name, SKIPPED, {"reason": str(exc)}, None) for name in THEOREM_IDS]
    except Exception as exc:
        detail = {"error": f"{type(exc).__name__}: {exc}"}
        return [_entry(expr_text, name, FAIL, {}, detail) for name in THEOREM_IDS]
    ctx = EntryContext(ring, cap=config.order_cap, iso_cap=config.iso_cap, seed=config.seed)
    out = []
    for name, runner in _RUNNERS:
        try:
            result = runner(ring, ctx)
        except CapExceeded as exc:
            out.append(_entry(expr_text, name, SKIPPED, {"reason": str(exc)}, None))
            continue
        except Exception as exc:
            out.append(_entry(expr_text, name, FAIL, {}, {"error": f"{type(exc).__name__}: {exc}"}))
            continue
        if isinstance(result, _Skipped):
            out.append(_entry(expr_text, name, SKIPPED, {"reason": result.reason}, None))
        else:
            verdict = PASS if result.passed else FAIL
            out.append(_entry(expr_text, name, verdict, result.witnesses, result.counterexample))
    return out


def run_suite(config: SuiteConfig) -> dict:
    """Run every verifier over the catalog; returns the report document.

    The report is independent of the worker count: entries are computed per
    expression and merged back in catalog order.
    """
    from . import __version__

    resolved_cap = order_cap(config.order_cap)
    if config.jobs == 1 or len(config.catalog) == 1:
        per_expr = [run_entry(expr, config) for expr in config.catalog]
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            per_expr = list(pool.map(run_entry, config.catalog, [config] * len(config.catalog)))
    entries = [entry for group in per_expr for entry in group]
    return {
        "engine_version": __version__,
        "config_echo": {
            "order_cap": resolved_cap,
            "iso_cap": config.iso_cap,
            "seed": config.seed,
            "catalog": list(config.catalog),
        },
        "entries": entries,
    }


def exit_code_for(report: dict) -> int:
    """0 iff no FAIL entries; otherwise the failure count (clamped to 1..200)."""
    failures = sum(1 for e in report["entries"] if e["verdict"] == FAIL)
    return 0 if failures == 0 else min(failures, 200)


def render_report_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def render_report_csv(report: dict) -> str:
    """Delimited companion to the JSON report: one row per entry."""
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["expr", "theorem", "verdict", "millis"])
    for entry in report["entries"]:
        writer.writerow([entry["expr"], entry["theorem"], entry["verdict"], entry["millis"]])
    return buf.getvalue()
