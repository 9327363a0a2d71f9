"""Command-line surface of the engine.

Commands:

    finring ring info EXPR
    finring ext check EXPR --kind diag|id --a A --b B
    finring ext conductor EXPR --kind diag|id --a A --b B
    finring ext crucial EXPR --kind diag|id --a A --b B
    finring classify EXPR
    finring verify [--catalog FILE] [--out FILE] [--jobs N] [--max-order N]
                   [--iso-cap N] [--seed N] [--no-csv] [--no-fig]
    finring lattice EXPR --kind diag|id|subfield [--a A --b B] [--base EXPR]
                   --dot FILE [--fig FILE]

All commands print JSON to stdout except verify with --out (writes the
report file plus a CSV and a verdict-grid PNG alongside) and lattice
(writes DOT, and a PNG with --fig). FINRING_MAX_ORDER sets the order cap;
an explicit --max-order beats the environment.

Exit codes: 0 success; verify returns the FAIL-entry count; 1 when a single
check reports a violation; 2 for usage, parse, or construction errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .core import CapExceeded, FiniteRing, ring_predicates
from . import ideals
from .exprs import ExprSyntaxError, build_ring
from .extensions import (
    Extension,
    adjoined_extension,
    canonical_idealization_extension,
    conductor,
    diagonal_base_extension,
    is_minimal,
)
from .localstructure import CrucialIdealError, crucial_maximal_ideal, local_decomposition
from .suite import (
    SuiteConfig,
    _jsonable,
    default_catalog,
    exit_code_for,
    render_report_csv,
    render_report_json,
    run_suite,
)
from .theorems import classify_vnr_extension, find_field_embedding, vnr_minimal_extension_candidates

__all__ = ["main"]


def _emit(payload: dict) -> None:
    print(json.dumps(_jsonable(payload), indent=2))


def _fail(message: str) -> int:
    print(json.dumps({"error": message}, indent=2), file=sys.stderr)
    return 2


def _build(expr: str, args: argparse.Namespace) -> FiniteRing:
    return build_ring(expr, cap=args.max_order, seed=args.seed)


def _family_extension(ring: FiniteRing, kind: str, a: int, b: int, *, cap: int | None, seed: int) -> tuple[Extension, Extension]:
    """(base embedding, adjoined extension) for the diag / id families."""
    if kind == "diag":
        base = diagonal_base_extension(ring, cap=cap, seed=seed)
    else:
        base = canonical_idealization_extension(ring, cap=cap, seed=seed)
    n = ring.order
    for name, v in (("a", a), ("b", b)):
        if not 0 <= v < n:
            raise ValueError(f"--{name} {v} out of range for ring order {n}")
    sub = adjoined_extension(base, [a * n + b], tag=f"{ring.tag} with ({a},{b}) adjoined")
    return base, sub


def _cmd_ring_info(args: argparse.Namespace) -> int:
    ring = _build(args.expr, args)
    preds = ring_predicates(ring)
    spectrum = ideals.max_spectrum(ring)
    decomp = local_decomposition(ring)
    _emit(
        {
            "expr": args.expr,
            "tag": ring.tag,
            "order": ring.order,
            "zero": ring.zero,
            "one": ring.one,
            "characteristic": ring.characteristic,
            "validation_mode": ring.validation_mode,
            "unit_count": int(ring.unit_mask.sum()),
            "idempotent_count": int(ring.idempotent_mask.sum()),
            "nilpotent_count": int(ring.nilpotent_mask.sum()),
            "predicates": {
                "is_field": preds.is_field,
                "is_reduced": preds.is_reduced,
                "is_vnr": preds.is_vnr,
                "is_local": preds.is_local,
            },
            "maximal_ideals": [list(m.members()) for m in spectrum],
            "local_factor_orders": [f.ring.order for f in decomp.factors],
        }
    )
    return 0


def _cmd_ext_check(args: argparse.Namespace) -> int:
    ring = _build(args.expr, args)
    base, sub = _family_extension(ring, args.kind, args.a, args.b, cap=args.max_order, seed=args.seed)
    whole = not sub.is_proper
    minimal = None if whole else is_minimal(sub)
    _emit(
        {
            "expr": args.expr,
            "kind": args.kind,
            "pair": [args.a, args.b],
            "big_order": base.big.order,
            "base_order": ring.order,
            "subring_order": sub.small.order,
            "subring_is_whole": whole,
            "is_minimal": minimal,
        }
    )
    return 0


def _cmd_ext_conductor(args: argparse.Namespace) -> int:
    ring = _build(args.expr, args)
    _, sub = _family_extension(ring, args.kind, args.a, args.b, cap=args.max_order, seed=args.seed)
    if not sub.is_proper:
        return _fail("the adjoined subring is the whole ring; no proper extension to inspect")
    cond, mask_t = conductor(sub)
    _emit(
        {
            "expr": args.expr,
            "kind": args.kind,
            "pair": [args.a, args.b],
            "subring_order": sub.small.order,
            "conductor_members": list(cond.members()),
            "conductor_size_in_big_ring": int(mask_t.sum()),
            "is_prime": ideals.is_prime(sub.small, cond),
            "is_maximal": ideals.is_maximal(sub.small, cond),
        }
    )
    return 0


def _cmd_ext_crucial(args: argparse.Namespace) -> int:
    ring = _build(args.expr, args)
    _, sub = _family_extension(ring, args.kind, args.a, args.b, cap=args.max_order, seed=args.seed)
    if not sub.is_proper:
        return _fail("the adjoined subring is the whole ring; no proper extension to inspect")
    if not is_minimal(sub):
        return _fail("extension is not minimal; the crucial ideal is not defined")
    try:
        crucial, records = crucial_maximal_ideal(sub)
    except CrucialIdealError as exc:
        _emit(
            {
                "expr": args.expr,
                "error": str(exc),
                "localization_table": [
                    {
                        "prime_members": list(r.prime_members),
                        "small_local_order": r.small_local_order,
                        "big_local_order": r.big_local_order,
                        "is_isomorphism": r.is_isomorphism,
                    }
                    for r in exc.records
                ],
            }
        )
        return 1
    cond, _ = conductor(sub)
    _emit(
        {
            "expr": args.expr,
            "kind": args.kind,
            "pair": [args.a, args.b],
            "crucial_members": list(crucial.members()),
            "conductor_members": list(cond.members()),
            "crucial_equals_conductor": crucial == cond,
            "localization_table": [
                {
                    "prime_members": list(r.prime_members),
                    "small_local_order": r.small_local_order,
                    "big_local_order": r.big_local_order,
                    "is_isomorphism": r.is_isomorphism,
                }
                for r in records
            ],
        }
    )
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    ring = _build(args.expr, args)
    if not ring_predicates(ring).is_vnr:
        return _fail(f"{ring.tag} is not von Neumann regular; classification does not apply")
    rows = []
    any_fail = False
    for i, cand in enumerate(vnr_minimal_extension_candidates(ring, cap=args.max_order, seed=args.seed)):
        if cand.ext is None:
            rows.append(
                {
                    "candidate": f"{cand.kind}-{i}",
                    "max_ideal_members": list(cand.max_ideal.members()),
                    "skipped": cand.skip_reason,
                }
            )
            continue
        label, report = classify_vnr_extension(cand.ext, iso_cap=args.iso_cap)
        ok = report.passed and label is not None and label.kind == cand.kind
        any_fail |= not ok
        rows.append(
            {
                "candidate": f"{cand.kind}-{i}",
                "max_ideal_members": list(cand.max_ideal.members()),
                "big_order": cand.ext.big.order,
                "classified_kind": label.kind if label else None,
                "witness_q": label.q if label else None,
                "passed": ok,
                "counterexample": report.counterexample,
            }
        )
    _emit({"expr": args.expr, "candidates": rows})
    return 1 if any_fail else 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.catalog:
        lines = Path(args.catalog).read_text().splitlines()
        catalog = tuple(s.strip() for s in lines if s.strip() and not s.strip().startswith("#"))
        if not catalog:
            return _fail(f"catalog file {args.catalog} contains no expressions")
    else:
        catalog = default_catalog()
    config = SuiteConfig(
        order_cap=args.max_order,
        iso_cap=args.iso_cap,
        seed=args.seed,
        catalog=catalog,
        jobs=args.jobs,
    )
    started = time.time()
    report = run_suite(config)
    elapsed = time.time() - started
    text = render_report_json(report)
    counts = {"PASS": 0, "FAIL": 0, "SKIPPED": 0}
    for entry in report["entries"]:
        counts[entry["verdict"]] += 1
    if args.out:
        out = Path(args.out)
        out.write_text(text)
        written = [str(out)]
        if not args.no_csv:
            csv_path = out.with_suffix(".csv")
            csv_path.write_text(render_report_csv(report))
            written.append(str(csv_path))
        if not args.no_fig:
            from .figures import render_verdict_grid

            fig_path = out.with_suffix(".png")
            render_verdict_grid(report, fig_path)
            written.append(str(fig_path))
        print(
            f"{len(report['entries'])} entries: {counts['PASS']} pass, "
            f"{counts['FAIL']} fail, {counts['SKIPPED']} skipped "
            f"in {elapsed:.1f}s -> {', '.join(written)}",
            file=sys.stderr,
        )
    else:
        sys.stdout.write(text)
        print(
            f"{len(report['entries'])} entries: {counts['PASS']} pass, "
            f"{counts['FAIL']} fail, {counts['SKIPPED']} skipped in {elapsed:.1f}s",
            file=sys.stderr,
        )
    return exit_code_for(report)


def _cmd_lattice(args: argparse.Namespace) -> int:
    from .lattice import export_lattice

    ring = _build(args.expr, args)
    if args.kind == "subfield":
        if not args.base:
            return _fail("--kind subfield requires --base EXPR")
        small = _build(args.base, args)
        if not ring_predicates(small).is_field or not ring_predicates(ring).is_field:
            return _fail("subfield lattices need a field and a base field")
        emb = find_field_embedding(small, ring)
        if emb is None:
            return _fail(f"{small.tag} does not embed into {ring.tag}")
        ext = Extension(small, ring, emb)
    else:
        _, ext = _family_extension(ring, args.kind, args.a, args.b, cap=args.max_order, seed=args.seed)
    text = export_lattice(ext, args.dot)
    messages = [f"wrote {args.dot}"]
    if args.fig:
        from .figures import render_lattice_figure

        render_lattice_figure(ext, args.fig)
        messages.append(f"wrote {args.fig}")
    nodes = text.count("[label=")
    print(f"{nodes} subrings; " + "; ".join(messages), file=sys.stderr)
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-order", type=int, default=None, help="order cap (beats FINRING_MAX_ORDER)")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled axiom checks")


def _add_pair(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kind", choices=("diag", "id"), required=True, help="diag: R x R over the diagonal; id: R(+)R over (r, 0)")
    parser.add_argument("--a", type=int, default=0, help="first component of the adjoined pair")
    parser.add_argument("--b", type=int, default=0, help="second component of the adjoined pair")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finring", description="exact verification engine for finite commutative rings")
    sub = parser.add_subparsers(dest="command", required=True)

    ring_p = sub.add_parser("ring", help="inspect a ring")
    ring_sub = ring_p.add_subparsers(dest="subcommand", required=True)
    info_p = ring_sub.add_parser("info", help="orders, units, predicates, maximal ideals")
    info_p.add_argument("expr")
    _add_common(info_p)
    info_p.set_defaults(func=_cmd_ring_info)

    ext_p = sub.add_parser("ext", help="inspect one extension from the diag / id families")
    ext_sub = ext_p.add_subparsers(dest="subcommand", required=True)
    for name, func in (("check", _cmd_ext_check), ("conductor", _cmd_ext_conductor), ("crucial", _cmd_ext_crucial)):
        p = ext_sub.add_parser(name)
        p.add_argument("expr")
        _add_pair(p)
        _add_common(p)
        p.set_defaults(func=func)

    cls_p = sub.add_parser("classify", help="build and classify the minimal-extension candidates of a regular ring")
    cls_p.add_argument("expr")
    cls_p.add_argument("--iso-cap", type=int, default=64, help="order cap for isomorphism searches")
    _add_common(cls_p)
    cls_p.set_defaults(func=_cmd_classify)

    ver_p = sub.add_parser("verify", help="run every verifier over a catalog and write a report")
    ver_p.add_argument("--catalog", help="file with one ring expression per line (# comments allowed)")
    ver_p.add_argument("--out", help="report path; also writes .csv and .png siblings")
    ver_p.add_argument("--jobs", type=int, default=1, help="parallel worker count")
    ver_p.add_argument("--iso-cap", type=int, default=64, help="order cap for isomorphism searches")
    ver_p.add_argument("--no-csv", action="store_true", help="skip the CSV sidecar")
    ver_p.add_argument("--no-fig", action="store_true", help="skip the verdict-grid PNG")
    _add_common(ver_p)
    ver_p.set_defaults(func=_cmd_verify)

    lat_p = sub.add_parser("lattice", help="export the intermediate-subring lattice as DOT")
    lat_p.add_argument("expr")
    lat_p.add_argument("--kind", choices=("diag", "id", "subfield"), required=True)
    lat_p.add_argument("--a", type=int, default=0)
    lat_p.add_argument("--b", type=int, default=0)
    lat_p.add_argument("--base", help="base field expression for --kind subfield")
    lat_p.add_argument("--dot", required=True, help="output DOT path")
    lat_p.add_argument("--fig", help="optional PNG rendering path")
    _add_common(lat_p)
    lat_p.set_defaults(func=_cmd_lattice)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ExprSyntaxError as exc:
        return _fail(f"expression error: {exc}")
    except CapExceeded as exc:
        return _fail(str(exc))
    except (ValueError, OSError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
