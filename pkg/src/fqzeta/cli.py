"""Command line interface.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 input error,
3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from . import hodge as H
from .catalog import CATALOG, InputError, VarietyInput, get_entry
from .congruence import ReportOptions, full_report
from .counting import BudgetExceeded, count_tower
from .ff import FieldError
from .poly import PolyError
from .zeta import ZetaError, newton_polygon, pade_reconstruct, series_from_counts

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _load_target(args) -> VarietyInput:
    if args.input:
        try:
            with open(args.input) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from exc
        entry = VarietyInput.from_dict(doc)
    elif args.target:
        entry = get_entry(args.target)
    else:
        raise InputError("give a catalog entry name or --input FILE")
    entry = entry.with_overrides(p=args.p, d=args.d, S=args.S, budget=args.budget)
    entry.validate()
    return entry


def _workers(args) -> int:
    return args.workers if args.workers else (os.cpu_count() or 1)


def cmd_count(args) -> int:
    entry = _load_target(args)
    counts = count_tower(entry.system(), entry.p, entry.d, entry.S, workers=_workers(args),
                         budget=entry.budget)
    rows = [{"s": s, "q_s": entry.q**s, "N": N, "complement": U}
            for s, (N, U) in enumerate(zip(counts.counts, counts.complement_counts), start=1)]
    if args.json:
        print(_dump({"variety": entry.name, "n": entry.n, "p": entry.p, "d": entry.d, "levels": rows}))
    else:
        print(f"{entry.name}: n = {entry.n}, q = {entry.q}")
        print(f"{'s':>3} {'q^s':>10} {'N_s':>14} {'|P^n|-N_s':>14}")
        for r in rows:
            print(f"{r['s']:>3} {r['q_s']:>10} {r['N']:>14} {r['complement']:>14}")
    return EXIT_OK


def _default_degrees(entry: VarietyInput) -> tuple[int, int]:
    system = entry.system()
    if not system.polys:
        return 0, entry.n + 1
    if entry.complete_intersection and entry.smooth:
        D = H.hodge_numbers(H.CompleteIntersectionSpec(system.n, system.degrees))
        m, b = D.m, D.b_prim
        return (b, m + 1) if m % 2 else (0, m + 1 + b)
    raise InputError("degree bounds needed: pass --deg-num and --deg-den")


def cmd_zeta(args) -> int:
    entry = _load_target(args)
    dn, dd = (args.deg_num, args.deg_den)
    if dn is None or dd is None:
        dn0, dd0 = _default_degrees(entry)
        dn = dn0 if dn is None else dn
        dd = dd0 if dd is None else dd
    if entry.S < dn + dd:
        raise InputError(f"S = {entry.S} too small for degrees ({dn}, {dd}); "
                         f"rerun with --S {dn + dd}")
    counts = count_tower(entry.system(), entry.p, entry.d, entry.S, workers=_workers(args),
                         budget=entry.budget)
    rz = pade_reconstruct(series_from_counts(counts), dn, dd)
    out = {"variety": entry.name, "q": entry.q, "counts": list(counts.counts), **rz.to_dict()}
    for key, poly in (("numerator", rz.numerator), ("denominator", rz.denominator)):
        if len(poly) > 1:
            out[f"{key}_slopes"] = [[str(s), k] for s, k in newton_polygon(poly, entry.p, entry.d).slopes]
        else:
            out[f"{key}_slopes"] = []
    if args.json:
        print(_dump(out))
    else:
        print(f"{entry.name} over F_{entry.q}, S = {entry.S}")
        print(f"numerator   {list(rz.numerator)}   slopes {out['numerator_slopes']}")
        print(f"denominator {list(rz.denominator)}   slopes {out['denominator_slopes']}")
    return EXIT_OK


def _parse_corrupt(spec: str | None) -> dict[int, int]:
    if not spec:
        return {}
    out = {}
    for item in spec.split(","):
        s, delta = item.split(":")
        out[int(s)] = int(delta)
    return out


def cmd_verify(args) -> int:
    entry = _load_target(args)
    opts = ReportOptions(workers=_workers(args), kappa_override=args.kappa_override,
                         corrupt_counts=_parse_corrupt(args.corrupt_count))
    rep = full_report(entry, opts)
    doc = rep.to_dict()
    if args.json:
        print(_dump(doc))
    else:
        print(f"{entry.name}: kappa_axkatz = {rep.kappa_axkatz}, kappa_hodge = {rep.kappa_hodge}"
              + (f" ({rep.hodge_marker})" if rep.hodge_marker else ""))
        print(f"counts: {rep.counts}")
        for name, sec in rep.sections.items():
            verdict = {True: "pass", False: "FAIL", None: "n/a"}[sec.get("pass")]
            print(f"  {name:<24} {verdict}")
        for note in rep.notes:
            print(f"  note: {note}")
    if rep.budget_exceeded:
        return EXIT_BUDGET
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_hodge(args) -> int:
    spec = H.CompleteIntersectionSpec(args.n, tuple(args.degrees))
    D = H.hodge_numbers(spec)
    ht = H.hodge_type(D)
    poly = H.hodge_polygon(D, use_primitive=True)
    out = {
        "n": spec.n,
        "degrees": list(spec.degrees),
        "diamond": D.to_dict(),
        "kappa_hodge": ht.kappa,
        "no_primitive": ht.no_primitive,
        "kappa_axkatz": H.ax_katz_kappa(spec.n, spec.degrees),
        "hodge_polygon": poly.to_dict(),
    }
    if args.json:
        print(_dump(out))
    else:
        print(f"complete intersection of degrees {list(spec.degrees)} in P^{spec.n}, dim {spec.m}")
        print(D.render())
        print(f"primitive middle row: {list(D.h_prim)}")
        marker = " (no primitive cohomology)" if ht.no_primitive else ""
        print(f"Hodge type {ht.kappa}{marker}; Ax-Katz kappa {out['kappa_axkatz']}")
        print(f"Hodge polygon slopes: {[[str(s), k] for s, k in poly.slopes]}")
    return EXIT_OK


def cmd_12a(args) -> int:
    rows = []
    for k in range(1, args.kappa_max + 1):
        for d in range(1, args.d_max + 1):
            for n in range(k, args.n_max + 1):
                rows.append({"kappa": k, "d": d, "n": n, "ok": H.verify_12a(k, d, n)})
    ok = all(r["ok"] for r in rows)
    if args.json:
        print(_dump({"grid": rows, "all_true": ok}))
    else:
        print(f"{'kappa':>5} {'d':>3} {'n':>3}  verdict")
        for r in rows:
            print(f"{r['kappa']:>5} {r['d']:>3} {r['n']:>3}  {r['ok']}")
        print(f"{sum(r['ok'] for r in rows)}/{len(rows)} true")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_catalog(args) -> int:
    if args.target:
        print(_dump(get_entry(args.target).to_dict()))
        return EXIT_OK
    if args.json:
        print(_dump({k: v.to_dict() for k, v in CATALOG.items()}))
    else:
        for name, e in CATALOG.items():
            print(f"{name:<26} n={e.n} p={e.p} d={e.d} S={e.S}  {e.description}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fqzeta", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="machine-readable output")
    fmt.add_argument("--text", dest="json", action="store_false", help="human-readable output (default)")

    variety = argparse.ArgumentParser(add_help=False)
    variety.add_argument("target", nargs="?", help="catalog entry name")
    variety.add_argument("--input", metavar="FILE", help="variety input document (JSON)")
    variety.add_argument("--p", type=int)
    variety.add_argument("--d", type=int)
    variety.add_argument("--S", type=int)
    variety.add_argument("--workers", type=int, default=None,
                         help="counting processes (default: available CPUs)")
    variety.add_argument("--budget", type=int, help="maximum kernel evaluations")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("count", parents=[common, variety], help="point counts over F_{q^s}")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("zeta", parents=[common, variety], help="reconstruct the zeta function")
    p.add_argument("--deg-num", type=int)
    p.add_argument("--deg-den", type=int)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("verify", parents=[common, variety], help="run every applicable check")
    p.add_argument("--kappa-override", type=int)
    p.add_argument("--corrupt-count", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hodge", parents=[common], help="Hodge diamond of a complete intersection")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degrees", type=int, nargs="+", required=True)
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("12a", parents=[common], help="blow-up vanishing grid")
    p.add_argument("--kappa-max", type=int, default=3)
    p.add_argument("--d-max", type=int, default=5)
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(func=cmd_12a)

    p = sub.add_parser("catalog", parents=[common], help="list built-in varieties")
    p.add_argument("target", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, PolyError, FieldError, H.InvalidSpec, ZetaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
