"""Command-line front end.

    stackpw check echeck --genus 2 --rmax 2 --qmax 40 --report out.json
    stackpw extract ic --genus 2 --rmax 2
    stackpw count --rank 2 --genus 2 --twist 1 --q 3,5 --method convolution
    stackpw kac --quiver quivers/jordan.q --dim 2
    stackpw series twisted --genus 2 --rank 2

Exit status is 0 iff every requested check passes.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import checks
from .charvar import (brute_relation_count, build_group, central_for, frobenius_count, stack_count,
                      twisted_count, smooth_twisted_series)
from .functors import VirtualDimension, bcstar_series, bm_vir_from_count, pt_mod_glr_bm_vir_series
from .polynomials import format_poly
from .quiver import DimVector, Quiver, kac_polynomial
from .series import GradedSeries, format_series, to_json


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit_series(f, as_json: bool) -> None:
    if as_json:
        print(to_json(f))
        return
    for n in range(f.policy.t_max + 1):
        part = f.t_part(n)
        if part:
            print(f"t^{n}: " + format_series(GradedSeries(f.policy, {(n, e): c for e, c in part.items()})))


def cmd_check(args) -> int:
    names = ["genus0", "genus1", "echeck", "psws", "ic"] if args.which == "all" else [args.which]
    reports = []
    for name in names:
        genus = args.genus
        if name == "genus0":
            genus = 0
        elif name == "genus1":
            genus = 1
        elif name == "ic" and genus is None:
            genus = 2
        elif genus is None:
            genus = 0
        spec = checks.CheckSpec(name, genus=genus, r_max=args.rmax, q_max=args.qmax,
                                budget=args.budget, corrupt=args.corrupt)
        report = checks.CHECKS[name](spec)
        reports.append(report)
        status = "PASS" if report.passed else "FAIL"
        line = f"{status} {name} genus={genus} rmax={args.rmax} ({report.timings.get('total', 0):.3f}s)"
        if report.witness:
            line += f" witness={json.dumps(report.witness, default=str)}"
        print(line)
    if args.report:
        payload = [r.to_dict() for r in reports]
        Path(args.report).write_text(json.dumps(payload[0] if len(payload) == 1 else payload,
                                                indent=2, sort_keys=True, default=str) + "\n")
    return 0 if all(r.passed for r in reports) else 1


def cmd_extract(args) -> int:
    spec = checks.CheckSpec(args.what, genus=args.genus, r_max=args.rmax, q_max=args.qmax)
    stack, _ = checks.counting_side(args.genus, args.rmax, spec.window)
    out = checks.extract_bps(stack) if args.what == "bps" else checks.extract_ic(stack)
    _emit_series(out, args.json)
    return 0


def cmd_count(args) -> int:
    r, g, d = args.rank, args.genus, args.twist
    writer = csv.writer(sys.stdout, lineterminator="\n")
    if args.method == "frobenius":
        poly = frobenius_count(r, g, d).as_poly()
        print(f"# relation count: {format_poly(poly)}")
        if args.smooth:
            print(f"# twisted variety: {format_poly(twisted_count(g, r, d))}")
        writer.writerow(["q", "count"])
        for q in args.q:
            writer.writerow([q, int(poly(q))])
        return 0
    writer.writerow(["q", "count"])
    for q in args.q:
        G = build_group(r, q, budget=args.budget)
        writer.writerow([q, brute_relation_count(G, g, central_for(G, d), method=args.method)])
    return 0


def cmd_kac(args) -> int:
    Q = Quiver.load(args.quiver)
    poly = kac_polynomial(Q, DimVector.of(Q, args.dim), args.samples, budget=args.budget)
    print(format_poly(poly))
    return 0


def cmd_series(args) -> int:
    pol = checks.default_window(args.genus, args.rank, args.qmax)
    if args.kind == "stack":
        f = bm_vir_from_count(stack_count(args.genus, args.rank, 0), VirtualDimension.surface(args.genus, args.rank),
                              pol, rank=args.rank)
    elif args.kind == "twisted":
        f = smooth_twisted_series(args.genus, args.rank, args.twist, pol)
    elif args.kind == "glr":
        f = pt_mod_glr_bm_vir_series(args.rank, args.genus, pol, rank=args.rank)
    else:
        f = bcstar_series(pol)
    _emit_series(f, args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stackpw", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run an identity check")
    c.add_argument("which", choices=["genus0", "genus1", "echeck", "psws", "ic", "all"])
    c.add_argument("--genus", type=int, default=None)
    c.add_argument("--rmax", type=int, default=2)
    c.add_argument("--qmax", type=int, default=20)
    c.add_argument("--budget", type=int, default=200_000)
    c.add_argument("--report", help="write the JSON report here")
    c.add_argument("--corrupt", choices=checks.CORRUPTIONS, help="deliberately break one input")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("extract", help="BPS or IC series from point counts")
    e.add_argument("what", choices=["bps", "ic"])
    e.add_argument("--genus", type=int, default=2)
    e.add_argument("--rmax", type=int, default=2)
    e.add_argument("--qmax", type=int, default=20)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_extract)

    n = sub.add_parser("count", help="surface-group relation counts over F_q")
    n.add_argument("--rank", type=int, default=2)
    n.add_argument("--genus", type=int, default=1)
    n.add_argument("--twist", type=int, default=0)
    n.add_argument("--q", type=_csv_ints, default=[2, 3])
    n.add_argument("--method", choices=["frobenius", "convolution", "literal"], default="frobenius")
    n.add_argument("--smooth", action="store_true", help="also print the twisted variety count")
    n.add_argument("--budget", type=int, default=200_000)
    n.set_defaults(func=cmd_count)

    k = sub.add_parser("kac", help="Kac polynomial by counting")
    k.add_argument("--quiver", required=True)
    k.add_argument("--dim", type=_csv_ints, required=True)
    k.add_argument("--samples", type=_csv_ints, default=None)
    k.add_argument("--budget", type=int, default=200_000)
    k.set_defaults(func=cmd_kac)

    s = sub.add_parser("series", help="print a building-block series")
    s.add_argument("kind", choices=["stack", "twisted", "glr", "bcstar"])
    s.add_argument("--genus", type=int, default=0)
    s.add_argument("--rank", type=int, default=1)
    s.add_argument("--twist", type=int, default=1)
    s.add_argument("--qmax", type=int, default=10)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_series)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, NotImplementedError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
