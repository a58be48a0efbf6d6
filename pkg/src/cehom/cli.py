"""Command-line front end.

Exit codes: 0 success, 1 a checked equality failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from .algebra import AlgebraError, GradedCommutativeAlgebra
from .ce import Surface, build_complex, betti_table, ce_homology, euler_characteristics
from .e2 import WeightRangeError, compare
from .linalg import BoundaryError, DimensionTable
from .output import to_csv, to_json_lines, to_pretty
from .scalar import QQ, FieldError, PrimeField, field_create

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID = 0, 1, 2
DEFAULT_MAX_WEIGHT = 7


class UsageError(ValueError):
    pass


def _surface(args) -> Surface:
    kind = args.surface
    if args.closed:
        kind = "closed"
    if args.punctured:
        kind = "punctured"
    if kind == "torus":
        if args.genus not in (None, 1):
            raise UsageError("--surface torus has genus 1")
        return Surface.torus()
    if kind == "custom":
        if not args.algebra:
            raise UsageError("--surface custom needs --algebra PATH")
        alg = GradedCommutativeAlgebra.from_json(args.algebra)
        return Surface("custom", 0, json.dumps(alg.to_json(), sort_keys=True))
    genus = 1 if args.genus is None else args.genus
    try:
        return Surface(kind, genus)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _weights(args, upper: int | None = None) -> list[int]:
    if args.weight is not None:
        ws = [args.weight]
    else:
        top = args.max_weight if args.max_weight is not None else (upper or 3)
        ws = list(range(1, top + 1))
    if any(w < 1 for w in ws):
        raise UsageError("weights must be positive")
    if any(w > DEFAULT_MAX_WEIGHT for w in ws) and not args.allow_large:
        raise UsageError(f"weight above {DEFAULT_MAX_WEIGHT} needs --allow-large")
    return ws


def _prime(args) -> int | None:
    if args.prime is not None:
        return PrimeField(args.prime).p
    if args.field and args.field.upper() not in ("Q", "QQ"):
        return field_create(args.field).characteristic
    return None


# ---------------------------------------------------------------------------


def cmd_betti(args) -> int:
    surface = _surface(args)
    p = _prime(args)
    field = QQ if p is None else PrimeField(p)
    ws = _weights(args)
    table = DimensionTable(metadata={"field": field.name, "surface": surface.label})
    for w in ws:
        table = table.merge(ce_homology(surface, w, field, oracle=args.oracle))
    table.metadata["weights"] = ws
    if p is not None and max(ws) > p:
        print(f"note: the Lie relations are only known to be complete for weights <= p = {p}", file=sys.stderr)
    if args.format == "json":
        print(to_json_lines(table, surface.label))
    elif args.format == "csv":
        sys.stdout.write(to_csv(table, surface.label))
    else:
        kind = "Betti numbers" if p is None else f"dim H_i(B_k; F_{p})"
        print(to_pretty(table, f"{kind} of B_k({surface.label})"))
        for w in surface.warnings():
            print(f"note: {w}")
    return EXIT_OK


def cmd_compare(args) -> int:
    surface = _surface(args)
    p = _prime(args)
    if p is None:
        raise UsageError("compare needs --prime")
    ws = _weights(args, upper=p)
    for w in ws:
        if w > p:
            raise WeightRangeError(f"weight > p unsupported (k={w}, p={p})")
    reports = [compare(surface, p, w, oracle=args.oracle, operadic=args.operadic_char3) for w in ws]
    ok = all(r.equal for r in reports)
    if args.format == "json":
        print(json.dumps({"surface": surface.label, "prime": p, "all_equal": ok,
                          "results": [r.to_json() for r in reports]}))
    elif args.format == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["surface", "field", "weight", "degree", "mod_p", "betti", "equal"])
        for r in reports:
            for d in sorted(set(r.fp_dims) | set(r.q_dims)):
                a, b = r.fp_dims.get(d, 0), r.q_dims.get(d, 0)
                wr.writerow([surface.label, f"F_{p}", r.weight, d, a, b, int(a == b)])
        sys.stdout.write(buf.getvalue())
    else:
        for r in reports:
            top = max(set(r.fp_dims) | set(r.q_dims), default=0)
            fp = [r.fp_dims.get(d, 0) for d in range(top + 1)]
            q = [r.q_dims.get(d, 0) for d in range(top + 1)]
            status = "equal" if r.equal else "MISMATCH"
            print(f"k={r.weight} [{r.route}] F_{p}: {fp}  Q: {q}  {status}")
            if r.e2 is not None:
                for c in r.e2.checks:
                    print(f"    {'ok ' if c.passed else 'BAD'} {c.name} {c.detail}".rstrip())
                for c in r.e2.cancellations:
                    print(f"    d_{c['page']}: {c['source']['label']} -> {c['target']['label']}")
        for w in surface.warnings():
            print(f"note: {w}")
        print("all equal" if ok else "mismatch found")
    return EXIT_OK if ok else EXIT_MISMATCH


def run_selfcheck(max_weight: int, primes: list[int], surfaces: list[Surface], fault: str | None = None,
                  oracle_weight: int = 4, out=print) -> bool:
    """Structural suite: d∘d = 0, Euler characteristics, universal-coefficient
    bound, sparse/dense agreement, and k <= p comparisons."""
    clean = True

    def line(ok: bool, msg: str):
        nonlocal clean
        clean &= ok
        out(f"{'PASS' if ok else 'FAIL'} {msg}")

    fields = [QQ] + [PrimeField(p) for p in primes]
    for s in surfaces:
        for k in range(1, max_weight + 1):
            tabs = {}
            for F in fields:
                cx = build_complex(s, k, F, fault)
                try:
                    cx.check()
                except BoundaryError as exc:
                    line(False, f"{s.label} k={k} {F}: {exc}")
                    continue
                tab = cx.homology(check=False)
                tabs[F] = tab
                euler = euler_characteristics(cx, tab)
                bad = [e for e in euler if e[2] != e[3]]
                line(not bad, f"{s.label} k={k} {F}: d∘d=0, Euler characteristic per t")
                if k <= oracle_weight:
                    same = tab.same_dims(cx.homology(check=False, oracle=True))
                    line(same, f"{s.label} k={k} {F}: sparse = dense oracle")
            if QQ in tabs:
                q = tabs[QQ]
                for F, tab in tabs.items():
                    if F is QQ:
                        continue
                    low = [key for key, n in q.bidegrees.items() if tab.bidegrees.get(key, 0) < n]
                    line(not low, f"{s.label} k={k} {F}: dim_Fp >= dim_Q")
        if fault is None:
            for p in primes:
                for k in range(1, min(p, max_weight) + 1):
                    r = compare(s, p, k)
                    line(r.equal, f"{s.label} p={p} k={k}: mod-p dims = Betti [{r.route}]")
    return clean


def cmd_selfcheck(args) -> int:
    primes = [PrimeField(int(x)).p for x in args.primes.split(",") if x.strip()]
    if args.surface == "torus" and not (args.closed or args.punctured) and args.all_surfaces:
        surfaces = [Surface.torus(), Surface.punctured(1), Surface.punctured(2)]
    else:
        surfaces = [_surface(args)]
    max_w = args.max_weight if args.max_weight is not None else 5
    if max_w > DEFAULT_MAX_WEIGHT and not args.allow_large:
        raise UsageError(f"weight above {DEFAULT_MAX_WEIGHT} needs --allow-large")
    t0 = time.perf_counter()
    clean = run_selfcheck(max_w, primes, surfaces, fault=args.inject_fault,
                          out=(print if args.verbose else (lambda msg: msg.startswith("FAIL") and print(msg))))
    print(f"selfcheck {'clean' if clean else 'FAILED'} in {time.perf_counter() - t0:.1f}s")
    return EXIT_OK if clean else EXIT_MISMATCH


def cmd_report(args) -> int:
    from .plotting import plot_comparison, plot_dimension_table

    surface = _surface(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ws = _weights(args)
    betti = betti_table(surface, max(ws), oracle=args.oracle)
    (out / "betti.csv").write_text(to_csv(betti, surface.label))
    plot_dimension_table(betti, out / "betti.png", f"Betti numbers of B_k({surface.label})")
    written = ["betti.csv", "betti.png"]
    ok = True
    primes = [int(x) for x in args.primes.split(",")] if args.primes else []
    if args.prime:
        primes.append(args.prime)
    rows = [["surface", "field", "weight", "degree", "mod_p", "betti", "equal"]]
    for p in sorted(set(primes)):
        PrimeField(p)
        for k in range(1, min(p, max(ws)) + 1):
            r = compare(surface, p, k)
            ok &= r.equal
            for d in sorted(set(r.fp_dims) | set(r.q_dims)):
                a, b = r.fp_dims.get(d, 0), r.q_dims.get(d, 0)
                rows.append([surface.label, f"F_{p}", k, d, a, b, int(a == b)])
            if k == min(p, max(ws)):
                name = f"compare_p{p}_k{k}.png"
                plot_comparison(r.fp_dims, r.q_dims, out / name, f"{surface.label}, k={k}, p={p}")
                written.append(name)
    if len(rows) > 1:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        (out / "compare.csv").write_text(buf.getvalue())
        written.append("compare.csv")
    sys.stdout.write(to_csv(betti, surface.label))
    for name in written:
        print(f"wrote {out / name}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", choices=["torus", "closed", "punctured", "custom"], default="torus")
    common.add_argument("--genus", type=int)
    common.add_argument("--closed", action="store_true", help="closed surface of the given genus")
    common.add_argument("--punctured", action="store_true", help="once-punctured surface of the given genus")
    common.add_argument("--algebra", help="JSON presentation of a custom coefficient algebra")
    common.add_argument("--prime", type=int)
    common.add_argument("--field", help="Q or an odd prime")
    common.add_argument("--weight", type=int, help="a single weight k")
    common.add_argument("--max-weight", type=int, help="weights 1..K")
    common.add_argument("--allow-large", action="store_true", help=f"permit weights above {DEFAULT_MAX_WEIGHT}")
    common.add_argument("--format", choices=["pretty", "json", "csv"], default="pretty")
    common.add_argument("--oracle", action="store_true", help="use dense elimination for homology")
    common.add_argument("--operadic-char3", action=argparse.BooleanOptionalAction, default=True,
                        help="route p=3, k=3 through the operadic accounting (default on)")

    parser = argparse.ArgumentParser(prog="cehom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("betti", parents=[common], help="Betti numbers (or mod-p dims) of B_k(M)").set_defaults(
        func=cmd_betti)
    sub.add_parser("compare", parents=[common], help="mod-p dims versus Betti numbers, k <= p").set_defaults(
        func=cmd_compare)
    sc = sub.add_parser("selfcheck", parents=[common], help="structural and theorem checks")
    sc.add_argument("--primes", default="3,5,7")
    sc.add_argument("--all-surfaces", action=argparse.BooleanOptionalAction, default=True,
                    help="torus and punctured g=1,2 (default) instead of --surface")
    sc.add_argument("--inject-fault", choices=["sign-flip"], help="test hook: corrupt the differential")
    sc.add_argument("-v", "--verbose", action="store_true")
    sc.set_defaults(func=cmd_selfcheck)
    rp = sub.add_parser("report", parents=[common], help="CSV tables plus figures in a directory")
    rp.add_argument("--out", required=True)
    rp.add_argument("--primes", default="3,5,7")
    rp.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, WeightRangeError, AlgebraError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
