"""Command-line interface: computations, table exports, verification.

Exit codes: 0 on success, 1 on usage errors, 2 when a verification
tolerance fails.  All artifacts are byte-stable for a fixed
configuration (sorted JSON keys, fixed significant-digit rendering).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from mpmath import mp, mpf

from . import verify as verify_mod
from .errors import QPeriodError
from .exact import rational_to_string
from .highprec import format_complex, format_real, parse_complex
from .moments import c0_constant, hausdorff_alpha, moments_solve
from .period import borel_m2, g_closed_p2, g_reduce_eval, g_stieltjes, g_via_h, h_series, q_series
from .ptree import curve_sample, mu_chain_bound, mu_table, pcf_expand, x_map_report
from .qmark import cf_expand, generation_f_rows, minkowski_f, question_mark


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _parse_number(text: str):
    """Parse '3/2', '1.5', 'sqrt(2)', or 'golden' as an exact or mpf value."""
    text = text.strip()
    if text == "golden":
        return (1 + mp.sqrt(5)) / 2
    if text.startswith("sqrt(") and text.endswith(")"):
        return mp.sqrt(Fraction(text[5:-1]))
    try:
        return Fraction(text)
    except ValueError:
        return mpf(text)


def _parse_quotients(text: str):
    return tuple(int(a) for a in text.split(","))


def _write_text(path: Path, data: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(data, encoding="utf-8")
    print(f"wrote {path}")


def _write_json(path: Path, obj):
    _write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_qmark(args) -> int:
    x = _parse_number(args.x)
    with mp.workprec(args.prec):
        if isinstance(x, Fraction):
            f = minkowski_f(x)
            print(f"F({x}) = {rational_to_string(f)} = {format_real(mpf(f.numerator) / f.denominator, 30)}")
            if 0 <= x <= 1:
                q = question_mark(x)
                print(f"?({x}) = {rational_to_string(q)}")
        else:
            cf = cf_expand(x, max_depth=args.depth, prec=args.prec)
            from .qmark import qmark_eval
            f = qmark_eval(cf)
            print(f"quotients: {','.join(str(a) for a in cf.quotients)}")
            print(f"F = {format_real(mpf(f.numerator) / f.denominator, 30)}")
    return 0


def _cmd_tree(args) -> int:
    rows = [(rational_to_string(x), rational_to_string(f))
            for x, f in generation_f_rows(args.depth)]
    text = _csv_text(["rational", "f_value"], rows)
    if args.out:
        _write_text(Path(args.out) / f"tree_generation_{args.depth}.csv", text)
    else:
        print(text, end="")
    return 0


def _cmd_pcf(args) -> int:
    x = _parse_number(args.x)
    p = _parse_number(args.p)
    got = pcf_expand(x, p, max_iter=args.max_iter, prec=args.prec)
    kind = "terminated" if got.terminated else "truncated"
    print(f"[{','.join(str(a) for a in got.quotients)}]  ({kind})")
    return 0


def _cmd_xmap(args) -> int:
    p = parse_complex(args.p, prec=args.prec)
    if "," in args.x:
        quots = _parse_quotients(args.x)
    else:
        quots = cf_expand(_parse_number(args.x), max_depth=args.depth,
                          prec=args.prec).quotients
    rep = x_map_report(p, quots, depth=args.depth, prec=args.prec)
    print(f"value = {format_complex(rep.value, 25)}")
    tail = "0 (terminating expansion)" if rep.exact else format_real(rep.tail_bound, 5)
    print(f"tail bound = {tail}")
    return 0


def _cmd_curve(args) -> int:
    p = parse_complex(args.p, prec=args.prec)
    points = curve_sample(p, args.depth, prec=args.prec)
    rows = []
    with mp.workprec(args.prec):
        for cp in points:
            v = mp.mpc(cp.value)
            rows.append((format_real(v.real, 20), format_real(v.imag, 20),
                         " ".join(str(a) for a in cp.address)))
    text = _csv_text(["re", "im", "address"], rows)
    if args.out:
        _write_text(Path(args.out) / f"curve_p{args.p}_depth{args.depth}.csv", text)
    else:
        print(text, end="")
    return 0


def _cmd_mu_table(args) -> int:
    table = mu_table(max_a=6, max_b=15, grid_size=args.grid, prec=args.prec)
    rows = []
    for b in list(range(1, 16)) + [None]:
        label = "inf" if b is None else str(b)
        rows.append([label] + [format_real(table[(a, b)], 9) for a in range(1, 7)])
    text = _csv_text(["b\\a"] + [str(a) for a in range(1, 7)], rows)
    bound = mu_chain_bound(table)
    if args.out:
        _write_text(Path(args.out) / "mu_table.csv", text)
    else:
        print(text, end="")
    print(f"chained bound: {format_real(bound, 9)} (< 0.76 required)")
    return 0


def _cmd_hseries(args) -> int:
    terms = h_series(args.n_terms)
    payload = {"terms": [{
        "n": t.n,
        "numerator_coeffs": t.numerator.coeff_strings(),
        "denominator": {"root": "2/1", "power": t.n + 1},
    } for t in terms]}
    _write_json(Path(args.out or ".") / "hseries.json", payload)
    return 0


def _cmd_qseries(args) -> int:
    terms = q_series(args.n_terms)
    payload = {"terms": [{
        "n": t.n,
        "numerator_coeffs": t.numerator.coeff_strings(),
        "denominator": {"root": "0/1", "power": t.n + 1},
    } for t in terms]}
    _write_json(Path(args.out or ".") / "qseries.json", payload)
    return 0


def _cmd_moments(args) -> int:
    mv = moments_solve(order=args.order, prec=args.prec)
    _write_json(Path(args.out or ".") / "moments.json", mv.to_json_dict())
    print(f"m2 = {format_real(mv.m(2), min(mv.digits, 58))}")
    return 0


def _cmd_constants(args) -> int:
    mv = moments_solve(order=args.order, prec=args.prec)
    digits = min(mv.digits, 58)
    print(f"m1  = {format_real(mv.m(1), 50)}  (exact value 1/2)")
    print(f"m2  = {format_real(mv.m(2), digits)}  ({digits} digits)")
    print(f"m3  = {format_real(mv.m(3), digits)}")
    print(f"m4  = {format_real(mv.m(4), digits)}")
    with mp.workprec(mv.prec):
        print(f"3 m2 - 2 m3 = {format_real(3 * mv.m(2) - 2 * mv.m(3), 50)}")
    alpha_digits = min(36, mv.digits)
    print(f"dimension constant = {format_real(hausdorff_alpha(mv), alpha_digits)}  ({alpha_digits} digits)")
    print(f"scale constant     = {format_real(c0_constant(mv), 31)}")
    return 0


def _cmd_gvalue(args) -> int:
    z = parse_complex(args.z, prec=args.prec)
    methods = ["reduce", "series", "stieltjes"] if args.method == "all" else [args.method]
    for method in methods:
        if method == "reduce":
            mv = moments_solve(order=args.order, prec=args.prec)
            val = g_reduce_eval(z, mv)
        elif method == "series":
            val, _ = g_via_h(z, h_series(args.n_terms), prec=max(args.prec, 160))
        elif method == "stieltjes":
            val = g_stieltjes(z, 1, cells=args.partition, prec=128)
        elif method == "closed2":
            val = g_closed_p2(z)
        else:
            raise QPeriodError(f"unknown method {method}")
        print(f"{method:>9}: {format_complex(val, 10)}")
    return 0


def _cmd_borel(args) -> int:
    res = borel_m2(n_max=args.n_terms, r_max=args.slices, prec=args.prec)
    rows = [(r, format_real(v, 12)) for r, v in enumerate(res.slice_sums)]
    for r, v in rows:
        print(f"slice {r:>2}: {v}")
    print(f"total over {args.slices + 1} slices: {format_real(res.total, 12)}")
    if args.out:
        _write_json(Path(args.out) / "borel.json", {
            "inner_terms": args.n_terms,
            "slices": [v for _, v in rows],
            "total": format_real(res.total, 12),
        })
    return 0


def _cmd_verify(args) -> int:
    results = verify_mod.run_suite(args.suite, progress=lambda m: print(m, flush=True))
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    report = {
        "suite": args.suite,
        "checks": [r.to_json_dict() for r in results],
        "failed": len(failed),
        "total": len(results),
    }
    _write_json(Path(args.out or ".") / "verification_report.json", report)
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 2 if failed else 0


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="qperiod",
                     description="Minkowski question-mark machinery: exact series, "
                                 "moments, and verification")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--prec", type=int, default=256, help="precision in bits")
        p.add_argument("--out", type=str, default=None, help="output directory")
        return p

    p = add("qmark", _cmd_qmark, "evaluate the distribution F at a point")
    p.add_argument("--x", required=True)
    p.add_argument("--depth", type=int, default=64)

    p = add("tree", _cmd_tree, "export one generation of the rational tree")
    p.add_argument("--depth", type=int, default=8)

    p = add("pcf", _cmd_pcf, "p-expansion of a real number")
    p.add_argument("--x", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--max-iter", type=int, default=64)

    p = add("xmap", _cmd_xmap, "conjugation-map value at a point")
    p.add_argument("--x", required=True, help="number or comma-separated quotients")
    p.add_argument("--p", required=True)
    p.add_argument("--depth", type=int, default=64)

    p = add("curve", _cmd_curve, "sample one generation of the value curve")
    p.add_argument("--p", required=True)
    p.add_argument("--depth", type=int, default=12)

    p = add("mu-table", _cmd_mu_table, "sup-constant table over the parameter disc")
    p.add_argument("--grid", type=int, default=2000)

    p = add("hseries", _cmd_hseries, "exact resolvent-series terms as JSON")
    p.add_argument("--n-terms", type=int, default=60)

    p = add("qseries", _cmd_qseries, "exact parameter-0 terms as JSON")
    p.add_argument("--n-terms", type=int, default=60)

    p = add("moments", _cmd_moments, "solve the truncated moment system")
    p.add_argument("--order", type=int, default=325)
    p.set_defaults(prec=512)

    p = add("constants", _cmd_constants, "print the headline constants")
    p.add_argument("--order", type=int, default=325)
    p.set_defaults(prec=512)

    p = add("gvalue", _cmd_gvalue, "resolvent value by one or all methods")
    p.add_argument("--z", required=True, help="complex point, e.g. 0.6666666667+4i")
    p.add_argument("--method", choices=["reduce", "series", "stieltjes", "closed2", "all"],
                   default="all")
    p.add_argument("--order", type=int, default=325)
    p.add_argument("--n-terms", type=int, default=60)
    p.add_argument("--partition", type=int, default=3560)

    p = add("borel", _cmd_borel, "slice-by-slice resummation of the second moment")
    p.add_argument("--n-terms", type=int, default=130)
    p.add_argument("--slices", type=int, default=11)

    p = add("verify", _cmd_verify, "run a verification suite")
    p.add_argument("--suite", choices=["full", "quick"], default="full")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except QPeriodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
