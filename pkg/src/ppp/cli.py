"""Command-line front end: ``ppp <subcommand> [options]``.

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from collections import Counter
from typing import Callable, Sequence

from . import enumerate as en
from . import forest as fo
from . import geometry as geo
from . import necklace as nk
from . import series as se
from .errors import PPPError

OK, FAILED, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _conventions(text: str) -> geo.Conventions:
    try:
        return geo.Conventions.parse(text)
    except PPPError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    # global flags are accepted before or after the subcommand
    def d(value):
        return argparse.SUPPRESS if suppress else value

    p.add_argument("--order", type=int, default=d(10))
    p.add_argument("--max-sp", type=int, default=d(7))
    p.add_argument("--max-thickness", type=int, default=d(3))
    p.add_argument("--format", choices=["json", "csv", "text"], default=d("json"))
    p.add_argument("--conventions", type=_conventions, default=d(geo.DEFAULT))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ppp", description=__doc__.splitlines()[0])
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, suppress=True)

    sub.add_parser("enumerate", parents=[common], help="count table of PPPs")
    s = sub.add_parser("series", parents=[common], help="generating-function coefficients")
    s.add_argument("--which", choices=["catalan", "G", "S", "Q", "M", "P1"], required=True)
    v = sub.add_parser("verify", parents=[common], help="run property checks")
    v.add_argument("--suite", choices=["invariants", "bijection", "series", "polya", "all"], default="all")
    sub.add_parser("calibrate", parents=[common], help="compare every convention combination")
    r = sub.add_parser("render", parents=[common], help="draw a PPP1-encoded polyomino")
    r.add_argument("--input", help="PPP1 encoding (default: read stdin)")
    o = sub.add_parser("oeis", parents=[common], help="check a sequence against the pipeline")
    o.add_argument("--check", choices=["A008549"], required=True)
    o.add_argument("--terms", type=int, default=6)
    return parser


def cmd_enumerate(args) -> tuple[int, str]:
    if args.format == "text":
        ppps = en.gen_ppps(args.max_sp, args.max_thickness, args.conventions)
        return OK, "\n".join(geo.encode(p) for p in ppps)
    table = en.count_table(args.max_sp, args.max_thickness, args.conventions)
    return OK, table.to_csv().rstrip("\n") if args.format == "csv" else table.to_json()


def cmd_series(args) -> tuple[int, str]:
    n = args.order
    which = args.which
    if which == "catalan":
        out = se.to_json(se.catalan_A(n), "z")
    elif which == "G":
        out = se.to_json(se.gf_G(n), "z")
    elif which == "S":
        out = se.to_json(se.polya_S(n), "z")
    else:
        q, m, p1 = se.ppp_zpart(n)
        out = se.to_json({"Q": q, "M": m, "P1": p1}[which], "zb,zw")
    return OK, out


def _series_checks(order: int) -> dict[str, bool]:
    a = se.catalan_A(16)
    z = se.Series1.z(16)
    ab, aw = se.bicolored(10)
    zb, zw = se.Series2.monomial(1, 0, 10), se.Series2.monomial(0, 1, 10)
    lin = zb - zw + 1
    residual = (zb * ab * 2 - lin) * (zb * ab * 2 - lin) - (lin * lin - zb * 4)
    return {
        "catalan_first_terms": a.integers()[:6] == [1, 1, 2, 5, 14, 42],
        "catalan_residual": all(c == 0 for c in (a - se.ps_inv(1 - z * a)).coeffs),
        "bicolored_swap": ab == aw.swap(),
        "bicolored_closed_form": all(c == 0 for _, c in residual.items()),
        "diagonal_is_catalan": ab.diagonal() == se.catalan_A(10),
    }


def _polya_checks(order: int) -> dict[str, bool]:
    s = se.polya_S(order).integers()
    found = en.weight_counts(en.gen_necklaces(order))
    by_total = {w: 0 for w in range(order + 1)}
    for (b, wh), c in found.items():
        by_total[b + wh] += c
    g = se.gf_G(order).integers()
    tuples = en.weight_counts(en.gen_4tuples(order))
    g_found = {w: sum(c for (b, wh), c in tuples.items() if b + wh == w) for w in range(order + 1)}
    return {
        "necklace_counts": all(s[w] == by_total[w] for w in range(order + 1)),
        "tuple_counts": all(g[w] == g_found[w] for w in range(order + 1)),
    }


def _bijection_checks(args) -> dict[str, bool]:
    conv = args.conventions
    ppps = en.gen_ppps(args.max_sp, args.max_thickness, conv)
    roundtrip = unprune = True
    for p in ppps:
        k, ms = nk.psi(p, conv)
        roundtrip &= nk.psi_inverse(k, ms, conv) == p
        mf = fo.phi(p, conv)
        trunk_forest, log = fo.prune(mf)
        unprune &= fo.unprune(trunk_forest, log, mf.mark) == mf
    return {"psi_roundtrip": roundtrip, "prune_replay": unprune}


def _invariant_checks(args) -> dict[str, bool]:
    conv = args.conventions
    ppps = en.gen_ppps(args.max_sp, args.max_thickness, conv)
    ok = {"forest_valid": True, "vertex_count_is_sp": True, "cycles_equal_even": True, "rotation": True}
    for p in ppps:
        q = p
        for _ in range(p.width):
            q = geo.rotate(q, conv)
        ok["rotation"] &= q == p
        f = fo.phi(p, conv).forest
        ok["forest_valid"] &= fo.validate_forest(f)
        ok["vertex_count_is_sp"] &= len(f) == geo.stats(p, conv).semi_perimeter
        sizes = {len(c) for c in fo.cycles(f)}
        ok["cycles_equal_even"] &= len(sizes) == 1 and min(sizes) % 2 == 0
        r = geo.rotate(p, conv)
        ok["rotation"] &= (
            geo.stats(r, conv).semi_perimeter == geo.stats(p, conv).semi_perimeter
            and fo.intrinsic_thickness(r, conv) == fo.intrinsic_thickness(p, conv)
            and fo.isomorphic(f, fo.phi(r, conv).forest)
        )
    table = en.count_table(args.max_sp, args.max_thickness, conv)
    per_k = [
        {(w, h): c for (w, h, kk), c in table.counts.items() if kk == k}
        for k in range(1, args.max_thickness + 1)
    ]
    ok["trunk_cycles"] = all(
        sorted(len(c) for c in fo.cycles(fo.phi(geo.trunk(k, l, conv), conv).forest))
        == [2 * l // math.gcd(k, l)] * math.gcd(k, l)
        for k in range(1, 5)
        for l in range(1, 6)
    )
    degenerated = Counter(
        (p.columns[0].size, p.width)
        for p in en.gen_bounded_ppps(5, 5)
        if geo.is_degenerated(p, conv)
    )
    ok["degenerated_closed_form"] = degenerated == Counter(
        {(t, w): 1 for t in range(1, 6) for w in range(1, 6)}
    )
    ok["thickness_independent"] = all(t == per_k[0] for t in per_k)
    _, _, p1 = se.ppp_zpart(args.max_sp)
    ok["p1_coefficients"] = all(
        table.counts.get((w, h, k), 0) == p1[w, h]
        for w in range(1, args.max_sp)
        for h in range(1, args.max_sp - w + 1)
        for k in range(1, args.max_thickness + 1)
    )
    polya = se.polya_S(args.max_sp).integers()
    orbits = en.orbit_counts(args.max_sp, args.max_thickness, conv)
    ok["polya_orbits"] = all(
        orbits.get((sp, k), 0) == polya[sp]
        for sp in range(2, args.max_sp + 1)
        for k in range(1, args.max_thickness + 1)
    )
    return ok


def cmd_verify(args) -> tuple[int, str]:
    suites: dict[str, Callable[[], dict[str, bool]]] = {
        "series": lambda: _series_checks(args.order),
        "polya": lambda: _polya_checks(args.order),
        "bijection": lambda: _bijection_checks(args),
        "invariants": lambda: _invariant_checks(args),
    }
    chosen = list(suites) if args.suite == "all" else [args.suite]
    results = {}
    for name in chosen:
        try:
            results[name] = suites[name]()
        except PPPError as exc:
            # an exception inside a suite is a failed check, not a usage error
            print(f"ppp: {name}: {type(exc).__name__}: {exc}", file=sys.stderr)
            results[name] = {"completed": False}
    passed = all(all(r.values()) for r in results.values())
    if args.format == "text":
        lines = [
            f"{'PASS' if ok else 'FAIL'} {suite}.{check}"
            for suite, checks in results.items()
            for check, ok in checks.items()
        ]
        return (OK if passed else FAILED), "\n".join(lines)
    return (OK if passed else FAILED), json.dumps({"passed": passed, "results": results}, sort_keys=True)


def cmd_calibrate(args) -> tuple[int, str]:
    report = en.calibrate(args.max_sp, args.max_thickness)
    passed = str(args.conventions) in report["passing_all"]
    return (OK if passed else FAILED), en.report_json(report)


def cmd_render(args) -> tuple[int, str]:
    text = args.input if args.input is not None else sys.stdin.read()
    p = geo.decode(text)
    return OK, geo.render_ascii(p)


def cmd_oeis(args) -> tuple[int, str]:
    n = args.terms
    _, _, p1 = se.ppp_zpart(n + 1)
    diagonal = p1.diagonal().integers()
    pipeline = [diagonal[i + 1] for i in range(1, n + 1)]
    reference = [se.dyck_area_sum(i) for i in range(1, n + 1)]
    ok = pipeline == reference
    payload = {"sequence": args.check, "pipeline": pipeline, "reference": reference, "match": ok}
    return (OK if ok else FAILED), json.dumps(payload)


COMMANDS = {
    "enumerate": cmd_enumerate,
    "series": cmd_series,
    "verify": cmd_verify,
    "calibrate": cmd_calibrate,
    "render": cmd_render,
    "oeis": cmd_oeis,
}


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Parse ``argv`` and run the command; returns (exit code, stdout text)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except PPPError as exc:
        print(f"ppp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE, ""


def main(argv: Sequence[str] | None = None) -> int:
    try:
        code, out = run(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if out:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
