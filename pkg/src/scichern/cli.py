"""Command-line front end."""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import Optional, Sequence

from .chern_core import as_rational, corner, fmt_decimal, fmt_rational
from .cone import contains, corollary_check
from .enumeration import PointCloud, enumerate_points
from .errors import BudgetTooSmall, ParseError, SciChernError
from .hull import corner_report, hull_of
from .report import RunConfig, build_report, report_passed

CSV_HEADER = ["n", "parts", "s1", "c1cubed", "c1c2", "c3", "x", "y", "x_dec", "y_dec"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def enumeration_rows(cloud: PointCloud) -> list[dict]:
    rows = []
    for t, ch in cloud:
        rows.append({
            "n": len(t),
            "parts": t.label(),
            "s1": t.s1,
            "c1cubed": fmt_rational(ch.c1_cubed),
            "c1c2": fmt_rational(ch.c1c2),
            "c3": fmt_rational(ch.c3),
            "x": fmt_rational(ch.x),
            "y": fmt_rational(ch.y),
            "x_dec": fmt_decimal(ch.x),
            "y_dec": fmt_decimal(ch.y),
        })
    return rows


def to_csv(rows: list[dict], header: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(header), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _point(p) -> dict:
    return {"x": fmt_rational(p[0]), "y": fmt_rational(p[1]),
            "x_dec": fmt_decimal(p[0]), "y_dec": fmt_decimal(p[1])}


def hull_summary(cloud: PointCloud, h) -> dict:
    cr = corner_report(h, cloud.s1_max)
    corner_of = {corner(m): m for m, _ in cr.matched}
    wit = h.witnesses or {}

    def vertex(p):
        return {**_point(p), "corner": corner_of.get(p),
                "witnesses": [t.label() for t in wit.get(p, [])]}

    return {
        "s1_max": cloud.s1_max,
        "points": len(cloud),
        "vertices": [vertex(p) for p in h.vertices],
        "lower_chain": [vertex(p) for p in h.lower_chain],
        "upper_chain": [vertex(p) for p in h.upper_chain],
        "corners_matched": [m for m, _ in cr.matched],
        "corners_missing": cr.missing,
        "extra_vertices": [_point(p) for p in cr.extra_vertices],
        "truncation_artifacts": [_point(p) for p in cr.truncation_artifacts],
    }


HULL_CSV_HEADER = ["chain", "index", "corner", "x", "y", "x_dec", "y_dec", "witnesses"]


def hull_rows(summary: dict) -> list[dict]:
    rows = []
    for chain in ("lower", "upper"):
        for i, v in enumerate(summary[f"{chain}_chain"]):
            rows.append({"chain": chain, "index": i,
                         "corner": "" if v["corner"] is None else v["corner"],
                         "x": v["x"], "y": v["y"], "x_dec": v["x_dec"], "y_dec": v["y_dec"],
                         "witnesses": " ".join(v["witnesses"])})
    return rows


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args) -> RunConfig:
    return RunConfig(s1_max=args.max_s1, m_max=args.m_max, seed=args.seed)


def cmd_enumerate(args) -> int:
    cfg = _config(args)
    rows = enumeration_rows(enumerate_points(cfg.s1_max))
    text = to_csv(rows, CSV_HEADER) if args.format == "csv" else to_json(rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_hull(args) -> int:
    cfg = _config(args)
    cloud = enumerate_points(cfg.s1_max)
    h = hull_of(cloud)
    summary = hull_summary(cloud, h)
    if args.format == "csv":
        _emit(to_csv(hull_rows(summary), HULL_CSV_HEADER), args.out)
    else:
        _emit(to_json(summary), args.out)
    if args.figure:
        from .plotting import write_svg
        write_svg(args.figure, cloud, h)
    ok = not summary["extra_vertices"] and not summary["corners_missing"]
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    cfg = _config(args)
    report = build_report(cfg)
    _emit(to_json(report), args.out)
    if args.figure:
        from .plotting import write_svg
        write_svg(args.figure, enumerate_points(cfg.s1_max))
    passed = report_passed(report)
    for name, step in report["steps"].items():
        print(f"{name}: {step['status']}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_cone_check(args) -> int:
    cfg = _config(args)
    vec = [as_rational(v) for v in args.coeffs]
    verdict = contains(vec, cfg.m_max).to_dict()
    _emit(to_json(verdict), args.out)
    return EXIT_OK


def cmd_corollary(args) -> int:
    cfg = _config(args)
    rep = corollary_check(enumerate_points(cfg.s1_max), s1_max=cfg.s1_max)
    _emit(to_json({"config": {"s1_max": cfg.s1_max}, **rep.to_dict()}), args.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_plot(args) -> int:
    from .plotting import write_svg
    cfg = _config(args)
    write_svg(args.out or "region.svg", enumerate_points(cfg.s1_max), cap=args.cap)
    return EXIT_OK


# rationals such as "-1/6" must stay positional, not be read as options
_RATIONAL_LIKE = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-s1", type=int, default=40, metavar="N",
                        help="enumerate tuples with s1 <= N (default 40)")
    common.add_argument("--m-max", type=int, default=200, metavar="N",
                        help="largest edge index for per-m checks (default 200)")
    common.add_argument("--seed", type=int, default=0, metavar="N",
                        help="seed for randomized checks (default 0)")
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")

    parser = argparse.ArgumentParser(
        prog="scichern",
        description="Chern ratio geography of complete intersection threefolds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="dump the ratio points")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("hull", parents=[common], help="convex hull and corner matching")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.add_argument("--figure", metavar="PATH", help="also write the region plot (SVG)")
    p.set_defaults(func=cmd_hull)

    p = sub.add_parser("verify", parents=[common], help="run every verification step")
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--figure", metavar="PATH", help="also write the region plot (SVG)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cone-check", parents=[common],
                       help="decide membership of (l1, l2, l3) in the dual cone")
    p.add_argument("coeffs", nargs=3, metavar="L",
                   help='coefficients of c1^3, c1c2, c3 as "p/q"')
    p.add_argument("--format", choices=["json"], default="json")
    p._negative_number_matcher = _RATIONAL_LIKE
    p.set_defaults(func=cmd_cone_check)

    p = sub.add_parser("corollary", parents=[common], help="cone identities and sweeps")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_corollary)

    p = sub.add_parser("plot", parents=[common], help="write the region plot (SVG)")
    p.add_argument("--format", choices=["svg"], default="svg")
    p.add_argument("--cap", type=int, default=12, metavar="M",
                   help="draw edge lines for m <= M (default 12)")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BudgetTooSmall, ParseError, ValueError) as exc:
        print(f"scichern: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SciChernError as exc:
        print(f"scichern: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"scichern: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
