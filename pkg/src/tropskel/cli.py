"""Command-line front end.

JSON documents go to stdout (or ``--out``); scenario reports are tab-separated
lines.  Figures land in the directory named by ``--out-dir`` or the
``TROPSKEL_OUT`` environment variable.

Exit codes: 0 success, 1 a check failed or a certificate was refuted,
2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .certify import REFUTED, certify_faithful, kmm_check, vertex_mult_one, well_spaced_check
from .elimination import LatticeMap, newton_polygon_from_curve, pushforward
from .errors import InputError, TropskelError
from .exactnum import fmt_rat, parse_puiseux, rat
from .newton import TropicalPolynomial, corner_locus, dual_subdivision, verify_duality
from .potential import Divisor, PLFunction, solve_rational_function, solve_slope
from .render import write_svg
from .scenarios import REGISTRY, run_scenario
from .skeleton import Skeleton, build_p1_skeleton, build_tate_skeleton
from .tropicalize import TropicalComplex, check_balancing, trop_map

OUT_ENV = "TROPSKEL_OUT"


def _load(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from None


def _emit(doc, out: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _out_dir(arg: str | None) -> Path | None:
    value = arg or os.environ.get(OUT_ENV)
    return Path(value) if value else None


def _parse_divisor(spec: str) -> Divisor:
    """``"0=1,t=1,inf=-2"`` or a JSON object."""
    if spec.lstrip().startswith("{"):
        return Divisor.from_dict(json.loads(spec))
    orders = {}
    for part in filter(None, (p.strip() for p in spec.split(","))):
        key, sep, value = part.rpartition("=")
        if not sep or not key:
            raise InputError(f"bad divisor entry {part!r}; expected id=order")
        orders[key.strip()] = orders.get(key.strip(), 0) + int(value)
    return Divisor(orders)


def _parse_vector(text: str) -> tuple:
    return tuple(rat(x.strip()) for x in text.split(","))


def _load_complex(path: str) -> TropicalComplex:
    return TropicalComplex.from_dict(_load(path))


def _print_balancing(tc: TropicalComplex) -> None:
    report = check_balancing(tc)
    print(f"# balancing\t{'PASS' if report.passed else 'FAIL'}", file=sys.stderr)


# -- subcommands ---------------------------------------------------------------

def cmd_skeleton(args) -> int:
    if args.kind == "p1":
        points = [p.strip() for p in args.punctures.split(",") if p.strip()]
        for p in points:
            parse_puiseux(p)
        sk = build_p1_skeleton(points, include_infinity=not args.no_infinity)
    else:
        placements = []
        for item in args.puncture or []:
            name, sep, pos = item.partition("=")
            if not sep:
                raise InputError(f"bad puncture {item!r}; expected id=position")
            placements.append((name, rat(pos)))
        sk = build_tate_skeleton(rat(args.length), placements)
    _emit(sk.to_dict(), args.out)
    return 0


def cmd_potential(args) -> int:
    sk = Skeleton.from_dict(_load(args.skeleton))
    divisor = _parse_divisor(args.divisor)
    if args.leading_valuation is not None:
        pl = solve_rational_function(sk, divisor, rat(args.leading_valuation))
    else:
        pl = solve_slope(sk, divisor)
    doc = pl.to_dict(include_skeleton=not args.bare)
    doc["values"] = {k: fmt_rat(v) for k, v in pl.values().items()}
    _emit(doc, args.out)
    return 0


def cmd_trop(args) -> int:
    sk = Skeleton.from_dict(_load(args.skeleton))
    coords = []
    for spec in args.divisor or []:
        divisor_text, _, lead = spec.partition("@")
        divisor = _parse_divisor(divisor_text)
        if lead:
            coords.append(solve_rational_function(sk, divisor, rat(lead)))
        else:
            coords.append(solve_slope(sk, divisor))
    for path in args.coord or []:
        coords.append(PLFunction.from_dict(_load(path), skeleton=sk))
    if not coords:
        raise InputError("give at least one --divisor or --coord")
    tc, report = trop_map(sk, coords, merge_collinear=args.merge_collinear)
    _print_balancing(tc)
    _emit({"complex": tc.to_dict(), "expansion": report.to_dict()}, args.out)
    return 0


def cmd_newton(args) -> int:
    if args.json:
        tp = TropicalPolynomial.from_dict(_load(args.polynomial))
    else:
        tp = TropicalPolynomial.from_string(args.polynomial, dehomogenize=args.dehomogenize)
    ds = dual_subdivision(tp)
    tc = corner_locus(tp, ds)
    if args.merge_collinear:
        tc = tc.merged()
    duality = verify_duality(tp, ds)
    print(f"# duality\t{'PASS' if duality.passed else 'FAIL'}", file=sys.stderr)
    _print_balancing(tc)
    _emit(
        {
            "polynomial": tp.to_dict(),
            "subdivision": ds.to_dict(),
            "unimodular": ds.is_unimodular(),
            "complex": tc.to_dict(),
        },
        args.out,
    )
    return 0 if duality.passed else 1


def cmd_certify(args) -> int:
    tc = _load_complex(args.complex)
    if args.faithful is not None:
        cert = certify_faithful(tc, args.faithful)
    elif args.kmm is not None:
        cert = kmm_check(tc, rat(args.kmm))
    elif args.vertex is not None:
        cert = vertex_mult_one(tc, _parse_vector(args.vertex))
    else:
        normal, _, level = args.well_spaced.partition(":")
        cert = well_spaced_check(tc, (tuple(int(x) for x in normal.split(",")), rat(level or "0")))
    _emit(cert.to_dict(), args.out)
    return 1 if cert.verdict == REFUTED else 0


def cmd_pushforward(args) -> int:
    tc = _load_complex(args.complex)
    rows = tuple(tuple(int(x) for x in row.split(",")) for row in args.matrix.split(";"))
    image = pushforward(tc, LatticeMap(rows, args.delta), merge_collinear=args.merge_collinear)
    doc = {"complex": image.to_dict()}
    if image.dim == 2 and image.rays:
        doc["newton_polygon"] = newton_polygon_from_curve(image).to_dict()
    _emit(doc, args.out)
    return 0


def cmd_render(args) -> int:
    data = _load(args.input)
    if data.get("schema") == "skeleton.v1":
        obj = Skeleton.from_dict(data)
    else:
        obj = TropicalComplex.from_dict(data.get("complex", data))
    write_svg(obj, args.output)
    return 0


def cmd_scenario(args) -> int:
    if args.list:
        for name, sc in REGISTRY.items():
            print(f"{name}\t{sc.summary}")
        return 0
    names = list(REGISTRY) if args.all else args.names
    if not names:
        raise InputError("name at least one scenario, or pass --all or --list")
    out_dir = _out_dir(args.out_dir)
    start = time.perf_counter()
    lines = ["scenario\tfield\tstatus\tbasis\texpected\tcomputed"]
    failed = 0
    for name in names:
        report = run_scenario(name)
        lines.extend(report.lines())
        failed += not report.passed
        if out_dir is not None:
            for key, obj in report.artifacts.items():
                stem = out_dir / f"{name}-{key}"
                stem.parent.mkdir(parents=True, exist_ok=True)
                Path(f"{stem}.json").write_text(json.dumps(obj.to_dict(), indent=2) + "\n", encoding="utf-8")
                if isinstance(obj, Skeleton) or obj.dim == 2:
                    write_svg(obj, f"{stem}.svg")
    elapsed = time.perf_counter() - start
    lines.append(f"# {len(names) - failed}/{len(names)} scenarios passed in {elapsed:.3f}s")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if out_dir is not None:
        (out_dir / "report.tsv").write_text(text, encoding="utf-8")
    return 1 if failed else 0


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropskel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("skeleton", help="build a line or Tate skeleton")
    p.add_argument("kind", choices=["p1", "tate"])
    p.add_argument("--punctures", default="", help="comma-separated finite punctures (p1)")
    p.add_argument("--no-infinity", action="store_true", help="do not puncture at infinity (p1)")
    p.add_argument("--length", default="1", help="loop length (tate)")
    p.add_argument("--puncture", action="append", help="id=position on the circle (tate, repeatable)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_skeleton)

    p = sub.add_parser("potential", help="solve for -log|f| from its divisor")
    p.add_argument("skeleton")
    p.add_argument("--divisor", required=True, help='"id=order,..." or a JSON object')
    p.add_argument("--leading-valuation", help="val of the leading constant (line skeleta only)")
    p.add_argument("--bare", action="store_true", help="omit the embedded skeleton")
    p.add_argument("--out")
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("trop", help="tropicalize a skeleton through coordinate functions")
    p.add_argument("skeleton")
    p.add_argument("--divisor", action="append", help='coordinate divisor, optionally "...@leading_valuation"')
    p.add_argument("--coord", action="append", help="plfunction.v1 file")
    p.add_argument("--merge-collinear", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_trop)

    p = sub.add_parser("newton", help="corner locus of a plane polynomial")
    p.add_argument("polynomial", help="polynomial text, or a troppoly.v1 file with --json")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dehomogenize", action="store_true", help="set z = 1")
    p.add_argument("--merge-collinear", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_newton)

    p = sub.add_parser("certify", help="certificates on a tropcomplex.v1 file")
    p.add_argument("complex")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--faithful", type=int, metavar="GENUS")
    group.add_argument("--kmm", metavar="VAL_J")
    group.add_argument("--vertex", metavar="X,Y,...", help="vertex multiplicity one")
    group.add_argument("--well-spaced", metavar="U1,U2,...:C")
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("pushforward", help="push a curve forward along an integer matrix")
    p.add_argument("complex")
    p.add_argument("--matrix", required=True, help='rows separated by ";", entries by ","')
    p.add_argument("--delta", type=int, default=1)
    p.add_argument("--merge-collinear", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pushforward)

    p = sub.add_parser("scenario", help="run registered worked examples")
    p.add_argument("names", nargs="*")
    p.add_argument("--all", action="store_true")
    p.add_argument("--list", action="store_true")
    p.add_argument("--out-dir", help=f"where to write figures (default ${OUT_ENV})")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("render", help="draw a skeleton or plane complex as SVG")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TropskelError, OSError, ValueError, KeyError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"tropskel: error: {message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
