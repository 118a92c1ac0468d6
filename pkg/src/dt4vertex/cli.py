"""Command-line front end.

Exit codes: 0 pass, 1 mathematical failure, 2 operational error.  The
``weight`` command additionally reports specific math errors with codes 3-8.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from .cache import WeightCache
from .combinatorics import omega_c
from .errors import (
    BadChartError,
    DT4Error,
    MathError,
    NotConstantError,
    PoleAtSpecialization,
    UnpairableError,
    WrongShapeError,
    ZeroAtSpecialization,
    ZeroWeightError,
)
from .localization import tautological_factor
from .partitions import enumerate_partitions, from_json, key_str, partitions_up_to, to_json
from .verifier import (
    SignAssignment,
    golden_partitions,
    build_sign_assignment,
    canonical_weight,
    load_charts,
    omega_from_dt4,
    sign_uniqueness,
    toric_series,
    verify_affine,
    verify_counting,
    verify_nekrasov,
    verify_specconj,
)

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
MATH_EXIT_CODES = {
    ZeroWeightError: 3,
    UnpairableError: 4,
    PoleAtSpecialization: 5,
    ZeroAtSpecialization: 6,
    NotConstantError: 7,
    WrongShapeError: 8,
}
TARGETS = ("affine", "nekrasov", "counting", "specconj", "toric")

log = logging.getLogger("dt4vertex")


class OperationalError(Exception):
    pass


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except OSError as exc:
        raise OperationalError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise OperationalError(f"malformed JSON in {path}: {exc}") from None


def _emit(obj, out: str | None = None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if out:
        Path(out).write_text(text + "\n")
    print(text)


def _weight_fn(cache: WeightCache | None):
    return cache.weight if cache is not None else canonical_weight


def cmd_enumerate(args) -> int:
    for pi in enumerate_partitions(args.dim, args.size):
        print(json.dumps(to_json(pi), separators=(",", ":")))
    return EXIT_PASS


def cmd_weight(args) -> int:
    try:
        pi = from_json(_read_json(args.partition))
    except ValueError as exc:
        raise OperationalError(f"invalid partition: {exc}") from None
    if pi.dim != 3:
        raise OperationalError("weights are defined for solid partitions (dim 3)")
    cache = WeightCache.from_env()
    d = None
    if args.d:
        try:
            d = tuple(int(x) for x in args.d.split(","))
        except ValueError:
            raise OperationalError(f"--d expects four integers, got {args.d!r}") from None
        if len(d) != 4:
            raise OperationalError(f"--d expects four integers, got {args.d!r}")
    try:
        w = _weight_fn(cache)(pi)
        out = {
            "key": key_str(pi),
            "size": pi.size,
            "height": pi.height,
            "w": w.to_json(),
            "w_text": str(w),
            "L": tautological_factor(pi, d).to_json(),
            "d": list(d) if d else "symbolic",
        }
        if args.omega:
            entry = cache.lookup(pi).payload if cache is not None else None
            if entry is not None and entry.get("omega") is not None:
                out["omega"], out["sign"] = entry["omega"], entry["sign"]
            else:
                res = omega_from_dt4(pi)
                out["omega"], out["sign"] = str(res.omega), res.sign
            out["omega_c"] = str(omega_c(pi))
    except MathError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        for cls, code in MATH_EXIT_CODES.items():
            if isinstance(exc, cls):
                return code
        return EXIT_FAIL
    _emit(out)
    return EXIT_PASS


def _load_signs(path: str | None) -> SignAssignment | None:
    if path is None:
        return None
    try:
        return SignAssignment.from_jsonl(Path(path).read_text(), provenance="user-supplied")
    except OSError as exc:
        raise OperationalError(f"cannot read {path}: {exc}") from None
    except ValueError as exc:
        raise OperationalError(str(exc)) from None


def cmd_verify(args) -> int:
    if args.charts and args.target != "toric":
        raise OperationalError("--charts only applies to the toric target")
    if args.target == "toric" and not args.charts:
        raise OperationalError("the toric target needs --charts FILE")
    if args.signs and args.target in ("counting", "specconj"):
        raise OperationalError(f"--signs does not apply to the {args.target} target")
    signs = _load_signs(args.signs)
    cache = WeightCache.from_env()
    unsafe = args.unsafe_order
    order, trials, seed = args.max_order, args.trials, args.seed
    try:
        if args.target == "affine":
            report = verify_affine(order, trials, seed, signs, workers=args.workers,
                                   weight=_weight_fn(cache), unsafe=unsafe)
        elif args.target == "nekrasov":
            report = verify_nekrasov(order, trials, seed, signs, workers=args.workers,
                                     weight=_weight_fn(cache), unsafe=unsafe)
        elif args.target == "counting":
            report = verify_counting(order, use_dt4=args.dt4, dim=args.dim, unsafe=unsafe)
        elif args.target == "specconj":
            report = verify_specconj(order, unsafe=unsafe)
        else:
            charts = load_charts(_read_json(args.charts))
            report = toric_series(charts, order, trials, seed, signs, workers=args.workers,
                                  unsafe=unsafe)
    except KeyError as exc:
        raise OperationalError(f"sign file is incomplete: {exc}") from None
    except ValueError as exc:
        raise OperationalError(str(exc)) from None
    _emit(report.to_json(), args.out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _table_rows():
    rows = []
    for z, pi, expected in golden_partitions():
        res = omega_from_dt4(pi)
        oc = omega_c(pi)
        rows.append(
            {
                "Z": z,
                "size": pi.size,
                "height": pi.height,
                "omega": str(res.omega),
                "omega_c": str(oc),
                "expected": str(expected),
                "match": res.omega == oc == expected,
            }
        )
    return rows


def cmd_table(args) -> int:
    if args.which == "golden":
        rows = _table_rows()
        fields = ["Z", "size", "height", "omega", "omega_c", "expected", "match"]
    else:
        rows = [
            {"key": key_str(pi), "size": pi.size, "height": pi.height, "omega_c": str(omega_c(pi))}
            for pi in partitions_up_to(3, args.max_order)
        ]
        fields = ["key", "size", "height", "omega_c"]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        widths = {f: max(len(f), *(len(str(r[f])) for r in rows)) for f in fields}
        print("  ".join(f.ljust(widths[f]) for f in fields))
        for r in rows:
            print("  ".join(str(r[f]).ljust(widths[f]) for f in fields))
    if args.which == "golden" and not all(r["match"] for r in rows):
        return EXIT_FAIL
    return EXIT_PASS


def cmd_signs(args) -> int:
    if args.action == "build":
        signs = build_sign_assignment(args.max_order, workers=args.workers)
        text = signs.to_jsonl()
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_PASS
    result = sign_uniqueness(args.max_order, args.mode, seed=args.seed)
    _emit(result, args.out)
    return EXIT_PASS if result["unique"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dt4vertex", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list d-partitions as JSON lines")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("weight", help="vertex weight and tautological factor of a partition")
    p.add_argument("--partition", required=True, help="partition JSON file, or - for stdin")
    p.add_argument("--d", help="bundle character d1,d2,d3,d4 (symbolic if omitted)")
    p.add_argument("--omega", action="store_true", help="also report omega and omega^c")
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("verify", help="check a generating-series identity")
    p.add_argument("target", choices=TARGETS)
    p.add_argument("--max-order", type=int, default=6)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--signs", help="JSON-lines sign assignment overriding the positivity rule")
    p.add_argument("--charts", help="toric chart file")
    p.add_argument("--out", help="write the report JSON here as well")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--dt4", action="store_true", help="counting: use DT4-side weights")
    p.add_argument("--dim", type=int, default=3, help="counting: partition dimension")
    p.add_argument("--unsafe-order", action="store_true", help="allow orders above 6")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="weight tables")
    p.add_argument("which", choices=("golden", "omega"))
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--max-order", type=int, default=4)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("signs", help="build or test orientation signs")
    p.add_argument("action", choices=("build", "uniqueness"))
    p.add_argument("--max-order", type=int, default=6)
    p.add_argument("--mode", choices=("brute", "incremental"), default="incremental")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_signs)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_PASS
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except MathError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (OperationalError, BadChartError, DT4Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
