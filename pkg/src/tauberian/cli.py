"""Command-line front end.

    tauberian constants thm1 --alpha 1
    tauberian verify --theorem thm2 --q 3 --suite 1000 --seed 42
    tauberian verify --theorem thm1 --alpha 1 --measure m.json --zeta0 2.5,0.5 --default-contour
    tauberian kernels --q 4
    tauberian demo --dimension 1 --count 10000 --alpha 1 --lambdas 100,1000

Exit codes: 0 success (inequality holds), 1 violation, 2 bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import asdict

from .complexpath import EvaluationPoint, contour_from_json, default_contour
from .constants import ALPHA_LT_1, GENERAL, thm1_constants, thm2_constants, thm3_constants
from .kernels import kernels_json
from .measure import measure_from_json
from .verify import (demo_weyl, pleijel_report, run_suite, thm1_report, thm2_report,
                     thm3_report)

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT = 0, 1, 2

_REGIMES = {"general": GENERAL, "lt1": ALPHA_LT_1, ALPHA_LT_1: ALPHA_LT_1}


class InputError(ValueError):
    pass


def _complex_pair(text: str) -> complex:
    try:
        re_, im_ = (float(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}") from exc
    return complex(re_, im_)


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _sanitize(obj):
    """Replace non-finite floats so the output is strict JSON."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return "nan" if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    return obj


def _dump(obj) -> str:
    return json.dumps(_sanitize(obj), indent=2, sort_keys=True) + "\n"


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tauberian", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="constant tables")
    p.add_argument("which", choices=["thm1", "thm2", "thm3"])
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--regime", choices=sorted(_REGIMES), default="general")

    p = sub.add_parser("verify", parents=[common], help="check an inequality on one instance or a random suite")
    p.add_argument("--theorem", choices=["pleijel", "thm1", "thm2", "thm3"], default="thm1")
    p.add_argument("--alpha", type=float)
    p.add_argument("--q", type=int)
    p.add_argument("--regime", choices=sorted(_REGIMES), default="general")
    p.add_argument("--measure", help="measure JSON {\"atoms\": [{\"lambda\", \"weight\"}]}")
    p.add_argument("--zeta0", type=_complex_pair, help="evaluation point RE,IM")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--contour", help="contour JSON {\"vertices\": [{\"re\", \"im\"}]}")
    g.add_argument("--default-contour", action="store_true")
    p.add_argument("--suite", type=int, help="run N seeded random instances instead")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float)
    p.add_argument("--remark1", action="store_true",
                   help="allow lambda0 on an atom (midpoint N for thm2)")
    p.add_argument("--sharp", action="store_true", help="thm1: use c3/(2 pi) as multiplier")

    p = sub.add_parser("kernels", parents=[common], help="exact P_{q,m} numerators")
    p.add_argument("--q", type=int, default=2)

    p = sub.add_parser("demo", parents=[common], help="Weyl-law Riesz mean table (CSV)")
    p.add_argument("--dimension", type=int, default=1)
    p.add_argument("--count", type=int, default=10_000)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--lambdas", type=_float_list, default=[100.0, 1000.0])
    return parser


def cmd_constants(args) -> tuple[str, int]:
    if args.which == "thm1":
        rec = thm1_constants(args.alpha, _REGIMES[args.regime]).to_json()
    elif args.which == "thm2":
        rec = thm2_constants(args.q).to_json()
    else:
        rec = thm3_constants(args.q, args.alpha).to_json()
    return _dump(rec), EXIT_OK


def _theorem_kwargs(args) -> dict:
    kw = {}
    if args.theorem in ("thm1", "thm3") and args.alpha is not None:
        kw["alpha"] = args.alpha
    if args.theorem in ("thm2", "thm3") and args.q is not None:
        kw["q"] = args.q
    if args.theorem == "thm1":
        kw["regime"] = _REGIMES[args.regime]
    return kw


def cmd_verify(args) -> tuple[str, int]:
    if args.tolerance is not None and not args.tolerance > 0:
        raise InputError("--tolerance must be positive")
    kw = _theorem_kwargs(args)
    if args.suite is not None:
        if args.suite < 1:
            raise InputError("--suite needs a positive trial count")
        params = None
        if args.alpha is not None or args.q is not None:
            params = [{k: v for k, v in kw.items()}]
        res = run_suite(args.theorem, args.suite, args.seed, params=params,
                        remark1=args.remark1)
        return _dump(res), EXIT_OK if res["violations"] == 0 else EXIT_VIOLATED

    if args.measure is None:
        raise InputError("--measure is required unless --suite is given")
    measure = measure_from_json(_load_json(args.measure))
    if args.contour:
        contour = contour_from_json(_load_json(args.contour))
        if args.zeta0 is not None and args.zeta0 != contour.start:
            raise InputError("--zeta0 does not match the contour's first vertex")
    else:
        if args.zeta0 is None:
            raise InputError("--zeta0 is required with --default-contour")
        contour = default_contour(EvaluationPoint.from_complex(args.zeta0))
    point = contour.point
    common = {"tolerance": args.tolerance}
    if args.theorem == "pleijel":
        rep = pleijel_report(measure, point, contour, remark1=args.remark1, **common)
    elif args.theorem == "thm1":
        rep = thm1_report(measure, point, contour, remark1=args.remark1, sharp=args.sharp,
                          **kw, **common)
    elif args.theorem == "thm2":
        rep = thm2_report(measure, point, contour, remark1=args.remark1, **kw, **common)
    else:
        if args.remark1:
            raise InputError("--remark1 does not apply to thm3")
        rep = thm3_report(measure, point, contour, **kw, **common)
    return _dump(rep.to_json()), EXIT_OK if rep.holds else EXIT_VIOLATED


def cmd_kernels(args) -> tuple[str, int]:
    return _dump(kernels_json(args.q)), EXIT_OK


def cmd_demo(args) -> tuple[str, int]:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RuntimeWarning)
        rows = demo_weyl(args.dimension, args.count, args.alpha, args.lambdas)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    buf = io.StringIO()
    fields = ["lambda0", "riesz_mean", "main_term", "error_bound", "relative_gap"]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(float(v)) for k, v in asdict(row).items()})
    return buf.getvalue(), EXIT_OK


_COMMANDS = {"constants": cmd_constants, "verify": cmd_verify,
             "kernels": cmd_kernels, "demo": cmd_demo}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = _COMMANDS[args.command](args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
