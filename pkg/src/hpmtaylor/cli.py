"""Command-line front end.

    hpmtaylor solve <file> [--order N] [--recognize] [--json]
    hpmtaylor hpm-check <file> --terms K [--json]
    hpmtaylor eval <file> --at x=1,y=1/2 --t 1/2 [--order N] [--json]
    hpmtaylor corpus [--order N] [--json]

``<file>`` may also name a built-in corpus entry (``example1`` .. ``example6``).
Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import corpus
from .parser import ParseError
from .polyalg import AlgebraError
from .problem import MAX_ORDER, ProblemFileError, ProblemSpec, load_problem
from .report import run_corpus, run_eval, run_hpm_check, run_solve, to_json, to_text

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(target: str) -> ProblemSpec:
    path = Path(target)
    if not path.exists() and target in corpus.IDS:
        return corpus.get_entry(target).spec
    return load_problem(path)


def _order(text: str) -> int:
    n = int(text)
    if not 1 <= n <= MAX_ORDER:
        raise argparse.ArgumentTypeError(f"order must lie in [1, {MAX_ORDER}]")
    return n


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None


def _assignment(text: str) -> dict[str, Fraction]:
    point = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"expected var=value, got {item!r}")
        point[name.strip()] = _rational(value)
    return point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hpmtaylor", description="Exact time-power-series solver for heat-like and wave-like problems.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute the series coefficients")
    p.add_argument("file")
    p.add_argument("--order", type=_order)
    p.add_argument("--recognize", action="store_true", help="identify the closed form")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("hpm-check", help="compare homotopy-perturbation terms with the Taylor series")
    p.add_argument("file")
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("eval", help="evaluate the truncated series at a point")
    p.add_argument("file")
    p.add_argument("--at", required=True, help="spatial point, e.g. x=1,y=1/2")
    p.add_argument("--t", required=True, dest="time")
    p.add_argument("--order", type=_order)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("corpus", help="run the built-in examples end to end")
    p.add_argument("--order", type=_order)
    p.add_argument("--json", action="store_true")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            report = run_solve(_load(args.file), args.order, args.recognize)
            status = EXIT_OK if report["residual_ok"] else EXIT_FAIL
        elif args.command == "hpm-check":
            if args.terms < 1:
                raise InputError("--terms must be >= 1")
            report = run_hpm_check(_load(args.file), args.terms)
            status = EXIT_OK if report["hpm"]["equal"] else EXIT_FAIL
        elif args.command == "eval":
            report = run_eval(_load(args.file), _assignment(args.at), _rational(args.time), args.order)
            status = EXIT_OK
        else:
            report = run_corpus(args.order)
            status = EXIT_OK if report["verdict"] == "PASS" else EXIT_FAIL
    except (InputError, ProblemFileError, ParseError, AlgebraError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(to_json(report) if args.json else to_text(report))
    return status


if __name__ == "__main__":
    sys.exit(main())
