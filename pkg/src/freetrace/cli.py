"""Command-line interface.

Every polynomial argument is accepted inline or as a path to a UTF-8 file
holding one expression (a trailing newline is tolerated).  All numeric
output is exact rational strings except witness reports, which are floating
point by nature.

Exit codes: 0 success or positive decision, 3 negative decision (no
certificate, not equivalent, no witness, mismatch), 2 usage error,
1 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .bounds import degree_bound, degree_bound_refined, matrix_size_bound
from .certify import certificate_to_json_dict, certify
from .cyclic import cyclic_canonicalize, cyclic_vector_to_json_dict
from .mateval import eval_poly, tuple_from_json_dict
from .moment import (
    extract_moments,
    moments_from_json_dict,
    moments_to_json_dict,
    realization_from_json_dict,
    realization_to_json_dict,
    realize,
)
from .poly import FreePoly, ParseError, format_poly, parse, scalar_to_str, word_to_str
from .witness import DEFAULT_SEED, report_to_json_dict, search_witness

GRAMMAR = """\
polynomial grammar:
  expr   := ['-'] term (('+'|'-') term)*
  term   := coeff factor* | factor+
  factor := var ('^' nat)? | '(' expr ')'
  var    := 'x' nat          (1-based index, at most --g)
  coeff  := nat ('/' nat)?
'*' between the parts of a term is optional whitespace."""

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_NEGATIVE = 3


class UsageError(Exception):
    pass


def _read_poly(source: str, g: int) -> FreePoly:
    text = source
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as handle:
            text = handle.read()
    try:
        return parse(text.strip(), g)
    except ParseError as exc:
        raise UsageError(f"in polynomial {source!r}: {exc}") from exc


def _read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON file {path!r}: {exc}") from exc


def _emit(data: dict) -> None:
    print(json.dumps(data, indent=2))


def _cmd_normalize(args: argparse.Namespace) -> int:
    poly = _read_poly(args.expr, args.g)
    vector = cyclic_canonicalize(poly)
    if args.json:
        _emit(cyclic_vector_to_json_dict(vector))
    else:
        canonical = FreePoly.from_terms(vector.coords, args.g)
        print(format_poly(canonical))
    return EXIT_OK


def _cmd_cyceq(args: argparse.Namespace) -> int:
    left = _read_poly(args.expr1, args.g)
    right = _read_poly(args.expr2, args.g)
    same = cyclic_canonicalize(left).coords == cyclic_canonicalize(right).coords
    print("equivalent" if same else "not equivalent")
    return EXIT_OK if same else EXIT_NEGATIVE


def _cmd_certify(args: argparse.Namespace) -> int:
    constraints = [_read_poly(source, args.g) for source in args.constraints]
    target = _read_poly(args.target, args.g)
    result = certify(constraints, target)
    _emit(certificate_to_json_dict(result))
    return EXIT_OK if result.implication_holds else EXIT_NEGATIVE


def _cmd_bounds(args: argparse.Namespace) -> int:
    try:
        degrees = tuple(int(part) for part in args.degrees.split(","))
    except ValueError as exc:
        raise UsageError(f"invalid --degrees list: {exc}") from exc
    try:
        base = degree_bound(args.n, degrees)
        refined = degree_bound_refined(args.n, degrees)
        size = None
        if args.g is not None and args.target_degree is not None:
            size = matrix_size_bound(degrees, args.target_degree, args.g)
        elif (args.g is None) != (args.target_degree is None):
            raise UsageError("--g and --target-degree must be given together")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        record: dict = {"N": str(base), "N_prime": str(refined)}
        if size is not None:
            record["size_bound"] = str(size)
        _emit(record)
    else:
        print(f"N = {base}")
        print(f"N' = {refined}")
        if size is not None:
            print(f"size_bound = {size}")
    return EXIT_OK


def _cmd_eval(args: argparse.Namespace) -> int:
    poly = _read_poly(args.expr, args.g)
    point = tuple_from_json_dict(_read_json(args.tuple))
    if point.g != args.g:
        raise UsageError(
            f"tuple length {point.g} does not match --g {args.g}"
        )
    matrix = eval_poly(poly, point)
    if args.json:
        _emit(
            {
                "trace": scalar_to_str(matrix.trace()),
                "matrix": [[scalar_to_str(v) for v in row] for row in matrix.entries],
            }
        )
    else:
        print(scalar_to_str(matrix.trace()))
    return EXIT_OK


def _cmd_realize(args: argparse.Namespace) -> int:
    sequence = moments_from_json_dict(_read_json(args.moments))
    _emit(realization_to_json_dict(realize(sequence)))
    return EXIT_OK


def _cmd_verify_realization(args: argparse.Namespace) -> int:
    sequence = moments_from_json_dict(_read_json(args.moments))
    realization = realization_from_json_dict(_read_json(args.realization))
    if (realization.nvars, realization.degree) != (sequence.nvars, sequence.degree):
        raise UsageError("moment sequence and realization disagree on g or d")
    recovered = extract_moments(realization)
    mismatches = [
        rep
        for rep in sequence.values
        if sequence.values[rep] != recovered.values[rep]
    ]
    if not mismatches:
        print("ok")
        return EXIT_OK
    for rep in sorted(mismatches, key=lambda w: (len(w), w)):
        print(
            f"mismatch at {word_to_str(rep) or '1'}: expected "
            f"{sequence.values[rep]}, realization gives {recovered.values[rep]}"
        )
    return EXIT_NEGATIVE


def _cmd_witness(args: argparse.Namespace) -> int:
    constraints = [_read_poly(source, args.g) for source in args.constraints]
    target = _read_poly(args.target, args.g)
    seed = args.seed if args.seed is not None else args.global_seed
    report = search_witness(
        constraints,
        target,
        n=args.size,
        tol=args.tol,
        restarts=args.restarts,
        seed=seed,
    )
    if report is None:
        print(json.dumps({"found": False}))
        return EXIT_NEGATIVE
    _emit({"found": True, **report_to_json_dict(report)})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freetrace",
        description=(
            "Exact trace-implication certificates for free noncommutative "
            "polynomials, with constructive tracial moment realization."
        ),
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--seed",
        dest="global_seed",
        type=int,
        default=DEFAULT_SEED,
        help="seed for randomized subcommands (fixed default, never entropy)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "normalize",
        help="canonical form modulo sums of commutators",
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("expr", help="polynomial (inline or file path)")
    p.add_argument("--g", type=int, required=True, help="number of variables")
    p.add_argument("--json", action="store_true", help="emit class coordinates as JSON")
    p.set_defaults(handler=_cmd_normalize)

    p = sub.add_parser(
        "cyceq",
        help="decide cyclic equivalence of two polynomials",
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("expr1")
    p.add_argument("expr2")
    p.add_argument("--g", type=int, required=True)
    p.set_defaults(handler=_cmd_cyceq)

    p = sub.add_parser(
        "certify",
        help="decide the dimension-free trace implication",
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument(
        "--constraints",
        nargs="*",
        default=[],
        metavar="POLY",
        help="constraint polynomials (inline or file paths)",
    )
    p.add_argument("--target", required=True, metavar="POLY")
    p.add_argument("--g", type=int, required=True)
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("bounds", help="effective degree and matrix-size bounds")
    p.add_argument(
        "--degrees", required=True, help="comma-separated nonincreasing degrees"
    )
    p.add_argument("--n", type=int, required=True, help="commutative variable count")
    p.add_argument("--g", type=int, help="free variable count (for the size bound)")
    p.add_argument(
        "--target-degree", type=int, help="degree of the target polynomial"
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser(
        "eval",
        help="evaluate a polynomial at a rational matrix tuple",
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("expr")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--tuple", required=True, help="matrix tuple JSON file")
    p.add_argument("--json", action="store_true", help="also print the matrix value")
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser(
        "realize", help="realize a truncated tracial moment sequence"
    )
    p.add_argument("--moments", required=True, help="moment sequence JSON file")
    p.set_defaults(handler=_cmd_realize)

    p = sub.add_parser(
        "verify-realization",
        help="check that a realization reproduces a moment sequence exactly",
    )
    p.add_argument("--moments", required=True)
    p.add_argument("--realization", required=True)
    p.set_defaults(handler=_cmd_verify_realization)

    p = sub.add_parser(
        "witness",
        help="search for a floating-point counterexample tuple",
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--constraints", nargs="*", default=[], metavar="POLY")
    p.add_argument("--target", required=True, metavar="POLY")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--size", type=int, required=True, help="matrix size n")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=None, help="overrides the global --seed")
    p.set_defaults(handler=_cmd_witness)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
