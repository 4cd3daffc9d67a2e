"""Command-line front end: pattern fixtures, inertia computation, analysis pipelines.

Exit codes: 0 success, 1 usage error, 2 I/O or parse error, 3 a certified
counterexample was found, 4 an internal identity check failed (which the
underlying theory rules out, so it signals an engine bug).

JSON output is canonical (sorted keys, fixed layout) and every command is
bit-reproducible for a fixed --seed; RI_SEED supplies the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .analysis import (
    SearchBudgetError,
    Verdict,
    WitnessCertificationError,
    canonical_dumps,
    falsify_requires,
    run_lemma_suite,
    witness_suite,
)
from .engine import (
    EigenSolverError,
    InternalCheckError,
    NumericTolerance,
    char_poly,
    refined_inertia_exact,
    refined_inertia_numeric,
)
from .patterns import PatternParseError, family_pattern, parse_pattern
from .realization import MembershipError, RealizationConfig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_COUNTEREXAMPLE = 3
EXIT_INTERNAL = 4


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage problems with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    raw = os.environ.get("RI_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(EXIT_USAGE) from None


def _build_parser() -> _Parser:
    parser = _Parser(prog="riq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_family = sub.add_parser("family", parents=[], help="print a family pattern")
    p_family.add_argument("-i", "--family", type=int, required=True, choices=(1, 2, 3))
    p_family.add_argument("-n", "--order", type=int, required=True)
    p_family.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p_inertia = sub.add_parser("inertia", help="refined inertia of a matrix file")
    p_inertia.add_argument("--matrix", required=True, help="matrix JSON file")
    mode = p_inertia.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact engine (rational entries only)")
    mode.add_argument("--numeric", action="store_true", help="dense eigensolver")
    p_inertia.add_argument("--tol", type=float, default=1e-9, help="relative axis tolerance")

    p_witness = sub.add_parser("witness", help="emit the certified witness suite")
    p_witness.add_argument("-i", "--family", type=int, required=True, choices=(1, 2, 3))
    p_witness.add_argument("-n", "--order", type=int, required=True)
    p_witness.add_argument("--out", help="write JSON here instead of stdout")

    p_falsify = sub.add_parser("falsify", help="sample a pattern's class hunting for counterexamples")
    p_falsify.add_argument("--pattern", required=True, help="pattern text file (.sp)")
    p_falsify.add_argument("--budget", type=int, required=True)
    p_falsify.add_argument("--seed", type=int, default=None)
    p_falsify.add_argument("--jobs", type=int, default=1)
    p_falsify.add_argument("--csv", help="also write the histogram as CSV here")

    p_lemmas = sub.add_parser("lemmas", help="validate the exact lemma checks over samples")
    p_lemmas.add_argument("-i", "--family", type=int, required=True, choices=(1, 2, 3))
    p_lemmas.add_argument("-n", "--order", type=int, required=True)
    p_lemmas.add_argument("--samples", type=int, required=True)
    p_lemmas.add_argument("--seed", type=int, default=None)

    p_analyze = sub.add_parser("analyze", help="requires + allows pipeline over a range of orders")
    p_analyze.add_argument("-i", "--family", type=int, required=True, choices=(1, 2, 3))
    p_analyze.add_argument("--n-range", required=True, help="orders as A..B, inclusive")
    p_analyze.add_argument("--budget", type=int, required=True)
    p_analyze.add_argument("--seed", type=int, default=None)
    p_analyze.add_argument("--jobs", type=int, default=1)

    return parser


def _seed_of(args) -> int:
    return args.seed if getattr(args, "seed", None) is not None else _default_seed()


def _cmd_family(args) -> int:
    try:
        pattern = family_pattern(args.family, args.order)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        sys.stdout.write(canonical_dumps(pattern.to_json()))
    else:
        print(pattern.render())
    return EXIT_OK


def _load_matrix(path: str):
    """Load a matrix file; returns (rational_rows or None, float_rows)."""
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    n = data["n"]
    entries = data["entries"]
    if len(entries) != n * n:
        raise ValueError(f"expected {n * n} entries, got {len(entries)}")
    rational: list[Fraction] | None = []
    floats: list[float] = []
    for item in entries:
        if isinstance(item, (list, tuple)) and len(item) == 2:
            value = Fraction(int(item[0]), int(item[1]))
            if rational is not None:
                rational.append(value)
            floats.append(float(value))
        elif isinstance(item, (int, float)):
            rational = None
            floats.append(float(item))
        else:
            raise ValueError(f"entry {item!r} is neither a [num, den] pair nor a number")
    rows_f = [floats[r * n : (r + 1) * n] for r in range(n)]
    rows_q = None
    if rational is not None:
        rows_q = [rational[r * n : (r + 1) * n] for r in range(n)]
    return rows_q, rows_f


def _cmd_inertia(args) -> int:
    try:
        rows_q, rows_f = _load_matrix(args.matrix)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error reading matrix: {exc}", file=sys.stderr)
        return EXIT_IO
    use_exact = args.exact or (not args.numeric and rows_q is not None)
    if use_exact:
        if rows_q is None:
            print("error: matrix has non-rational entries; exact engine unavailable", file=sys.stderr)
            return EXIT_IO
        inertia = refined_inertia_exact(char_poly(rows_q))
        method = "exact"
    else:
        try:
            inertia = refined_inertia_numeric(rows_f, NumericTolerance(axis_eps=args.tol))
        except EigenSolverError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INTERNAL
        method = "numeric"
    sys.stdout.write(canonical_dumps({"inertia": inertia.to_json(), "method": method}))
    return EXIT_OK


def _cmd_witness(args) -> int:
    try:
        suite = witness_suite(args.family, args.order)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (WitnessCertificationError, SearchBudgetError, InternalCheckError) as exc:
        print(f"internal check failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    text = canonical_dumps(suite.to_json_dict())
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            print(f"error writing {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_falsify(args) -> int:
    try:
        with open(args.pattern, "r", encoding="utf-8") as handle:
            pattern = parse_pattern(handle.read())
    except (OSError, PatternParseError) as exc:
        print(f"error reading pattern: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.budget < 0:
        print("error: budget must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    cfg = RealizationConfig(seed=_seed_of(args))
    report = falsify_requires(pattern, args.budget, cfg, jobs=args.jobs)
    if args.csv:
        try:
            with open(args.csv, "w", encoding="utf-8") as handle:
                handle.write(report.histogram_csv())
        except OSError as exc:
            print(f"error writing {args.csv}: {exc}", file=sys.stderr)
            return EXIT_IO
    sys.stdout.write(canonical_dumps(report.to_json_dict()))
    return EXIT_COUNTEREXAMPLE if report.verdict is Verdict.COUNTEREXAMPLE else EXIT_OK


def _cmd_lemmas(args) -> int:
    if args.order < 4 or args.samples < 0:
        print("error: order must be >= 4 and samples nonnegative", file=sys.stderr)
        return EXIT_USAGE
    cfg = RealizationConfig(seed=_seed_of(args))
    try:
        report = run_lemma_suite(args.family, args.order, args.samples, cfg)
    except (MembershipError, InternalCheckError) as exc:
        print(f"internal check failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    print(f"family {args.family}, order {args.order}, samples {report.samples}")
    for label, count in report.check_counts:
        print(f"  {label}: {count}")
    if report.all_passed:
        print("all lemma checks passed")
        return EXIT_OK
    for index, check in report.failures:
        print(f"FAIL sample {index}: {check}")
    return EXIT_INTERNAL


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"range must look like A..B, got {text!r}")
    return int(lo), int(hi)


def _cmd_analyze(args) -> int:
    try:
        lo, hi = _parse_range(args.n_range)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if lo < 4 or hi < lo:
        print("error: order range must satisfy 4 <= A <= B", file=sys.stderr)
        return EXIT_USAGE
    seed = _seed_of(args)
    print(f"family {args.family}, orders {lo}..{hi}, budget {args.budget}, seed {seed}")
    print("n   samples  inside_target  all3_realized  verdict")
    worst = EXIT_OK
    for n in range(lo, hi + 1):
        pattern = family_pattern(args.family, n)
        cfg = RealizationConfig(seed=seed + n)
        report = falsify_requires(pattern, args.budget, cfg, jobs=args.jobs)
        try:
            witness_suite(args.family, n)
            witnesses_ok = "yes"
        except (WitnessCertificationError, SearchBudgetError) as exc:
            witnesses_ok = "NO"
            print(f"internal check failure at order {n}: {exc}", file=sys.stderr)
            worst = max(worst, EXIT_INTERNAL)
        inside = "yes" if report.verdict is not Verdict.COUNTEREXAMPLE else "NO"
        if report.verdict is Verdict.COUNTEREXAMPLE:
            worst = max(worst, EXIT_COUNTEREXAMPLE)
        print(
            f"{n:<3} {report.samples:<8} {inside:<14} {witnesses_ok:<14} {report.verdict.value}"
        )
    return worst


_HANDLERS = {
    "family": _cmd_family,
    "inertia": _cmd_inertia,
    "witness": _cmd_witness,
    "falsify": _cmd_falsify,
    "lemmas": _cmd_lemmas,
    "analyze": _cmd_analyze,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return _HANDLERS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
