"""Command-line entry point.

    minpres [options] INPUT.firep
    minpres gen rips|lower-star|random ...

Exit codes: 0 success, 1 verification failure, 2 I/O or parse error,
3 invalid option combination.
"""

from __future__ import annotations

import argparse
import sys
import time
from collections import Counter

from .bench import peak_rss_bytes, timed_run, write_csv
from .columns import COLUMN_TYPES
from .errors import MinpresError, OptionConflict, TooLarge
from .fast import PipelineOptions
from .generators import (
    gen_function_rips,
    gen_lower_star,
    gen_random_firep,
    noisy_circle,
    read_off,
    read_points,
)
from .io import parse_firep, write_firep, write_presentation
from .lw import min_pres_lw
from .matrix import Firep, GradedMatrix
from . import oracle

EXIT_OK, EXIT_VERIFY, EXIT_IO, EXIT_FLAGS = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; flag problems here map to 3."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FLAGS, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="minpres", description="Minimal presentations of bi-graded persistence modules.")
    ap.add_argument("input", help="firep file ('-' for stdin)")
    ap.add_argument("-o", "--output", help="presentation output path (default stdout)")
    ap.add_argument("--no-chunk", action="store_true", help="skip chunk preprocessing")
    ap.add_argument("--no-queues", action="store_true", help="grid-scanning min_gens/ker_basis")
    ap.add_argument("--lw-minimize", action="store_true", help="left-to-right minimization instead of lazy")
    ap.add_argument("--clearing", action="store_true", help="seed the kernel basis from min_gens")
    ap.add_argument("--parallel-mgkb", action="store_true", help="run min_gens and ker_basis concurrently")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--column-type", choices=sorted(COLUMN_TYPES), default="vector")
    ap.add_argument("--strict", action="store_true", help="verify B @ A = 0 on input")
    ap.add_argument("--check", action="store_true", help="verify the output against the brute-force oracle")
    ap.add_argument("--compare-baseline", action="store_true", help="also run the baseline pipeline and compare")
    ap.add_argument("--stats", metavar="FILE", help="write per-phase timings as CSV")
    return ap


def build_gen_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="minpres gen", description="Write a generated firep.")
    sub = ap.add_subparsers(dest="kind", required=True)

    rips = sub.add_parser("rips", help="function-Rips bifiltration of a point cloud")
    src = rips.add_mutually_exclusive_group(required=True)
    src.add_argument("--points", help="point file, one point per line")
    src.add_argument("--circle", type=int, metavar="N", help="N noisy points on the unit circle")
    rips.add_argument("--noise", type=float, default=0.1)
    rips.add_argument("--bandwidth", type=float, default=0.5)
    rips.add_argument("--seed", type=int, default=0)
    rips.add_argument("--max-triangles", type=int, default=2_000_000)

    ls = sub.add_parser("lower-star", help="lower-star bifiltration of an OFF mesh")
    ls.add_argument("mesh", help="OFF file")

    rnd = sub.add_parser("random", help="random bi-graded flag complex")
    rnd.add_argument("--vertices", type=int, default=8)
    rnd.add_argument("--edge-probability", type=float, default=0.5)
    rnd.add_argument("--grade-range", type=int, default=5)
    rnd.add_argument("--max-bump", type=int, default=1)
    rnd.add_argument("--seed", type=int, default=0)

    for p in (rips, ls, rnd):
        p.add_argument("-o", "--output", help="firep output path (default stdout)")
    return ap


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(code: int, message: str) -> int:
    print(f"minpres: {message}", file=sys.stderr)
    return code


def verify(firep: Firep, M: GradedMatrix) -> list[str]:
    """Oracle checks on a pipeline output; returns the failure messages."""
    problems = []
    minimal = oracle.check_minimality(M)
    if not minimal:
        problems.append(f"not minimal: {minimal.reason}")
    same = oracle.compare_hilbert(firep, M)
    if not same:
        problems.append(f"Hilbert function differs at {same.grade}: {same.reason}")
    return problems


def compare_outputs(firep: Firep, M: GradedMatrix, L: GradedMatrix) -> list[str]:
    problems = []
    if Counter(M.row_grades) != Counter(L.row_grades):
        problems.append("generator grade multisets differ from the baseline")
    if Counter(M.col_grades) != Counter(L.col_grades):
        problems.append("relation grade multisets differ from the baseline")
    if not problems:
        grades = oracle.firep_grades(firep)
        for p in grades:
            if oracle.hilbert_of_presentation(M, p) != oracle.hilbert_of_presentation(L, p):
                problems.append(f"Hilbert functions differ from the baseline at {p}")
                break
    return problems


def _parse(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace | int:
    try:
        return parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_FLAGS


def run_gen(argv: list[str]) -> int:
    args = _parse(build_gen_parser(), argv)
    if isinstance(args, int):
        return args
    try:
        if args.kind == "rips":
            if args.points:
                pts = read_points(_read_text(args.points))
            else:
                pts = noisy_circle(args.circle, args.noise, args.seed)
            firep = gen_function_rips(pts, args.bandwidth, args.max_triangles)
        elif args.kind == "lower-star":
            firep = gen_lower_star(read_off(_read_text(args.mesh)))
        else:
            firep = gen_random_firep(
                args.vertices, args.edge_probability, args.grade_range, args.seed, args.max_bump
            )
        _emit(write_firep(firep), args.output)
    except (OSError, ValueError, MinpresError) as exc:
        return _fail(EXIT_IO, str(exc))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if argv and argv[0] == "gen":
        return run_gen(argv[1:])
    args = _parse(build_parser(), argv)
    if isinstance(args, int):
        return args
    options = PipelineOptions(
        use_chunk=not args.no_chunk,
        use_queues=not args.no_queues,
        use_lazy=not args.lw_minimize,
        use_clearing=args.clearing,
        parallel_mgkb=args.parallel_mgkb,
        threads=args.threads,
        column_type=args.column_type,
    )
    try:
        options.validate()
    except (OptionConflict, ValueError) as exc:
        return _fail(EXIT_FLAGS, str(exc))

    t0 = time.perf_counter()
    try:
        firep = parse_firep(_read_text(args.input), strict=args.strict, column_type=args.column_type)
    except (OSError, UnicodeDecodeError, MinpresError) as exc:
        return _fail(EXIT_IO, str(exc))
    io_seconds = time.perf_counter() - t0

    # The pipeline may consume a converted copy; keep the parsed input for checks.
    M, stats = timed_run(firep, options)
    t0 = time.perf_counter()
    try:
        _emit(write_presentation(M, firep.x_values, firep.y_values, firep.labels), args.output)
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))
    stats.io_seconds = io_seconds + time.perf_counter() - t0
    stats.total_seconds += stats.io_seconds
    stats.peak_memory_bytes = peak_rss_bytes()

    if args.stats:
        variant = ",".join(
            name for name, on in (
                ("queue" if options.use_queues else "grid", True),
                ("lazy" if options.use_lazy else "lw-min", True),
                ("chunk", options.use_chunk),
                ("clearing", options.use_clearing),
                ("parallel-mgkb", options.parallel_mgkb),
                (f"threads={options.threads}", options.threads > 1),
            ) if on
        )
        try:
            with open(args.stats, "w", newline="", encoding="utf-8") as fh:
                write_csv([stats.row(args.input, variant)], fh)
        except OSError as exc:
            return _fail(EXIT_IO, str(exc))

    problems: list[str] = []
    try:
        if args.check:
            problems += verify(firep, M)
        if args.compare_baseline:
            problems += compare_outputs(firep, M, min_pres_lw(firep))
    except TooLarge as exc:
        return _fail(EXIT_VERIFY, f"cannot verify: {exc}")
    if problems:
        for p in problems:
            print(f"minpres: check failed: {p}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
