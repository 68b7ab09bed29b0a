"""Per-phase timing and the benchmark sweep.

CSV columns follow the layout IO, Ch, MG, KB, RP, Min, Time, Mem, Size, with
the instance and variant in front and raw counts at the end.
"""

from __future__ import annotations

import argparse
import csv
import resource
import sys
import time
import tracemalloc
from dataclasses import dataclass
from statistics import mean
from typing import Callable, Iterable, TextIO

from .fast import PipelineOptions, min_pres_fast
from .generators import gen_function_rips, gen_lower_star, gen_random_firep, grid_mesh, noisy_circle
from .io import write_presentation
from .matrix import Firep, GradedMatrix

PHASE_COLUMNS = ("IO", "Ch", "MG", "KB", "RP", "Min")
CSV_FIELDS = ("instance", "variant") + PHASE_COLUMNS + (
    "Time", "Mem", "Size", "input_columns", "output_rows", "output_columns",
)

# Cumulative variants; each adds one optimization to the previous.
VARIANTS: dict[str, PipelineOptions] = {
    "baseline": PipelineOptions(use_chunk=False, use_queues=False, use_lazy=False),
    "queue,lazy": PipelineOptions(use_chunk=False, use_queues=True, use_lazy=True),
    "+chunk": PipelineOptions(use_chunk=True, use_queues=True, use_lazy=True),
    "+parfor": PipelineOptions(use_chunk=True, use_queues=True, use_lazy=True, threads=4),
}


@dataclass
class RunStats:
    io_seconds: float = 0.0
    chunk_seconds: float = 0.0
    min_gens_seconds: float = 0.0
    ker_basis_seconds: float = 0.0
    reparam_seconds: float = 0.0
    minimize_seconds: float = 0.0
    total_seconds: float = 0.0
    peak_memory_bytes: int = 0
    input_columns: int = 0
    output_rows: int = 0
    output_columns: int = 0

    def phases(self) -> tuple[float, ...]:
        return (
            self.io_seconds,
            self.chunk_seconds,
            self.min_gens_seconds,
            self.ker_basis_seconds,
            self.reparam_seconds,
            self.minimize_seconds,
        )

    def row(self, instance: str, variant: str) -> dict:
        out = {"instance": instance, "variant": variant}
        out.update({k: f"{v:.6f}" for k, v in zip(PHASE_COLUMNS, self.phases())})
        out["Time"] = f"{self.total_seconds:.6f}"
        out["Mem"] = str(self.peak_memory_bytes)
        out["Size"] = f"({self.output_rows}, {self.output_columns})"
        out["input_columns"] = str(self.input_columns)
        out["output_rows"] = str(self.output_rows)
        out["output_columns"] = str(self.output_columns)
        return out


def peak_rss_bytes() -> int:
    """Process peak resident set size; 0 where the platform does not report it."""
    try:
        kb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    except (AttributeError, ValueError, OSError):
        return 0
    # macOS reports bytes, Linux kilobytes.
    return int(kb) if sys.platform == "darwin" else int(kb) * 1024


def timed_run(
    firep: Firep,
    options: PipelineOptions,
    measure_memory: bool = False,
) -> tuple[GradedMatrix, RunStats]:
    """Run the pipeline once and fill every field except ``io_seconds``."""
    timings: dict[str, float] = {}
    if measure_memory:
        tracemalloc.start()
    t0 = time.perf_counter()
    try:
        M = min_pres_fast(firep, options, timings=timings)
        total = time.perf_counter() - t0
        peak = tracemalloc.get_traced_memory()[1] if measure_memory else 0
    finally:
        if measure_memory:
            tracemalloc.stop()
    stats = RunStats(
        chunk_seconds=timings["chunk"],
        min_gens_seconds=timings["min_gens"],
        ker_basis_seconds=timings["ker_basis"],
        reparam_seconds=timings["reparam"],
        minimize_seconds=timings["minimize"],
        total_seconds=total,
        peak_memory_bytes=peak,
        input_columns=firep.A.n_cols + firep.B.n_cols,
        output_rows=M.n_rows,
        output_columns=M.n_cols,
    )
    return M, stats


def make_instance(family: str, n: int, seed: int) -> Firep:
    if family == "rips":
        return gen_function_rips(noisy_circle(n, 0.1, seed), bandwidth=0.5)
    if family == "lower-star":
        return gen_lower_star(grid_mesh(n, seed))
    if family == "random":
        return gen_random_firep(min(n, 15), 0.5, 6, seed)
    raise ValueError(f"unknown instance family {family!r}")


def _average(runs: list[RunStats]) -> tuple[dict, str]:
    fields = list(RunStats.__dataclass_fields__)
    avg = {f: mean(getattr(r, f) for r in runs) for f in fields}
    size = f"({mean(r.output_rows for r in runs):g}, {mean(r.output_columns for r in runs):g})"
    return avg, size


def run_bench(
    family: str,
    sizes: Iterable[int],
    variants: Iterable[str] = tuple(VARIANTS),
    repeats: int = 1,
    seed: int = 0,
    measure_memory: bool = False,
    out: TextIO | None = None,
    instance_factory: Callable[[str, int, int], Firep] = make_instance,
) -> list[dict]:
    """One CSV row per (size, variant), averaged over ``repeats`` seeded instances."""
    variants = list(variants)
    for v in variants:
        if v not in VARIANTS:
            raise ValueError(f"unknown variant {v!r}; choose from {sorted(VARIANTS)}")
    rows = []
    for n in sizes:
        per_variant: dict[str, list[RunStats]] = {v: [] for v in variants}
        for r in range(repeats):
            t0 = time.perf_counter()
            firep = instance_factory(family, n, seed + r)
            setup = time.perf_counter() - t0
            for v in variants:
                M, stats = timed_run(firep, VARIANTS[v], measure_memory)
                t0 = time.perf_counter()
                write_presentation(M, firep.x_values, firep.y_values, firep.labels)
                stats.io_seconds = setup + time.perf_counter() - t0
                stats.total_seconds += stats.io_seconds
                per_variant[v].append(stats)
        for v in variants:
            avg, size = _average(per_variant[v])
            row = RunStats(**avg)
            for k in ("peak_memory_bytes", "input_columns", "output_rows", "output_columns"):
                setattr(row, k, round(getattr(row, k)))
            d = row.row(f"{family}-{n}", v)
            d["Size"] = size
            rows.append(d)
    if out is not None:
        write_csv(rows, out)
    return rows


def write_csv(rows: list[dict], out: TextIO) -> None:
    writer = csv.DictWriter(out, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="minpres-bench", description="Per-phase timing sweep.")
    ap.add_argument("family", choices=["rips", "lower-star", "random"])
    ap.add_argument("sizes", type=int, nargs="+")
    ap.add_argument("--variants", nargs="+", default=list(VARIANTS), choices=list(VARIANTS),
                    metavar="VARIANT", help="subset of: " + ", ".join(VARIANTS))
    ap.add_argument("--repeats", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--memory", action="store_true", help="trace peak allocations (slower)")
    ap.add_argument("-o", "--output", help="CSV path (default stdout)")
    args = ap.parse_args(argv)
    if args.output:
        with open(args.output, "w", newline="", encoding="utf-8") as fh:
            run_bench(args.family, args.sizes, args.variants, args.repeats, args.seed, args.memory, fh)
    else:
        run_bench(args.family, args.sizes, args.variants, args.repeats, args.seed, args.memory, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
