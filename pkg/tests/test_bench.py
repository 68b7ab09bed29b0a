import csv
import io

import pytest

from minpres.bench import CSV_FIELDS, VARIANTS, RunStats, main, run_bench, timed_run
from minpres.fast import PipelineOptions
from minpres.generators import gen_random_firep


def test_csv_phase_columns_in_table_order():
    assert CSV_FIELDS[2:11] == ("IO", "Ch", "MG", "KB", "RP", "Min", "Time", "Mem", "Size")


def test_rips_sweep_cardinality():
    out = io.StringIO()
    rows = run_bench("rips", [20, 30, 40], out=out)
    assert len(rows) == 12
    assert [r["variant"] for r in rows[:4]] == list(VARIANTS)
    parsed = list(csv.DictReader(io.StringIO(out.getvalue())))
    assert len(parsed) == 12
    # Every variant computes the same presentation size.
    for k in range(3):
        assert len({r["Size"] for r in parsed[4 * k:4 * k + 4]}) == 1
    # Baseline spends most of its time in min_gens on function-Rips input.
    base = [r for r in parsed if r["variant"] == "baseline" and r["instance"] == "rips-40"][0]
    phases = {k: float(base[k]) for k in ("Ch", "MG", "KB", "RP", "Min")}
    assert max(phases, key=phases.get) == "MG"


def test_averaging_over_repeats():
    rows = run_bench("random", [10], ["+chunk"], repeats=3)
    assert len(rows) == 1
    assert rows[0]["Size"].startswith("(")


def test_timed_run_accounts_for_phases():
    f = gen_random_firep(12, 0.6, 4, 1)
    M, stats = timed_run(f, PipelineOptions(), measure_memory=True)
    assert isinstance(stats, RunStats)
    assert stats.total_seconds >= sum(stats.phases()) - 1e-3
    assert stats.peak_memory_bytes > 0
    assert (stats.output_rows, stats.output_columns) == (M.n_rows, M.n_cols)


def test_unknown_variant():
    with pytest.raises(ValueError):
        run_bench("random", [5], ["fastest"])
    with pytest.raises(ValueError):
        run_bench("spheres", [5], ["baseline"])


def test_bench_main(tmp_path):
    path = tmp_path / "b.csv"
    assert main(["random", "8", "--variants", "baseline", "queue,lazy", "-o", str(path)]) == 0
    lines = path.read_text().splitlines()
    assert len(lines) == 3 and lines[0].startswith("instance,variant,IO,Ch,MG")
