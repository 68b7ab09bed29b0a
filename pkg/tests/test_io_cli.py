import csv
import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import RUNNING_EXAMPLE_FILE, running_example, minimize_example
from minpres import cli
from minpres.errors import BAProductNonzero, EntryRuleViolation, ParseError
from minpres.fast import min_pres_fast
from minpres.generators import gen_random_firep
from minpres.io import parse_firep, parse_presentation, write_firep, write_presentation
from minpres.lw import minimize_lw

RUNNING_EXAMPLE_OUTPUT = "minimal presentation\nx\ny\n2 1\n2 2\n3 3\n3 3 ; 0\n"


def test_parse_running_example_file():
    f = parse_firep(RUNNING_EXAMPLE_FILE.read_text(), strict=True)
    assert (f.A.n_rows, f.A.n_cols) == (7, 2)
    assert (f.B.n_rows, f.B.n_cols) == (5, 7)
    assert f.labels == ("x", "y")
    ref = running_example()
    assert f.A == ref.A and f.B == ref.B


def test_parse_empty():
    f = parse_firep("firep\nx\ny\n0 0 0\n")
    assert f.A.n_cols == f.B.n_cols == f.B.n_rows == 0
    M = min_pres_fast(f)
    assert write_presentation(M, f.x_values, f.y_values, f.labels).splitlines()[3] == "0 0"


@pytest.mark.parametrize("text, line", [
    ("firep\nx\ny\n1 1 1\n0 0 ; 1\n0 0 ; 0\n", 5),         # A index >= s
    ("firep\nx\ny\n0 1 1\n0 0 ; 3\n", 5),                  # B index >= r
    ("graph\nx\ny\n0 0 0\n", 1),
    ("firep\nx\ny\n1 1\n", 4),
    ("firep\nx\ny\n1 1 1\n0 0 ; 0\n", 5),                  # missing line
    ("firep\nx\ny\n0 1 1\n0 0 ; 0\n0 0 ; 0\n", 6),         # extra line
    ("firep\nx\ny\n0 1 2\n0 0 ; 1 0\n", 5),                # not ascending
    ("firep\nx\ny\n0 1 1\n0 ; 0\n", 5),
    ("firep\nx\ny\n0 1 1\n0 a ; 0\n", 5),
    ("firep\nx\ny\n0 1 1\n0 0 0\n", 5),                    # no separator
    ("firep\nx\ny\n0 1 1\n0 nan ; 0\n", 5),
])
def test_parse_errors_report_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_firep(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_parse_comments_and_blank_lines():
    text = "# header\nfirep\n\nx # label\ny\n0 1 2\n0.5 1 ; 0 1   # edge\n"
    f = parse_firep(text)
    assert f.labels == ("x", "y")
    assert f.x_values == ["0.5"] and f.y_values == ["1"]


def test_entry_rule_and_strict_mode():
    # The triangle is graded below one of its edges.
    bad_rule = "firep\nx\ny\n1 3 3\n0 0 ; 0 1 2\n0 0 ; 0 1\n0 0 ; 1 2\n1 1 ; 0 2\n"
    with pytest.raises(EntryRuleViolation):
        parse_firep(bad_rule)
    # Two edges that do not form a cycle.
    not_cycle = "firep\nx\ny\n1 2 3\n1 1 ; 0 1\n0 0 ; 0 1\n0 0 ; 1 2\n"
    parse_firep(not_cycle)
    with pytest.raises(BAProductNonzero):
        parse_firep(not_cycle, strict=True)


def test_decimal_grades_are_compressed_and_printed_verbatim():
    text = "firep\ndist\ndens\n1 3 3\n2.50 -1 ; 0 1 2\n0.1 -3 ; 0 1\n0.1 -3 ; 1 2\n2.50 -1 ; 0 2\n"
    f = parse_firep(text, strict=True)
    assert f.x_values == ["0.1", "2.50"]
    assert f.y_values == ["-3", "-1"]
    M = min_pres_fast(f)
    out = write_presentation(M, f.x_values, f.y_values, f.labels)
    assert out.splitlines()[:3] == ["minimal presentation", "dist", "dens"]
    # The cycle is born and filled at the same grade: nothing survives.
    assert out.splitlines()[3] == "0 0"


def test_write_presentation_running_example():
    f = parse_firep(RUNNING_EXAMPLE_FILE.read_text())
    assert write_presentation(min_pres_fast(f), f.x_values, f.y_values, f.labels) == RUNNING_EXAMPLE_OUTPUT
    gens, rels = parse_presentation(RUNNING_EXAMPLE_OUTPUT)
    assert gens == [("2", "2"), ("3", "3")]
    assert rels == [(("3", "3"), [0])]


def test_write_presentation_minimize_example():
    text = write_presentation(minimize_lw(minimize_example()))
    lines = text.splitlines()
    assert lines[3] == "2 2"
    assert lines[4:] == ["1 1", "1 1", "2 1 ; 0 1", "3 3 ; 0"]


@given(st.integers(0, 5000), st.integers(3, 10))
@settings(max_examples=40, deadline=None)
def test_round_trip(seed, n):
    # B's row grades are not stored, so the first parse re-derives them; from
    # then on parse and write are inverse to each other.
    g = parse_firep(write_firep(gen_random_firep(n, 0.6, 5, seed)), strict=True)
    text = write_firep(g)
    h = parse_firep(text, strict=True)
    assert h == g
    assert write_firep(h) == text


def test_round_trip_with_float_values():
    from minpres.generators import gen_function_rips, noisy_circle
    f = gen_function_rips(noisy_circle(6, 0.1, 2), 0.5)
    g = parse_firep(write_firep(f))
    assert parse_firep(write_firep(g)) == g
    # Compressed coordinates may differ; the printed values may not.
    a, b = min_pres_fast(f), min_pres_fast(g)
    assert write_presentation(a, f.x_values, f.y_values, f.labels) == \
        write_presentation(b, g.x_values, g.y_values, g.labels)


# --- CLI ------------------------------------------------------------------------

def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_check_running_example(capsys):
    code, out, _ = run(["--check", str(RUNNING_EXAMPLE_FILE)], capsys)
    assert code == 0
    assert out == RUNNING_EXAMPLE_OUTPUT


@pytest.mark.parametrize("flags", [
    ["--no-queues", "--no-chunk", "--lw-minimize"],
    ["--clearing"],
    ["--parallel-mgkb", "--threads", "4"],
    ["--column-type", "heap", "--threads", "2"],
    ["--column-type", "bitset", "--compare-baseline"],
])
def test_cli_variants_agree(flags, capsys, tmp_path):
    path = tmp_path / "r.firep"
    path.write_text(write_firep(gen_random_firep(10, 0.6, 4, 11)))
    code_ref, ref, _ = run(["--check", str(path)], capsys)
    code, out, _ = run(["--check", *flags, str(path)], capsys)
    assert code == code_ref == 0
    gens_ref, rels_ref = parse_presentation(ref)
    gens, rels = parse_presentation(out)
    assert sorted(gens) == sorted(gens_ref)
    assert sorted(g for g, _ in rels) == sorted(g for g, _ in rels_ref)


def test_cli_flag_conflict(capsys):
    code, _, err = run(["--clearing", "--parallel-mgkb", str(RUNNING_EXAMPLE_FILE)], capsys)
    assert code == 3 and "clearing" in err


def test_cli_bad_flag_and_threads(capsys):
    assert run(["--column-type", "tree", str(RUNNING_EXAMPLE_FILE)], capsys)[0] == 3
    assert run(["--threads", "0", str(RUNNING_EXAMPLE_FILE)], capsys)[0] == 3


def test_cli_io_errors(capsys, tmp_path):
    assert run([str(tmp_path / "missing.firep")], capsys)[0] == 2
    bad = tmp_path / "bad.firep"
    bad.write_text("firep\nx\ny\n0 1 1\n0 0 ; 5\n")
    code, _, err = run([str(bad)], capsys)
    assert code == 2 and "line 5" in err
    assert run(["-o", str(tmp_path / "no" / "dir.txt"), str(RUNNING_EXAMPLE_FILE)], capsys)[0] == 2


def test_cli_verification_failure(capsys, monkeypatch):
    # A broken pipeline must be caught by --check.
    from minpres.bench import RunStats
    from minpres.matrix import GradedMatrix

    def broken(firep, options):
        return GradedMatrix([(0, 0)], [], []), RunStats()

    monkeypatch.setattr(cli, "timed_run", broken)
    code, _, err = run(["--check", str(RUNNING_EXAMPLE_FILE)], capsys)
    assert code == 1 and "check failed" in err


def test_cli_stats_and_output(capsys, tmp_path):
    stats, out = tmp_path / "s.csv", tmp_path / "o.txt"
    code, printed, _ = run(["--stats", str(stats), "-o", str(out), str(RUNNING_EXAMPLE_FILE)], capsys)
    assert code == 0 and printed == ""
    assert out.read_text() == RUNNING_EXAMPLE_OUTPUT
    rows = list(csv.reader(io.StringIO(stats.read_text())))
    assert rows[0][2:11] == ["IO", "Ch", "MG", "KB", "RP", "Min", "Time", "Mem", "Size"]
    rec = dict(zip(rows[0], rows[1]))
    assert rec["Size"] == "(2, 1)"
    phases = sum(float(rec[k]) for k in ("IO", "Ch", "MG", "KB", "RP", "Min"))
    assert float(rec["Time"]) >= phases - 1e-3


def test_cli_gen_random_then_solve(capsys, tmp_path):
    path = tmp_path / "g.firep"
    assert run(["gen", "random", "--vertices", "9", "--seed", "3", "-o", str(path)], capsys)[0] == 0
    assert run(["--check", "--strict", str(path)], capsys)[0] == 0


def test_cli_gen_rips_and_lower_star(capsys, tmp_path):
    code, out, _ = run(["gen", "rips", "--circle", "6", "--seed", "1"], capsys)
    assert code == 0 and out.startswith("firep\ndistance\ncodensity\n20 15 6\n")
    pts = tmp_path / "p.txt"
    pts.write_text("0 0\n1 0\n0 1\n")
    code, out, _ = run(["gen", "rips", "--points", str(pts)], capsys)
    assert code == 0 and out.splitlines()[3] == "1 3 3"
    off = tmp_path / "m.off"
    off.write_text("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n")
    code, out, _ = run(["gen", "lower-star", str(off)], capsys)
    assert code == 0 and out.splitlines()[3] == "1 3 3"
    off.write_text("OFF\n3 1 0\n0 0 0\n")
    assert run(["gen", "lower-star", str(off)], capsys)[0] == 2


def test_cli_output_is_deterministic(capsys, tmp_path):
    path = tmp_path / "d.firep"
    path.write_text(write_firep(gen_random_firep(11, 0.6, 4, 5)))
    outs = set()
    for threads in ("1", "2", "4", "8"):
        for kind in ("vector", "heap", "bitset"):
            outs.add(run(["--threads", threads, "--column-type", kind, str(path)], capsys)[1])
    assert len(outs) == 1
