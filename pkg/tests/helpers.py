"""Shared fixtures data: worked examples and the seeded random corpus."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from minpres.generators import firep_from_complex, gen_random_firep
from minpres.matrix import Firep, GradedMatrix

DATA = Path(__file__).resolve().parent.parent / "data"
RUNNING_EXAMPLE_FILE = DATA / "running_example.firep"

MAX_CORPUS_COLUMNS = 40


def queue_example() -> GradedMatrix:
    """Six columns A..F over five rows; row grades chosen minimal so the entry rule holds."""
    cols = [[2], [0, 1], [3, 4], [0], [2, 4], [2, 3]]
    col_grades = [(1, 1), (1, 1), (3, 2), (1, 3), (2, 3), (2, 3)]
    return GradedMatrix([(1, 1)] * 5, col_grades, cols)


def minimize_example() -> GradedMatrix:
    """Rows S, T, U, V, W; columns A..E."""
    row_grades = [(1, 1), (1, 1), (1, 1), (3, 1), (3, 3)]
    col_grades = [(1, 1), (2, 1), (3, 1), (3, 3), (3, 3)]
    dense = [
        [0, 1, 0, 0, 1],
        [1, 0, 1, 0, 1],
        [1, 1, 1, 1, 0],
        [0, 0, 1, 1, 0],
        [0, 0, 0, 1, 1],
    ]
    cols = [[i for i in range(5) if dense[i][j]] for j in range(5)]
    return GradedMatrix(row_grades, col_grades, cols)


# The five-vertex running example with its explicit simplex grades.
EXAMPLE_VERTICES = ["A", "B", "C", "D", "E"]
EXAMPLE_VERTEX_GRADES = [(1, 1), (1, 1), (1, 1), (1, 1), (2, 2)]
EXAMPLE_EDGES = [(0, 1), (0, 2), (0, 4), (1, 2), (1, 3), (2, 3), (2, 4)]  # AB AC AE BC BD CD CE
EXAMPLE_EDGE_GRADES = [(1, 1), (2, 2), (2, 3), (1, 1), (1, 2), (2, 1), (3, 2)]
EXAMPLE_TRIANGLES = [(0, 1, 2), (1, 2, 3)]  # ABC BCD
EXAMPLE_TRIANGLE_GRADES = [(2, 2), (3, 3)]


def running_example() -> Firep:
    return firep_from_complex(
        EXAMPLE_VERTEX_GRADES, EXAMPLE_EDGES, EXAMPLE_EDGE_GRADES, EXAMPLE_TRIANGLES, EXAMPLE_TRIANGLE_GRADES
    )


def _uncompress(firep: Firep, g: tuple[int, int]) -> tuple:
    return (firep.x_values[g[0]], firep.y_values[g[1]])


def original_grades(firep: Firep, grades) -> list[tuple]:
    return [_uncompress(firep, g) for g in grades]


@lru_cache(maxsize=None)
def corpus(count: int = 100, first_seed: int = 0) -> tuple[Firep, ...]:
    """Seeded random fireps with at most 40 columns per matrix.

    Instances that are too large or have no triangles are skipped and the
    next seed is tried.
    """
    out = []
    seed = first_seed
    while len(out) < count:
        n = 6 + seed % 6
        f = gen_random_firep(n, 0.55, 4, seed, max_bump=1)
        seed += 1
        if 0 < f.A.n_cols <= MAX_CORPUS_COLUMNS and f.B.n_cols <= MAX_CORPUS_COLUMNS:
            out.append(f)
    return tuple(out)
