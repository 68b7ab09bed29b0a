"""Brute-force verification by dense GF(2) linear algebra.

Nothing here reuses the sparse reduction code of the pipelines: every check
builds dense numpy arrays and runs its own Gaussian elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import DimensionMismatch, TooLarge
from .grades import Grade, join_closure, leq
from .matrix import Firep, GradedMatrix

MAX_COLUMNS = 2000


def _gate(m: GradedMatrix) -> None:
    if m.n_cols > MAX_COLUMNS:
        raise TooLarge(f"oracle refuses matrices with more than {MAX_COLUMNS} columns (got {m.n_cols})")


def dense(m: GradedMatrix, rows: Iterable[int] | None = None, cols: Iterable[int] | None = None) -> np.ndarray:
    rows = list(range(m.n_rows)) if rows is None else list(rows)
    cols = list(range(m.n_cols)) if cols is None else list(cols)
    pos = {r: k for k, r in enumerate(rows)}
    out = np.zeros((len(rows), len(cols)), dtype=np.uint8)
    for c, j in enumerate(cols):
        for i in m.cols[j].entries():
            k = pos.get(i)
            if k is not None:
                out[k, c] = 1
    return out


def dense_rank(a: np.ndarray) -> int:
    """Rank over GF(2) of a 0/1 array."""
    a = (np.array(a, dtype=np.uint8) & 1).copy()
    n_rows, n_cols = a.shape
    rank = 0
    for c in range(n_cols):
        if rank == n_rows:
            break
        hits = np.nonzero(a[rank:, c])[0]
        if hits.size == 0:
            continue
        p = rank + hits[0]
        if p != rank:
            a[[rank, p]] = a[[p, rank]]
        below = np.nonzero(a[:, c])[0]
        below = below[below != rank]
        if below.size:
            a[below] ^= a[rank]
        rank += 1
    return rank


def _leq_indices(grades: list[Grade], p: Grade) -> list[int]:
    return [i for i, g in enumerate(grades) if leq(g, p)]


def hilbert_of_firep(firep: Firep, p: Grade) -> int:
    """dim (ker B_{<=p} / im A_{<=p})."""
    _gate(firep.A)
    _gate(firep.B)
    b_cols = _leq_indices(firep.B.col_grades, p)
    a_cols = _leq_indices(firep.A.col_grades, p)
    rank_b = dense_rank(dense(firep.B, cols=b_cols)) if b_cols else 0
    rank_a = dense_rank(dense(firep.A, rows=b_cols, cols=a_cols)) if a_cols else 0
    return len(b_cols) - rank_b - rank_a


def hilbert_of_presentation(m: GradedMatrix, p: Grade) -> int:
    """Generators at grade <= p minus the rank of the relations at grade <= p."""
    _gate(m)
    rows = _leq_indices(m.row_grades, p)
    cols = _leq_indices(m.col_grades, p)
    rank = dense_rank(dense(m, rows=rows, cols=cols)) if rows and cols else 0
    return len(rows) - rank


def query_grades(*matrices: GradedMatrix) -> list[Grade]:
    """Occurring row/column grades together with all pairwise joins."""
    grades: set[Grade] = set()
    for m in matrices:
        grades.update(m.row_grades)
        grades.update(m.col_grades)
    return join_closure(grades)


def firep_grades(firep: Firep) -> list[Grade]:
    """Every point of the coordinate grid spanned by the firep's grades.

    This contains all occurring grades and all their pairwise joins.
    """
    return _grid(set(firep.A.col_grades) | set(firep.B.col_grades))


def _grid(occurring: set[Grade]) -> list[Grade]:
    xs = sorted({g[0] for g in occurring})
    ys = sorted({g[1] for g in occurring})
    return [(x, y) for x in xs for y in ys]


def hilbert_function_firep(firep: Firep, grades: Iterable[Grade] | None = None) -> dict[Grade, int]:
    grades = firep_grades(firep) if grades is None else grades
    return {p: hilbert_of_firep(firep, p) for p in grades}


def hilbert_function_presentation(m: GradedMatrix, grades: Iterable[Grade]) -> dict[Grade, int]:
    return {p: hilbert_of_presentation(m, p) for p in grades}


@dataclass
class Report:
    ok: bool
    reason: str = ""
    grade: Grade | None = None
    entries: list[tuple[int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def check_kernel_basis(B: GradedMatrix, K: GradedMatrix) -> Report:
    """B @ K = 0, independent columns, and rank(K_{<=p}) = nullity(B_{<=p}) at every relevant grade."""
    if K.n_rows != B.n_cols:
        raise DimensionMismatch(f"K has {K.n_rows} rows but B has {B.n_cols} columns")
    _gate(B)
    _gate(K)
    if K.row_grades != B.col_grades:
        return Report(False, "row grades of K differ from column grades of B")
    bd = dense(B)
    kd = dense(K)
    if B.n_rows and K.n_cols and np.any((bd.astype(np.int64) @ kd.astype(np.int64)) & 1):
        return Report(False, "B @ K is non-zero")
    if dense_rank(kd) != K.n_cols:
        return Report(False, "kernel columns are linearly dependent")
    for j, g in enumerate(K.col_grades):
        if any(not leq(K.row_grades[i], g) for i in K.cols[j].entries()):
            return Report(False, f"kernel column {j} violates the entry rule", g)
    for p in _grid(set(B.col_grades) | set(K.col_grades)):
        b_cols = _leq_indices(B.col_grades, p)
        k_cols = _leq_indices(K.col_grades, p)
        nullity = len(b_cols) - (dense_rank(bd[:, b_cols]) if b_cols else 0)
        rank_k = dense_rank(kd[:, k_cols]) if k_cols else 0
        if rank_k != nullity:
            return Report(False, f"rank of kernel basis {rank_k} != nullity {nullity}", p)
    return Report(True)


def check_minimality(m: GradedMatrix) -> Report:
    """Passes iff no non-zero entry has row grade equal to column grade."""
    bad = [
        (i, j)
        for j, g in enumerate(m.col_grades)
        for i in m.cols[j].entries()
        if m.row_grades[i] == g
    ]
    if bad:
        return Report(False, f"{len(bad)} entries with equal row and column grade", m.col_grades[bad[0][1]], bad)
    return Report(True)


def exact_grade_rank(m: GradedMatrix, z: Grade) -> int:
    """Rank of the submatrix on rows and columns of grade exactly ``z``."""
    rows = [i for i, g in enumerate(m.row_grades) if g == z]
    cols = [j for j, g in enumerate(m.col_grades) if g == z]
    if not rows or not cols:
        return 0
    return dense_rank(dense(m, rows=rows, cols=cols))


def compare_hilbert(firep: Firep, m: GradedMatrix, grades: Iterable[Grade] | None = None) -> Report:
    """Pointwise dimension equality between a firep and a presentation."""
    grades = firep_grades(firep) if grades is None else list(grades)
    for p in grades:
        a, b = hilbert_of_firep(firep, p), hilbert_of_presentation(m, p)
        if a != b:
            return Report(False, f"dimension {b} != {a}", p)
    return Report(True)
