"""Bi-graded sparse GF(2) matrices and free implicit representations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .columns import Column, column_class
from .errors import BAProductNonzero, DimensionMismatch, EntryRuleViolation
from .grades import Grade, colex_key, leq

SENTINEL = -1


class GradedMatrix:
    """Sparse GF(2) matrix with a bi-grade on every row and column.

    Rows and columns are expected in colex order; ``sort_graded`` establishes
    that. An optional auxiliary matrix (``aux``) mirrors column additions when
    it has been switched on with ``enable_auxiliary``.
    """

    def __init__(
        self,
        row_grades: Sequence[Grade],
        col_grades: Sequence[Grade],
        columns: Iterable[Iterable[int]],
        column_type: str = "vector",
        check: bool = True,
    ):
        cls = column_class(column_type)
        self.column_type = column_type
        self.row_grades: list[Grade] = [tuple(g) for g in row_grades]
        self.col_grades: list[Grade] = [tuple(g) for g in col_grades]
        self.cols: list[Column] = [c if isinstance(c, cls) else cls(c) for c in columns]
        self.aux: list[Column] | None = None
        if len(self.cols) != len(self.col_grades):
            raise DimensionMismatch(
                f"{len(self.cols)} columns but {len(self.col_grades)} column grades"
            )
        if check:
            self.check_entry_rule()

    @classmethod
    def empty(cls, row_grades: Sequence[Grade] = (), column_type: str = "vector") -> "GradedMatrix":
        return cls(row_grades, [], [], column_type, check=False)

    @property
    def n_rows(self) -> int:
        return len(self.row_grades)

    @property
    def n_cols(self) -> int:
        return len(self.cols)

    def column(self, j: int) -> list[int]:
        return self.cols[j].entries()

    def columns(self) -> list[list[int]]:
        return [c.entries() for c in self.cols]

    def pivot(self, j: int) -> int:
        return self.cols[j].pivot()

    def is_local(self, j: int) -> bool:
        p = self.cols[j].pivot()
        if p < 0:
            return True
        return self.row_grades[p] == self.col_grades[j]

    def check_entry_rule(self) -> None:
        n = self.n_rows
        for j, col in enumerate(self.cols):
            g = self.col_grades[j]
            for i in col.entries():
                if i < 0 or i >= n:
                    raise DimensionMismatch(f"column {j} has row index {i} outside 0..{n - 1}")
                if not leq(self.row_grades[i], g):
                    raise EntryRuleViolation(
                        f"entry ({i},{j}): row grade {self.row_grades[i]} is not <= column grade {g}"
                    )

    def is_colex_sorted(self) -> bool:
        def ok(gs: list[Grade]) -> bool:
            return all(colex_key(a) <= colex_key(b) for a, b in zip(gs, gs[1:]))

        return ok(self.row_grades) and ok(self.col_grades)

    def enable_auxiliary(self) -> None:
        """Start tracking column operations in an identity-initialized auxiliary matrix."""
        cls = column_class(self.column_type)
        self.aux = [cls((j,)) for j in range(self.n_cols)]

    def add_column(self, source: int, target: int) -> None:
        """Add column ``source`` to column ``target``, mirroring on the auxiliary matrix."""
        self.cols[target].add(self.cols[source])
        if self.aux is not None:
            self.aux[target].add(self.aux[source])

    def copy(self, column_type: str | None = None) -> "GradedMatrix":
        kind = column_type or self.column_type
        if kind == self.column_type:
            cols = [c.copy() for c in self.cols]
        else:
            cols = [c.entries() for c in self.cols]
        return GradedMatrix(self.row_grades, self.col_grades, cols, kind, check=False)

    def signature(self) -> tuple:
        """Hashable value identifying grades and entries exactly."""
        return (
            tuple(self.row_grades),
            tuple(self.col_grades),
            tuple(tuple(c.entries()) for c in self.cols),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return self.signature() == other.signature()

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"GradedMatrix({self.n_rows}x{self.n_cols}, {self.column_type})"

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for j, col in enumerate(self.cols):
            for i in col.entries():
                out[i][j] = 1
        return out


def sort_graded(matrix: GradedMatrix) -> tuple[GradedMatrix, list[int], list[int]]:
    """Colex-sort rows and columns (stable on ties).

    Returns the sorted matrix and the row and column permutations, each mapping
    a new index to the original index.
    """
    matrix.check_entry_rule()
    row_perm = sorted(range(matrix.n_rows), key=lambda i: colex_key(matrix.row_grades[i]))
    col_perm = sorted(range(matrix.n_cols), key=lambda j: colex_key(matrix.col_grades[j]))
    new_of_old = [0] * matrix.n_rows
    for new, old in enumerate(row_perm):
        new_of_old[old] = new
    cols = [[new_of_old[i] for i in matrix.cols[j].entries()] for j in col_perm]
    out = GradedMatrix(
        [matrix.row_grades[i] for i in row_perm],
        [matrix.col_grades[j] for j in col_perm],
        cols,
        matrix.column_type,
        check=False,
    )
    return out, row_perm, col_perm


def submatrix(matrix: GradedMatrix, rows: Sequence[int], cols: Sequence[int]) -> GradedMatrix:
    """Restrict to the given (ascending) rows and columns, re-indexing entries.

    Entries in dropped rows are discarded.
    """
    new_index = {old: new for new, old in enumerate(rows)}
    out_cols = []
    for j in cols:
        out_cols.append([new_index[i] for i in matrix.cols[j].entries() if i in new_index])
    return GradedMatrix(
        [matrix.row_grades[i] for i in rows],
        [matrix.col_grades[j] for j in cols],
        out_cols,
        matrix.column_type,
        check=False,
    )


def submatrix_leq(matrix: GradedMatrix, p: Grade) -> GradedMatrix:
    """Rows and columns with grade <= p, in their original relative order."""
    rows = [i for i, g in enumerate(matrix.row_grades) if leq(g, p)]
    cols = [j for j, g in enumerate(matrix.col_grades) if leq(g, p)]
    return submatrix(matrix, rows, cols)


def rank_gf2(matrix: GradedMatrix) -> int:
    """Rank over GF(2) by Gaussian elimination on integer bit-sets; grades are ignored."""
    basis: dict[int, int] = {}
    rank = 0
    for col in matrix.cols:
        v = 0
        for i in col.entries():
            v |= 1 << i
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = v
                rank += 1
                break
            v ^= b
    return rank


def multiply(left: GradedMatrix, right: GradedMatrix) -> list[list[int]]:
    """Columns of ``left @ right`` over GF(2), as ascending index lists."""
    if left.n_cols != right.n_rows:
        raise DimensionMismatch(f"cannot multiply {left.n_rows}x{left.n_cols} by {right.n_rows}x{right.n_cols}")
    left_bits = []
    for col in left.cols:
        v = 0
        for i in col.entries():
            v |= 1 << i
        left_bits.append(v)
    out = []
    for col in right.cols:
        v = 0
        for k in col.entries():
            v ^= left_bits[k]
        entries = []
        while v:
            low = v & -v
            entries.append(low.bit_length() - 1)
            v ^= low
        out.append(entries)
    return out


@dataclass
class Firep:
    """Free implicit representation: ``A`` (relations) and ``B`` with ``B @ A = 0``.

    The rows of ``A`` correspond to the columns of ``B`` and carry the same grades.
    """

    A: GradedMatrix
    B: GradedMatrix
    # Original (pre-compression) coordinate values, indexed by compressed coordinate.
    x_values: list | None = None
    y_values: list | None = None
    labels: tuple[str, str] = ("x", "y")

    def validate(self, strict: bool = True) -> None:
        if self.A.n_rows != self.B.n_cols:
            raise DimensionMismatch(
                f"A has {self.A.n_rows} rows but B has {self.B.n_cols} columns"
            )
        if self.A.row_grades != self.B.col_grades:
            raise DimensionMismatch("row grades of A differ from column grades of B")
        self.A.check_entry_rule()
        self.B.check_entry_rule()
        if strict and any(multiply(self.B, self.A)):
            raise BAProductNonzero("B @ A is non-zero")

    def copy(self, column_type: str | None = None) -> "Firep":
        return Firep(
            self.A.copy(column_type), self.B.copy(column_type), self.x_values, self.y_values, self.labels
        )


def sort_firep(firep: Firep) -> Firep:
    """Colex-sort both matrices, keeping A's rows aligned with B's columns."""
    B, _, b_col_perm = sort_graded(firep.B)
    A = firep.A
    # A's rows follow B's column order.
    new_of_old = [0] * A.n_rows
    for new, old in enumerate(b_col_perm):
        new_of_old[old] = new
    a_cols = [[new_of_old[i] for i in c.entries()] for c in A.cols]
    A = GradedMatrix(B.col_grades, A.col_grades, a_cols, A.column_type, check=False)
    A, _, _ = sort_graded(A)
    return Firep(A, B, firep.x_values, firep.y_values, firep.labels)
