"""Grid-scanning baseline for minimal presentations.

``min_gens_lw`` and ``ker_basis_lw`` traverse the whole grid of x- and
y-coordinates that occur in the column grades, re-scanning every column to the
left of each cell. That traversal is quadratic in the number of distinct
coordinates and is kept on purpose; only the dense grid array is avoided.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator

from .columns import column_class
from .errors import ReparamFailure
from .grades import Grade, colex_key
from .matrix import SENTINEL, GradedMatrix, submatrix


def _require_sorted(m: GradedMatrix, name: str) -> None:
    if not m.is_colex_sorted():
        raise ValueError(f"{name} must be colex-sorted (use sort_graded)")


def reduce_lw(m: GradedMatrix, i: int, piv: list[int], use_auxiliary: bool = False) -> None:
    """Add earlier columns to column ``i`` until its pivot is unclaimed or claimed by a later column."""
    col = m.cols[i]
    aux = m.aux if use_auxiliary else None
    while True:
        j = col.pivot()
        if j < 0:
            return
        k = piv[j]
        if k == SENTINEL or k >= i:
            piv[j] = i
            return
        col.add(m.cols[k])
        if aux is not None:
            aux[i].add(aux[k])


class _Grid:
    """Row-major view of a colex-sorted column sequence.

    ``rows[y]`` is ``(start, xs)``: the first column index with y-grade ``y``
    and the ascending x-grades of that block of columns.
    """

    def __init__(self, col_grades: list[Grade]):
        self.xs = sorted({g[0] for g in col_grades})
        self.ys = sorted({g[1] for g in col_grades})
        self.rows: dict[int, tuple[int, list[int]]] = {}
        for idx, (x, y) in enumerate(col_grades):
            if y not in self.rows:
                self.rows[y] = (idx, [])
            self.rows[y][1].append(x)

    def cells(self) -> Iterator[tuple[int, int]]:
        """All cells in lexicographic order."""
        for x in self.xs:
            for y in self.ys:
                yield x, y

    def ranges(self, x: int, y: int) -> tuple[int, int, int]:
        """``(start, lo, hi)``: columns left of cell (x, y) are ``start..lo``, the cell itself ``lo..hi``."""
        row = self.rows.get(y)
        if row is None:
            return 0, 0, 0
        start, xs = row
        return start, start + bisect_left(xs, x), start + bisect_right(xs, x)


def min_gens_lw(A: GradedMatrix) -> GradedMatrix:
    """Minimal graded generating set of the image of ``A``."""
    _require_sorted(A, "A")
    work = A.copy()
    piv = [SENTINEL] * work.n_rows
    grid = _Grid(work.col_grades)
    cols = work.cols
    appended: dict[int, list[int]] = {}
    for x, y in grid.cells():
        start, lo, hi = grid.ranges(x, y)
        for i in range(start, lo):
            reduce_lw(work, i, piv)
        for i in range(lo, hi):
            reduce_lw(work, i, piv)
            if not cols[i].is_empty():
                appended[i] = cols[i].entries()
    order = sorted(appended)
    return GradedMatrix(
        work.row_grades,
        [work.col_grades[i] for i in order],
        [appended[i] for i in order],
        A.column_type,
        check=False,
    )


def _kernel_matrix(
    row_grades: list[Grade], found: list[tuple[Grade, list[int]]], column_type: str
) -> GradedMatrix:
    # Discovery order is lex in the grid; a stable colex sort gives the stored order.
    found = sorted(found, key=lambda t: colex_key(t[0]))
    return GradedMatrix(
        row_grades, [g for g, _ in found], [c for _, c in found], column_type, check=False
    )


def ker_basis_lw(B: GradedMatrix, cleared: frozenset[int] = frozenset()) -> GradedMatrix:
    """Graded basis of the kernel of ``B``.

    Rows of the result are indexed by the columns of ``B``. Columns in
    ``cleared`` are treated as already accounted for and never emit a kernel
    element. A column that is zero on its first visit yields its unit vector.
    """
    _require_sorted(B, "B")
    work = B.copy()
    work.enable_auxiliary()
    aux = work.aux
    piv = [SENTINEL] * work.n_rows
    grid = _Grid(work.col_grades)
    cols = work.cols
    found: list[tuple[Grade, list[int]]] = []
    for x, y in grid.cells():
        start, lo, hi = grid.ranges(x, y)
        for i in range(start, hi):
            was_nonzero = not cols[i].is_empty()
            reduce_lw(work, i, piv, use_auxiliary=True)
            if not cols[i].is_empty():
                continue
            first_visit = i >= lo
            if was_nonzero or (first_visit and i not in cleared):
                found.append(((x, y), aux[i].entries()))
    return _kernel_matrix(list(B.col_grades), found, B.column_type)


def reparam(G: GradedMatrix, K: GradedMatrix, threads: int = 1) -> GradedMatrix:
    """Express every column of ``G`` in the kernel basis ``K``.

    Returns ``M'`` with ``K @ M' = G``: rows graded by the columns of ``K``,
    columns graded by the columns of ``G``.
    """
    if G.n_rows != K.n_rows:
        raise ValueError(f"G has {G.n_rows} rows but K has {K.n_rows}")
    piv = [SENTINEL] * K.n_rows
    for c, col in enumerate(K.cols):
        p = col.pivot()
        if p < 0 or piv[p] != SENTINEL:
            raise ValueError("kernel basis columns must be non-zero with distinct pivots")
        piv[p] = c
    cls = column_class(G.column_type)
    kcols = K.cols if K.column_type == G.column_type else [cls(c.entries()) for c in K.cols]

    def solve(g: int) -> list[int]:
        work = G.cols[g].copy()
        coeffs = cls()
        while True:
            j = work.pivot()
            if j < 0:
                return coeffs.entries()
            k = piv[j]
            if k == SENTINEL:
                raise ReparamFailure(f"generator column {g} is not in the span of the kernel basis")
            work.add(kcols[k])
            coeffs.add(cls((k,)))

    if threads > 1 and G.n_cols > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            out_cols = list(pool.map(solve, range(G.n_cols)))
    else:
        out_cols = [solve(g) for g in range(G.n_cols)]
    return GradedMatrix(K.col_grades, G.col_grades, out_cols, G.column_type, check=False)


def is_local(m: GradedMatrix, i: int) -> bool:
    """True if column ``i`` is empty or its pivot row has the column's grade."""
    return m.is_local(i)


def minimize_lw(
    m: GradedMatrix, removed: list[tuple[int, int]] | None = None
) -> GradedMatrix:
    """Eliminate local pairs left to right and drop them.

    Removed ``(row, column)`` pairs are appended to ``removed`` when given; an
    empty local column is reported with row ``-1``.
    """
    _require_sorted(m, "M'")
    work = m.copy()
    cols = work.cols
    n = work.n_cols
    dead_rows: set[int] = set()
    dead_cols: set[int] = set()
    for i in range(n):
        if not work.is_local(i):
            continue
        j = cols[i].pivot()
        if j >= 0:
            for k in range(i + 1, n):
                if cols[k].contains(j):
                    cols[k].add(cols[i])
            dead_rows.add(j)
        dead_cols.add(i)
        if removed is not None:
            removed.append((j, i))
    rows = [r for r in range(work.n_rows) if r not in dead_rows]
    keep = [c for c in range(n) if c not in dead_cols]
    return submatrix(work, rows, keep)


def min_pres_lw(firep) -> GradedMatrix:
    """Full baseline pipeline: min_gens, ker_basis, reparam, minimize."""
    G = min_gens_lw(firep.A)
    K = ker_basis_lw(firep.B)
    return minimize_lw(reparam(G, K))
