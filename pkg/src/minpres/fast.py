"""Queue-driven minimal presentation pipeline.

Improvements over the baseline: a lexicographic priority queue of grades to
visit instead of the full grid, one priority queue of column indices per
y-grade instead of re-scanning rows of the grid, lazy (bulk) minimization,
chunk preprocessing of the input, and optional clearing of the kernel
computation.
"""

from __future__ import annotations

import heapq
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import OptionConflict
from .grades import Grade, colex_key, leq
from .lw import _kernel_matrix, _require_sorted, ker_basis_lw, min_gens_lw, minimize_lw, reparam
from .matrix import SENTINEL, Firep, GradedMatrix, submatrix


class GradeQueue:
    """Min-queue of grades in lexicographic order; equal grades pop once."""

    def __init__(self, seed=()):
        self._heap: list[Grade] = list(seed)
        heapq.heapify(self._heap)
        self.pushed: list[Grade] = []

    def push(self, g: Grade) -> None:
        heapq.heappush(self._heap, g)
        self.pushed.append(g)

    def pop(self) -> Grade:
        h = self._heap
        g = heapq.heappop(h)
        while h and h[0] == g:
            heapq.heappop(h)
        return g

    def __bool__(self) -> bool:
        return bool(self._heap)

    def __len__(self) -> int:
        return len(self._heap)


class ColumnQueues:
    """One min-queue of column indices per y-grade; duplicates pop once."""

    def __init__(self):
        self._queues: dict[int, list[int]] = {}

    def push(self, y: int, i: int) -> None:
        q = self._queues.get(y)
        if q is None:
            self._queues[y] = q = []
        heapq.heappush(q, i)

    def pop(self, y: int) -> int:
        q = self._queues[y]
        i = heapq.heappop(q)
        while q and q[0] == i:
            heapq.heappop(q)
        return i

    def has(self, y: int) -> bool:
        return bool(self._queues.get(y))


@dataclass
class QueueTrace:
    """Record of a queued traversal: grades popped and grades pushed after seeding."""

    visited: list[Grade] = field(default_factory=list)
    pushed: list[Grade] = field(default_factory=list)
    column_pushes: list[tuple[int, int]] = field(default_factory=list)


def reduce_new(
    m: GradedMatrix,
    i: int,
    grade: Grade,
    piv: list[int],
    grade_queue: GradeQueue | None = None,
    column_queues: ColumnQueues | None = None,
    use_auxiliary: bool = False,
    local_check: bool = False,
    trace: QueueTrace | None = None,
) -> None:
    """Reduce column ``i`` at the current ``grade``.

    When the pivot is claimed by a later column ``k``, ``k`` is scheduled on
    the queue of its y-grade and the grade ``(x, y_k)`` on the grade queue
    (only if ``y_k`` exceeds the current y; otherwise ``k`` is handled in the
    current iteration anyway). With ``local_check`` the reduction stops as
    soon as the column is no longer local.
    """
    col = m.cols[i]
    cols = m.cols
    aux = m.aux if use_auxiliary else None
    while True:
        j = col.pivot()
        if j < 0:
            return
        k = piv[j]
        if k == SENTINEL:
            piv[j] = i
            return
        if k == i:
            return
        if k > i:
            yk = m.col_grades[k][1]
            if column_queues is not None:
                column_queues.push(yk, k)
                if trace is not None:
                    trace.column_pushes.append((yk, k))
            if grade_queue is not None and yk > grade[1]:
                g = (grade[0], yk)
                grade_queue.push(g)
                if trace is not None:
                    trace.pushed.append(g)
            piv[j] = i
            return
        if local_check and m.row_grades[j] != m.col_grades[i]:
            return
        col.add(cols[k])
        if aux is not None:
            aux[i].add(aux[k])


def _grade_blocks(col_grades: list[Grade]) -> dict[Grade, range]:
    blocks: dict[Grade, range] = {}
    n = len(col_grades)
    i = 0
    while i < n:
        g = col_grades[i]
        j = i + 1
        while j < n and col_grades[j] == g:
            j += 1
        blocks[g] = range(i, j)
        i = j
    return blocks


def min_gens_new(A: GradedMatrix, trace: QueueTrace | None = None) -> GradedMatrix:
    """Queue-driven ``min_gens``; output identical to ``min_gens_lw``."""
    _require_sorted(A, "A")
    work = A.copy()
    cols = work.cols
    piv = [SENTINEL] * work.n_rows
    blocks = _grade_blocks(work.col_grades)
    gq = GradeQueue(blocks)
    cq = ColumnQueues()
    appended: dict[int, list[int]] = {}
    while gq:
        g = gq.pop()
        if trace is not None:
            trace.visited.append(g)
        y = g[1]
        for i in blocks.get(g, ()):
            cq.push(y, i)
        while cq.has(y):
            i = cq.pop(y)
            reduce_new(work, i, g, piv, gq, cq, trace=trace)
            if work.col_grades[i] == g and not cols[i].is_empty():
                appended[i] = cols[i].entries()
    order = sorted(appended)
    return GradedMatrix(
        work.row_grades,
        [work.col_grades[i] for i in order],
        [appended[i] for i in order],
        A.column_type,
        check=False,
    )


def ker_basis_new(
    B: GradedMatrix, cleared: frozenset[int] = frozenset(), trace: QueueTrace | None = None
) -> GradedMatrix:
    """Queue-driven ``ker_basis``; output identical to ``ker_basis_lw``."""
    _require_sorted(B, "B")
    work = B.copy()
    work.enable_auxiliary()
    aux = work.aux
    cols = work.cols
    piv = [SENTINEL] * work.n_rows
    blocks = _grade_blocks(work.col_grades)
    gq = GradeQueue(blocks)
    cq = ColumnQueues()
    found: list[tuple[Grade, list[int]]] = []
    while gq:
        g = gq.pop()
        if trace is not None:
            trace.visited.append(g)
        y = g[1]
        for i in blocks.get(g, ()):
            cq.push(y, i)
        while cq.has(y):
            i = cq.pop(y)
            was_nonzero = not cols[i].is_empty()
            reduce_new(work, i, g, piv, gq, cq, use_auxiliary=True, trace=trace)
            if not cols[i].is_empty():
                continue
            first_visit = work.col_grades[i] == g
            if was_nonzero or (first_visit and i not in cleared):
                found.append((g, aux[i].entries()))
    return _kernel_matrix(list(B.col_grades), found, B.column_type)


def _lazy_eliminate(
    m: GradedMatrix, threads: int = 1
) -> tuple[list[bool], list[bool], list[tuple[int, int]], list[int]]:
    """Both phases of lazy minimization, in place on ``m``.

    Returns row marks, column marks, the marked ``(row, column)`` pairs in
    discovery order and the final pivot map.
    """
    cols = m.cols
    n = m.n_cols
    piv = [SENTINEL] * m.n_rows
    row_marked = [False] * m.n_rows
    col_marked = [False] * n
    pairs: list[tuple[int, int]] = []
    for i in range(n):
        reduce_new(m, i, m.col_grades[i], piv, local_check=True)
        if m.is_local(i):
            j = cols[i].pivot()
            if j >= 0:
                row_marked[j] = True
            col_marked[i] = True
            pairs.append((j, i))

    cls = type(cols[0]) if cols else None

    def clean(c: int):
        work = cols[c].copy()
        kept: list[int] = []
        while True:
            j = work.pivot()
            if j < 0:
                break
            if row_marked[j]:
                work.add(cols[piv[j]])
            else:
                kept.append(work.pop_pivot())
        kept.reverse()
        return cls(kept)

    targets = [c for c in range(n) if not col_marked[c]]
    if threads > 1 and len(targets) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            cleaned = list(pool.map(clean, targets))
    else:
        cleaned = [clean(c) for c in targets]
    # Write back only after every worker is done reading the marked columns.
    for c, new in zip(targets, cleaned):
        cols[c] = new
    return row_marked, col_marked, pairs, piv


def minimize_lazy(
    m: GradedMatrix, threads: int = 1, removed: list[tuple[int, int]] | None = None
) -> GradedMatrix:
    """Lazy minimization: mark local pairs first, then remove them in bulk."""
    _require_sorted(m, "M'")
    work = m.copy()
    row_marked, col_marked, pairs, _ = _lazy_eliminate(work, threads)
    if removed is not None:
        removed.extend(pairs)
    rows = [r for r in range(work.n_rows) if not row_marked[r]]
    keep = [c for c in range(work.n_cols) if not col_marked[c]]
    return submatrix(work, rows, keep)


def chunk(firep: Firep, threads: int = 1, in_place: bool = False) -> Firep:
    """Remove local pairs of ``A`` (and the paired columns of ``B``) up front.

    With ``in_place`` the input's ``A`` is consumed, so that the original and
    the reduced pair are never held at the same time.
    """
    A = firep.A if in_place else firep.A.copy()
    B = firep.B
    _require_sorted(A, "A")
    row_marked, col_marked, _, _ = _lazy_eliminate(A, threads)
    rows = [r for r in range(A.n_rows) if not row_marked[r]]
    keep = [c for c in range(A.n_cols) if not col_marked[c]]
    A2 = submatrix(A, rows, keep)
    B2 = submatrix(B, list(range(B.n_rows)), rows)
    if in_place:
        firep.A = firep.B = None  # type: ignore[assignment]
    return Firep(A2, B2, firep.x_values, firep.y_values, firep.labels)


def is_pivot_dominated(m: GradedMatrix, j: int) -> bool:
    """Non-zero column whose every entry's row grade is <= the pivot row's grade."""
    entries = m.cols[j].entries()
    if not entries:
        return False
    top = m.row_grades[entries[-1]]
    return all(leq(m.row_grades[i], top) for i in entries)


def apply_clearing(G: GradedMatrix, B: GradedMatrix) -> tuple[list[tuple[Grade, list[int]]], GradedMatrix, frozenset[int]]:
    """Seed kernel columns from pivot-dominated generators and zero the matching columns of ``B``.

    Only the first pivot-dominated generator per pivot is used: two of them
    with the same pivot differ by a kernel element of smaller pivot and would
    make the basis dependent.

    Returns the seeded ``(grade, entries)`` columns, the modified copy of ``B``
    and the set of cleared column indices.
    """
    seeded: list[tuple[Grade, list[int]]] = []
    cleared: set[int] = set()
    for j in range(G.n_cols):
        if not is_pivot_dominated(G, j):
            continue
        i = G.cols[j].pivot()
        if i in cleared:
            continue
        cleared.add(i)
        seeded.append((G.row_grades[i], G.cols[j].entries()))
    B2 = B.copy()
    for i in cleared:
        B2.cols[i].clear()
    return seeded, B2, frozenset(cleared)


def _merge_kernel(K: GradedMatrix, seeded: list[tuple[Grade, list[int]]]) -> GradedMatrix:
    if not seeded:
        return K
    found = list(zip(K.col_grades, K.columns())) + list(seeded)
    found.sort(key=lambda t: (colex_key(t[0]), t[1][-1]))
    return GradedMatrix(K.row_grades, [g for g, _ in found], [c for _, c in found], K.column_type, check=False)


@dataclass
class PipelineOptions:
    use_chunk: bool = True
    use_queues: bool = True
    use_lazy: bool = True
    use_clearing: bool = False
    parallel_mgkb: bool = False
    threads: int = 1
    column_type: str = "vector"

    def validate(self) -> None:
        if self.use_clearing and self.parallel_mgkb:
            raise OptionConflict("clearing needs min_gens to finish before ker_basis starts; it cannot run with parallel min_gens/ker_basis")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


PHASES = ("chunk", "min_gens", "ker_basis", "reparam", "minimize")


def min_pres_fast(
    firep: Firep,
    options: PipelineOptions | None = None,
    timings: dict[str, float] | None = None,
    consume: bool = False,
    **kwargs,
) -> GradedMatrix:
    """Minimal presentation of the module given by ``firep``.

    Options may be passed as a ``PipelineOptions`` or as keyword arguments.
    Per-phase wall times (seconds) are written to ``timings`` when given.
    """
    opts = options or PipelineOptions(**kwargs)
    opts.validate()
    t = timings if timings is not None else {}
    for name in PHASES:
        t.setdefault(name, 0.0)

    if firep.A.column_type != opts.column_type or firep.B.column_type != opts.column_type:
        firep = firep.copy(opts.column_type)
        consume = True

    if opts.use_chunk:
        t0 = time.perf_counter()
        firep = chunk(firep, opts.threads, in_place=consume)
        t["chunk"] = time.perf_counter() - t0
    A, B = firep.A, firep.B
    del firep

    min_gens = min_gens_new if opts.use_queues else min_gens_lw
    ker_basis = ker_basis_new if opts.use_queues else ker_basis_lw

    def run_mg() -> GradedMatrix:
        t0 = time.perf_counter()
        G = min_gens(A)
        t["min_gens"] = time.perf_counter() - t0
        return G

    def run_kb(B_in: GradedMatrix, cleared: frozenset[int] = frozenset()) -> GradedMatrix:
        t0 = time.perf_counter()
        K = ker_basis(B_in, cleared)
        t["ker_basis"] = time.perf_counter() - t0
        return K

    if opts.parallel_mgkb:
        with ThreadPoolExecutor(max_workers=2) as pool:
            fut_g = pool.submit(run_mg)
            fut_k = pool.submit(run_kb, B)
            G, K = fut_g.result(), fut_k.result()
    else:
        G = run_mg()
        if opts.use_clearing:
            t0 = time.perf_counter()
            seeded, B_cleared, cleared = apply_clearing(G, B)
            K = _merge_kernel(ker_basis(B_cleared, cleared), seeded)
            t["ker_basis"] = time.perf_counter() - t0
        else:
            K = run_kb(B)

    t0 = time.perf_counter()
    M1 = reparam(G, K, opts.threads)
    t["reparam"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    M = minimize_lazy(M1, opts.threads) if opts.use_lazy else minimize_lw(M1)
    t["minimize"] = time.perf_counter() - t0
    return M
