"""Text formats: firep input and minimal presentation output.

Firep file::

    firep
    <x label>
    <y label>
    t s r
    gx gy ; i1 i2 ...     (t lines: columns of A, indices into B's columns)
    gx gy ; i1 i2 ...     (s lines: columns of B, indices into B's rows)

'#' starts a comment. Blank lines are skipped. Grades may be integers or
decimals; each coordinate is compressed to its rank among the distinct values
and the original tokens are kept for printing. The file carries no grades for
B's rows; each is set to the meet of the B-columns containing it, so B's entry
rule holds by construction.
"""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from typing import Iterable, TextIO

from .errors import ParseError
from .grades import Grade, meet
from .matrix import Firep, GradedMatrix, sort_firep


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _number(tok: str, no: int) -> Decimal:
    try:
        v = Decimal(tok)
    except InvalidOperation:
        raise ParseError(no, f"bad grade value {tok!r}") from None
    if not v.is_finite():
        raise ParseError(no, f"non-finite grade value {tok!r}")
    return v


def _column_line(no: int, line: str, bound: int) -> tuple[str, str, list[int]]:
    if ";" not in line:
        raise ParseError(no, "expected 'gx gy ; indices'")
    head, tail = line.split(";", 1)
    grade = head.split()
    if len(grade) != 2:
        raise ParseError(no, f"expected two grade values, got {len(grade)}")
    try:
        idx = [int(t) for t in tail.split()]
    except ValueError:
        raise ParseError(no, "row indices must be integers") from None
    for a, b in zip(idx, idx[1:]):
        if b <= a:
            raise ParseError(no, "row indices must be strictly ascending")
    if idx and (idx[0] < 0 or idx[-1] >= bound):
        raise ParseError(no, f"row index out of range 0..{bound - 1}")
    return grade[0], grade[1], idx


def _compress_tokens(tokens: list[tuple[str, int]]) -> tuple[list[int], list[str]]:
    """Rank tokens by numeric value; the first spelling seen names each value."""
    values = [_number(t, no) for t, no in tokens]
    spelling: dict[Decimal, str] = {}
    for (tok, _), v in zip(tokens, values):
        spelling.setdefault(v, tok)
    distinct = sorted(spelling)
    rank = {v: k for k, v in enumerate(distinct)}
    return [rank[v] for v in values], [spelling[v] for v in distinct]


def parse_firep(source: str | TextIO, strict: bool = False, column_type: str = "vector") -> Firep:
    text = source if isinstance(source, str) else source.read()
    lines = _lines(text)
    if not lines or lines[0][1] != "firep":
        raise ParseError(lines[0][0] if lines else 1, "first line must be 'firep'")
    if len(lines) < 4:
        raise ParseError(lines[-1][0], "missing labels or counts line")
    labels = (lines[1][1], lines[2][1])
    no, counts = lines[3]
    try:
        t, s, r = (int(v) for v in counts.split())
    except ValueError:
        raise ParseError(no, "expected three counts 't s r'") from None
    if min(t, s, r) < 0:
        raise ParseError(no, "counts must be non-negative")
    body = lines[4:]
    if len(body) < t + s:
        raise ParseError(body[-1][0] if body else no, f"expected {t + s} column lines, found {len(body)}")
    if len(body) > t + s:
        raise ParseError(body[t + s][0], "unexpected extra line")

    parsed = [_column_line(n, ln, s) for n, ln in body[:t]]
    parsed += [_column_line(n, ln, r) for n, ln in body[t:]]
    line_nos = [n for n, _ in body]
    xs, x_values = _compress_tokens([(gx, n) for (gx, _, _), n in zip(parsed, line_nos)])
    ys, y_values = _compress_tokens([(gy, n) for (_, gy, _), n in zip(parsed, line_nos)])
    grades = list(zip(xs, ys))
    a_grades, b_grades = grades[:t], grades[t:]
    a_cols = [c for _, _, c in parsed[:t]]
    b_cols = [c for _, _, c in parsed[t:]]

    row_grades: list[Grade | None] = [None] * r
    for g, col in zip(b_grades, b_cols):
        for i in col:
            row_grades[i] = g if row_grades[i] is None else meet(row_grades[i], g)
    b_rows = [g if g is not None else (0, 0) for g in row_grades]

    B = GradedMatrix(b_rows, b_grades, b_cols, column_type)
    A = GradedMatrix(b_grades, a_grades, a_cols, column_type)
    firep = Firep(A, B, x_values, y_values, labels)
    firep.validate(strict=strict)
    return sort_firep(firep)


def read_firep(path: str, strict: bool = False, column_type: str = "vector") -> Firep:
    with open(path, encoding="utf-8") as fh:
        return parse_firep(fh, strict, column_type)


def format_value(values: list | None, k: int) -> str:
    if values is None:
        return str(k)
    v = values[k]
    return v if isinstance(v, str) else repr(v)


def _grade_text(g: Grade, x_values, y_values) -> str:
    return f"{format_value(x_values, g[0])} {format_value(y_values, g[1])}"


def _column_text(g: Grade, entries: Iterable[int], x_values, y_values) -> str:
    idx = " ".join(str(i) for i in entries)
    return f"{_grade_text(g, x_values, y_values)} ; {idx}".rstrip()


def write_firep(firep: Firep) -> str:
    A, B = firep.A, firep.B
    xv, yv = firep.x_values, firep.y_values
    out = ["firep", firep.labels[0], firep.labels[1], f"{A.n_cols} {B.n_cols} {B.n_rows}"]
    out += [_column_text(g, A.column(j), xv, yv) for j, g in enumerate(A.col_grades)]
    out += [_column_text(g, B.column(j), xv, yv) for j, g in enumerate(B.col_grades)]
    return "\n".join(out) + "\n"


def write_presentation(
    m: GradedMatrix,
    x_values: list | None = None,
    y_values: list | None = None,
    labels: tuple[str, str] = ("x", "y"),
) -> str:
    out = ["minimal presentation", labels[0], labels[1], f"{m.n_rows} {m.n_cols}"]
    out += [_grade_text(g, x_values, y_values) for g in m.row_grades]
    out += [_column_text(g, m.column(j), x_values, y_values) for j, g in enumerate(m.col_grades)]
    return "\n".join(out) + "\n"


def parse_presentation(text: str) -> tuple[list[tuple[str, str]], list[tuple[tuple[str, str], list[int]]]]:
    """Read back a presentation file as raw grade tokens; used by tests and tooling."""
    lines = _lines(text)
    if not lines or lines[0][1] != "minimal presentation":
        raise ParseError(lines[0][0] if lines else 1, "first line must be 'minimal presentation'")
    no, counts = lines[3]
    try:
        g, r = (int(v) for v in counts.split())
    except ValueError:
        raise ParseError(no, "expected counts 'g r'") from None
    body = lines[4:]
    if len(body) != g + r:
        raise ParseError(no, f"expected {g + r} lines after the counts, found {len(body)}")
    gens = []
    for n, ln in body[:g]:
        toks = ln.split()
        if len(toks) != 2:
            raise ParseError(n, "expected 'gx gy'")
        gens.append((toks[0], toks[1]))
    rels = []
    for n, ln in body[g:]:
        gx, gy, idx = _column_line(n, ln, g)
        rels.append(((gx, gy), idx))
    return gens, rels

