"""Bi-grades: points of Z^2 with the partial order and the two refining total orders."""

from __future__ import annotations

from typing import Iterable, Tuple

Grade = Tuple[int, int]

LESS, EQUAL, GREATER = -1, 0, 1


def leq(a: Grade, b: Grade) -> bool:
    """Coordinatewise partial order."""
    return a[0] <= b[0] and a[1] <= b[1]


def colex_key(g: Grade) -> Tuple[int, int]:
    return (g[1], g[0])


def lex_key(g: Grade) -> Tuple[int, int]:
    return (g[0], g[1])


def compare_colex(a: Grade, b: Grade) -> int:
    """Compare y first, then x. Returns LESS, EQUAL or GREATER."""
    ka, kb = colex_key(a), colex_key(b)
    if ka < kb:
        return LESS
    if ka > kb:
        return GREATER
    return EQUAL


def compare_lex(a: Grade, b: Grade) -> int:
    if a < b:
        return LESS
    if a > b:
        return GREATER
    return EQUAL


def join(a: Grade, b: Grade) -> Grade:
    return (max(a[0], b[0]), max(a[1], b[1]))


def meet(a: Grade, b: Grade) -> Grade:
    return (min(a[0], b[0]), min(a[1], b[1]))


def join_closure(grades: Iterable[Grade]) -> list[Grade]:
    """Distinct grades together with all pairwise joins, sorted lexicographically."""
    base = sorted(set(grades))
    out = set(base)
    for i, a in enumerate(base):
        for b in base[i + 1:]:
            out.add(join(a, b))
    return sorted(out)
