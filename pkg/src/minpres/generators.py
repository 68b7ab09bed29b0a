"""Bi-filtered simplicial complexes turned into fireps (homology dimension 1).

A is the triangle/edge boundary matrix, B the edge/vertex boundary matrix.
Real-valued grades are rank-compressed per coordinate; the original values
are kept on the returned firep for output.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import MeshFormatError, TooLarge
from .matrix import Firep, GradedMatrix, sort_firep

MAX_TRIANGLES = 2_000_000


def compress(values: Sequence) -> tuple[list[int], list]:
    """Map values to their rank among the sorted distinct values.

    Returns the ranks and the sorted distinct values (index = rank).
    """
    distinct = sorted(set(values))
    rank = {v: k for k, v in enumerate(distinct)}
    return [rank[v] for v in values], distinct


def firep_from_complex(
    vertex_grades: Sequence[tuple],
    edges: Sequence[tuple[int, int]],
    edge_grades: Sequence[tuple],
    triangles: Sequence[tuple[int, int, int]],
    triangle_grades: Sequence[tuple],
    labels: tuple[str, str] = ("x", "y"),
    column_type: str = "vector",
) -> Firep:
    """Firep of a bi-graded 2-complex given explicit grades for every simplex."""
    all_grades = list(vertex_grades) + list(edge_grades) + list(triangle_grades)
    xs, x_values = compress([float(g[0]) if not isinstance(g[0], int) else g[0] for g in all_grades])
    ys, y_values = compress([float(g[1]) if not isinstance(g[1], int) else g[1] for g in all_grades])
    comp = list(zip(xs, ys))
    nv, ne = len(vertex_grades), len(edges)
    v_gr, e_gr, t_gr = comp[:nv], comp[nv:nv + ne], comp[nv + ne:]

    edge_index: dict[tuple[int, int], int] = {}
    b_cols = []
    for k, (u, v) in enumerate(edges):
        if u == v:
            raise MeshFormatError(f"degenerate edge {(u, v)}")
        edge_index[(min(u, v), max(u, v))] = k
        b_cols.append([u, v])
    a_cols = []
    for a, b, c in triangles:
        try:
            a_cols.append(sorted(edge_index[tuple(sorted(e))] for e in ((a, b), (a, c), (b, c))))
        except KeyError as exc:
            raise MeshFormatError(f"triangle {(a, b, c)} has an edge missing from the edge list") from exc

    B = GradedMatrix(v_gr, e_gr, b_cols, column_type)
    A = GradedMatrix(e_gr, t_gr, a_cols, column_type)
    firep = Firep(A, B, x_values, y_values, labels)
    return sort_firep(firep)


def _max_grade(grades: Sequence[tuple]) -> tuple:
    return (max(g[0] for g in grades), max(g[1] for g in grades))


@dataclass
class TriMesh:
    vertices: np.ndarray  # (n, 3)
    triangles: np.ndarray  # (f, 3) vertex indices

    def validate(self) -> None:
        v = np.asarray(self.vertices)
        t = np.asarray(self.triangles)
        if v.ndim != 2 or v.shape[1] < 2:
            raise MeshFormatError("vertices must be an (n, 2) or (n, 3) array")
        if not np.all(np.isfinite(v)):
            raise MeshFormatError("non-finite vertex coordinate")
        if t.size and (t.ndim != 2 or t.shape[1] != 3):
            raise MeshFormatError("triangles must be an (f, 3) array")
        if t.size and (t.min() < 0 or t.max() >= len(v)):
            raise MeshFormatError("triangle references a vertex out of range")
        for tri in t:
            if len(set(int(i) for i in tri)) != 3:
                raise MeshFormatError(f"degenerate triangle {tuple(int(i) for i in tri)}")

    def edges(self) -> list[tuple[int, int]]:
        out: set[tuple[int, int]] = set()
        for a, b, c in np.asarray(self.triangles, dtype=int):
            for u, v in ((a, b), (a, c), (b, c)):
                out.add((int(min(u, v)), int(max(u, v))))
        return sorted(out)


def gen_lower_star(mesh: TriMesh, column_type: str = "vector") -> Firep:
    """Lower-star bifiltration: vertices graded by (x, y), z ignored; faces take the max."""
    mesh.validate()
    verts = np.asarray(mesh.vertices, dtype=float)
    vgrades = [(float(p[0]), float(p[1])) for p in verts]
    edges = mesh.edges()
    tris = [tuple(int(i) for i in t) for t in np.asarray(mesh.triangles, dtype=int)]
    egrades = [_max_grade([vgrades[u], vgrades[v]]) for u, v in edges]
    tgrades = [_max_grade([vgrades[a], vgrades[b], vgrades[c]]) for a, b, c in tris]
    return firep_from_complex(vgrades, edges, egrades, tris, tgrades, ("x", "y"), column_type)


def codensity(points: np.ndarray, bandwidth: float) -> np.ndarray:
    """Negated Gaussian kernel density estimate, sum_u exp(-|v-u|^2 / (2 h^2))."""
    pts = np.asarray(points, dtype=float)
    d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1)
    return -np.exp(-d2 / (2.0 * bandwidth**2)).sum(axis=1)


def gen_function_rips(
    points: np.ndarray,
    bandwidth: float,
    max_triangles: int = MAX_TRIANGLES,
    column_type: str = "vector",
) -> Firep:
    """Function-Rips bifiltration on the full complex over the points.

    x: 0 for vertices, edge length for edges, longest edge for triangles.
    y: codensity for vertices, extended to edges and triangles by the maximum.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) < 3:
        raise ValueError("need at least 3 points")
    if not np.all(np.isfinite(pts)):
        raise ValueError("non-finite coordinate")
    if bandwidth <= 0:
        raise ValueError("bandwidth must be positive")
    n = len(pts)
    if math.comb(n, 3) > max_triangles:
        raise TooLarge(f"{math.comb(n, 3)} triangles exceed the cap of {max_triangles}")
    dist = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
    f = codensity(pts, bandwidth)
    vgrades = [(0.0, float(f[v])) for v in range(n)]
    edges = list(itertools.combinations(range(n), 2))
    egrades = [(float(dist[u, v]), float(max(f[u], f[v]))) for u, v in edges]
    tris = list(itertools.combinations(range(n), 3))
    tgrades = [
        (float(max(dist[a, b], dist[a, c], dist[b, c])), float(max(f[a], f[b], f[c])))
        for a, b, c in tris
    ]
    return firep_from_complex(vgrades, edges, egrades, tris, tgrades, ("distance", "codensity"), column_type)


def noisy_circle(n: int, noise: float = 0.1, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0, 2 * np.pi, n)
    pts = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    return pts + rng.normal(0, noise, pts.shape)


def gen_random_firep(
    n_vertices: int,
    edge_probability: float,
    grade_range: int,
    seed: int,
    max_bump: int = 1,
    column_type: str = "vector",
) -> Firep:
    """Random bi-graded flag complex up to dimension 2.

    Vertex grades are uniform in [0, grade_range)^2. Every higher simplex gets
    the max over its vertices plus a random bump in [0, max_bump] per
    coordinate, then is raised to dominate its facets.
    """
    if not 3 <= n_vertices <= 15:
        raise ValueError("n_vertices must be between 3 and 15")
    rng = np.random.default_rng(seed)
    vgrades = [tuple(int(c) for c in rng.integers(0, grade_range, 2)) for _ in range(n_vertices)]
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(n_vertices), 2)
        if rng.random() < edge_probability
    ]
    edge_set = set(edges)
    tris = [
        (a, b, c)
        for a, b, c in itertools.combinations(range(n_vertices), 3)
        if (a, b) in edge_set and (a, c) in edge_set and (b, c) in edge_set
    ]

    def bumped(g: tuple[int, int]) -> tuple[int, int]:
        if max_bump <= 0:
            return g
        bx, by = (int(b) for b in rng.integers(0, max_bump + 1, 2))
        return (g[0] + bx, g[1] + by)

    egrade = {}
    for u, v in edges:
        g = bumped(_max_grade([vgrades[u], vgrades[v]]))
        egrade[(u, v)] = _max_grade([g, vgrades[u], vgrades[v]])
    tgrades = []
    for a, b, c in tris:
        g = bumped(_max_grade([vgrades[a], vgrades[b], vgrades[c]]))
        tgrades.append(_max_grade([g, egrade[(a, b)], egrade[(a, c)], egrade[(b, c)]]))
    return firep_from_complex(
        vgrades, edges, [egrade[e] for e in edges], tris, tgrades, ("x", "y"), column_type
    )


def grid_mesh(n_vertices: int, seed: int = 0) -> TriMesh:
    """Triangulated k-by-k grid (k = ceil(sqrt(n))) with random vertex coordinates.

    Random coordinates make nearly every vertex grade distinct, so the grid of
    grades is about as wide and tall as the number of vertices.
    """
    k = max(2, math.isqrt(n_vertices - 1) + 1)
    rng = np.random.default_rng(seed)
    verts = rng.uniform(0.0, 1.0, (k * k, 3))
    tris = []
    for r in range(k - 1):
        for c in range(k - 1):
            v0 = r * k + c
            v1, v2, v3 = v0 + 1, v0 + k, v0 + k + 1
            tris.append((v0, v1, v3))
            tris.append((v0, v3, v2))
    return TriMesh(verts, np.array(tris, dtype=int))


def read_off(text: str) -> TriMesh:
    """Parse an OFF mesh: header, counts line, vertex lines, face lines (triangles only)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("OFF"):
        raise MeshFormatError("missing OFF header")
    head = lines[0][3:].split()
    rest = lines[1:]
    if not head:
        if not rest:
            raise MeshFormatError("missing counts line")
        head, rest = rest[0].split(), rest[1:]
    try:
        nv, nf = int(head[0]), int(head[1])
    except (ValueError, IndexError) as exc:
        raise MeshFormatError("bad counts line") from exc
    if len(rest) < nv + nf:
        raise MeshFormatError(f"expected {nv} vertex and {nf} face lines, found {len(rest)} lines")
    try:
        verts = np.array([[float(t) for t in rest[i].split()[:3]] for i in range(nv)], dtype=float)
    except ValueError as exc:
        raise MeshFormatError("bad vertex line") from exc
    tris = []
    for ln in rest[nv:nv + nf]:
        toks = ln.split()
        try:
            cnt = int(toks[0])
            idx = [int(t) for t in toks[1:1 + cnt]]
        except (ValueError, IndexError) as exc:
            raise MeshFormatError(f"bad face line {ln!r}") from exc
        if cnt != 3 or len(idx) != 3:
            raise MeshFormatError(f"only triangular faces are supported: {ln!r}")
        tris.append(idx)
    mesh = TriMesh(verts, np.array(tris, dtype=int).reshape(-1, 3))
    mesh.validate()
    return mesh


def read_points(text: str) -> np.ndarray:
    """One point per line, whitespace-separated coordinates; '#' starts a comment."""
    rows = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            rows.append([float(t) for t in ln.split()])
    if not rows or len({len(r) for r in rows}) != 1:
        raise ValueError("point file must contain rows of equal dimension")
    return np.array(rows, dtype=float)
