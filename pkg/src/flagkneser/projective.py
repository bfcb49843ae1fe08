"""PG(n,q) for n in {3,4,5}: canonical subspaces, incidences, chambers.

Subspaces are stored as RREF basis matrices and referred to everywhere by a
dense id within their dimension class.  Incidence is kept as int bitsets over
point ids (``line_points[i]``, ``plane_points[j]``).
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import NamedTuple

import numpy as np

from .galois import FieldTable, Unsupported, field_create
from .graph import OppositionGraph, bits, rows_from_bool
from .linalg import normalize, nullspace, rref, rref_matrices, span_points

CHAMBER_GRAPH_MAX_Q = 4


@dataclass(frozen=True)
class Subspace:
    dim: int
    basis: tuple[tuple[int, ...], ...]
    id: int


class Chamber(NamedTuple):
    point_id: int
    line_id: int
    plane_id: int


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@dataclass(frozen=True)
class Geometry:
    n: int
    q: int
    F: FieldTable = field(repr=False)
    points: tuple[Subspace, ...] = field(repr=False)
    lines: tuple[Subspace, ...] = field(repr=False)
    planes: tuple[Subspace, ...] = field(repr=False)
    point_index: dict = field(repr=False, compare=False)
    line_points: tuple[int, ...] = field(repr=False)
    plane_points: tuple[int, ...] = field(repr=False)

    def point_id(self, v) -> int:
        return self.point_index[normalize(v, self.F)]

    def point_vector(self, pid: int) -> tuple[int, ...]:
        return self.points[pid].basis[0]

    def point_in_line(self, p: int, l: int) -> bool:
        return bool(self.line_points[l] >> p & 1)

    def point_in_plane(self, p: int, pl: int) -> bool:
        return bool(self.plane_points[pl] >> p & 1)

    def line_in_plane(self, l: int, pl: int) -> bool:
        return self.line_points[l] & ~self.plane_points[pl] == 0

    def lines_meet(self, a: int, b: int) -> bool:
        return bool(self.line_points[a] & self.line_points[b])

    @cached_property
    def lines_on_point(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.points]
        for l, pts in enumerate(self.line_points):
            for p in bits(pts):
                out[p].append(l)
        return tuple(tuple(x) for x in out)

    @cached_property
    def planes_on_line(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(j for j, pp in enumerate(self.plane_points) if lp & ~pp == 0)
            for lp in self.line_points
        )

    @cached_property
    def line_index(self) -> dict:
        return {s.basis: s.id for s in self.lines}

    @cached_property
    def plane_index(self) -> dict:
        return {s.basis: s.id for s in self.planes}

    def subspace_id(self, rows) -> tuple[int, int]:
        """(dim, id) of the span of rows."""
        basis = rref(rows, self.F)
        d = len(basis) - 1
        if d == 0:
            return 0, self.point_index[basis[0]]
        if d == 1:
            return 1, self.line_index[basis]
        if d == 2:
            return 2, self.plane_index[basis]
        raise ValueError("span has dimension %d" % d)

    def incidence_matrix(self, kind: str) -> np.ndarray:
        """Boolean point-by-line or point-by-plane incidence."""
        sets = self.line_points if kind == "line" else self.plane_points
        m = np.zeros((len(self.points), len(sets)), dtype=bool)
        for j, s in enumerate(sets):
            m[list(bits(s)), j] = True
        return m


def enumerate_subspaces(n: int, dim: int, F: FieldTable) -> tuple[Subspace, ...]:
    return tuple(Subspace(dim, m, i) for i, m in enumerate(rref_matrices(dim + 1, n + 1, F)))


@lru_cache(maxsize=None)
def enumerate_geometry(n: int, q: int) -> Geometry:
    """Points (and for n=3,4 lines, for n=3 planes) of PG(n,q)."""
    if n not in (3, 4, 5):
        raise Unsupported("PG(%d,q) not supported" % n)
    F = field_create(q)
    points = enumerate_subspaces(n, 0, F)
    index = {p.basis[0]: p.id for p in points}
    lines: tuple[Subspace, ...] = ()
    planes: tuple[Subspace, ...] = ()
    if n in (3, 4):
        lines = enumerate_subspaces(n, 1, F)
    if n == 3:
        planes = enumerate_subspaces(n, 2, F)

    def point_set(s: Subspace) -> int:
        b = 0
        for v in span_points(s.basis, F):
            b |= 1 << index[v]
        return b

    return Geometry(
        n, q, F, points, lines, planes, index,
        tuple(point_set(s) for s in lines),
        tuple(point_set(s) for s in planes),
    )


def dual_id(g: Geometry, dim: int, sid: int) -> int:
    """Id of the orthogonal complement (standard dot product) in PG(3,q)."""
    sub = (g.points, g.lines, g.planes)[dim][sid]
    comp = nullspace(sub.basis, g.F, g.n + 1)
    return g.subspace_id(comp)[1]


def chambers_pg3(g: Geometry) -> list[Chamber]:
    if g.n != 3:
        raise Unsupported("chambers are defined for PG(3,q)")
    out = []
    for p in range(len(g.points)):
        for l in g.lines_on_point[p]:
            for pl in g.planes_on_line[l]:
                out.append(Chamber(p, l, pl))
    return out


def opposite_pg(c1: Chamber, c2: Chamber, g: Geometry) -> bool:
    return (
        not g.point_in_plane(c1.point_id, c2.plane_id)
        and not g.point_in_plane(c2.point_id, c1.plane_id)
        and not g.lines_meet(c1.line_id, c2.line_id)
    )


def _skew_matrix(line_points, n_points: int) -> np.ndarray:
    lp = np.zeros((len(line_points), n_points), dtype=bool)
    for i, s in enumerate(line_points):
        lp[i, list(bits(s))] = True
    meet = (lp.astype(np.int32) @ lp.T.astype(np.int32)) > 0
    return ~meet


def chamber_graph(g: Geometry, threads: int = 1, force: bool = False) -> OppositionGraph:
    """Chamber opposition graph of PG(3,q); vertex order as chambers_pg3."""
    if g.q > CHAMBER_GRAPH_MAX_Q and not force:
        raise Unsupported("chamber graph for q=%d exceeds the q<=4 guard (use force)" % g.q)
    chambers = chambers_pg3(g)
    P = np.array([c.point_id for c in chambers])
    L = np.array([c.line_id for c in chambers])
    Pi = np.array([c.plane_id for c in chambers])
    pip = g.incidence_matrix("plane")
    skew = _skew_matrix(g.line_points, len(g.points))
    # chamber i sees chamber j iff P_i off plane_j, P_j off plane_i, lines skew
    off = ~pip[P][:, Pi]

    def block(lo_hi):
        lo, hi = lo_hi
        m = off[lo:hi] & off[:, lo:hi].T & skew[L[lo:hi]][:, L]
        return rows_from_bool(m)

    n = len(chambers)
    step = 512
    blocks = [(lo, min(n, lo + step)) for lo in range(0, n, step)]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as ex:
        parts = list(ex.map(block, blocks))
    rows = tuple(r for part in parts for r in part)
    return OppositionGraph(rows, labels=tuple(chambers), name="pg3-q%d" % g.q)
