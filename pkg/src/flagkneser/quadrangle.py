"""Finite generalized quadrangles: axiom checking, classical models, flags.

A GQ is kept as abstract incidence: ``lines[i]`` is the sorted tuple of point
ids on line i.  The classical models (W(q), Q(4,q), H(4,4)) compile down to
this form and additionally keep the projective coordinates of their points.
"""
from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .galois import Unsupported, field_create
from .graph import OppositionGraph, bits, rows_from_bool, to_bitset
from .projective import enumerate_geometry

FLAG_GRAPH_MAX = 2000


class NotGQ(ValueError):
    def __init__(self, reason: str, witness=None):
        super().__init__(reason if witness is None else "%s (witness %r)" % (reason, witness))
        self.reason = reason
        self.witness = witness


class InvalidGrid(ValueError):
    pass


class Flag(NamedTuple):
    point_id: int
    line_id: int


@dataclass(frozen=True)
class IncidenceGQ:
    n_points: int
    lines: tuple[tuple[int, ...], ...]
    s: int
    t: int
    name: str = ""
    coords: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False, compare=False)
    q: int | None = field(default=None, compare=False)

    @property
    def order(self) -> tuple[int, int]:
        return self.s, self.t

    @property
    def n_lines(self) -> int:
        return len(self.lines)

    @cached_property
    def line_sets(self) -> tuple[int, ...]:
        return tuple(to_bitset(l) for l in self.lines)

    @cached_property
    def point_lines(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.n_points)]
        for i, l in enumerate(self.lines):
            for p in l:
                out[p].append(i)
        return tuple(tuple(x) for x in out)

    @cached_property
    def collinearity(self) -> tuple[int, ...]:
        """Bitset of points collinear with P, P itself excluded."""
        out = [0] * self.n_points
        for ls in self.line_sets:
            for p in bits(ls):
                out[p] |= ls
        return tuple(c & ~(1 << p) for p, c in enumerate(out))

    def collinear(self, a: int, b: int) -> bool:
        return bool(self.collinearity[a] >> b & 1)

    def line_through(self, a: int, b: int) -> int | None:
        common = set(self.point_lines[a]) & set(self.point_lines[b])
        return min(common) if common else None

    @cached_property
    def flags(self) -> tuple[Flag, ...]:
        return tuple(Flag(p, l) for p in range(self.n_points) for l in self.point_lines[p])

    @cached_property
    def flag_index(self) -> dict:
        return {f: i for i, f in enumerate(self.flags)}

    def counts_ok(self) -> bool:
        s, t = self.s, self.t
        return (
            self.n_points == (s + 1) * (s * t + 1)
            and self.n_lines == (t + 1) * (s * t + 1)
            and len(self.flags) == (s + 1) * (t + 1) * (s * t + 1)
        )

    def to_text(self) -> str:
        out = ["# %s order (%d,%d)" % (self.name or "gq", self.s, self.t)]
        out.append("gq %d %d" % (self.n_points, self.n_lines))
        out.extend(" ".join(map(str, l)) for l in self.lines)
        return "\n".join(out) + "\n"


def gq_verify(n_points: int, lines, *, require_thick: bool = True, name: str = "",
              coords=None, q: int | None = None) -> IncidenceGQ:
    """Check the GQ axioms and certify the order (s,t).

    Raises NotGQ naming the first violated axiom.  Lines are normalized to
    sorted tuples; their order is kept.
    """
    if n_points <= 0 or not lines:
        raise NotGQ("empty incidence structure")
    norm = []
    for i, l in enumerate(lines):
        pts = tuple(sorted(l))
        if len(set(pts)) != len(pts):
            raise NotGQ("line repeats a point", i)
        if pts[0] < 0 or pts[-1] >= n_points:
            raise NotGQ("point index out of range", i)
        if len(pts) < 2:
            raise NotGQ("line with fewer than two points", i)
        norm.append(pts)
    sizes = {len(l) for l in norm}
    if len(sizes) != 1:
        i = next(i for i, l in enumerate(norm) if len(l) != len(norm[0]))
        raise NotGQ("lines of different sizes", (0, i))
    s = sizes.pop() - 1
    degree = [0] * n_points
    for l in norm:
        for p in l:
            degree[p] += 1
    if len(set(degree)) != 1:
        p = next(p for p in range(n_points) if degree[p] != degree[0])
        raise NotGQ("points on different numbers of lines", (0, p))
    t = degree[0] - 1
    if t < 0:
        raise NotGQ("point on no line", 0)

    sets = [to_bitset(l) for l in norm]
    for i, j in itertools.combinations(range(len(sets)), 2):
        if (sets[i] & sets[j]).bit_count() > 1:
            raise NotGQ("two points on two common lines", (i, j))

    gq = IncidenceGQ(n_points, tuple(norm), s, t, name=name, coords=coords, q=q)
    coll = gq.collinearity
    for p in range(n_points):
        for i, ls in enumerate(sets):
            if ls >> p & 1:
                continue
            if (coll[p] & ls).bit_count() != 1:
                raise NotGQ("GQ axiom fails: non-incident pair sees %d points"
                            % (coll[p] & ls).bit_count(), (p, i))
    if require_thick and (s < 2 or t < 2):
        raise NotGQ("not thick: order (%d,%d)" % (s, t))
    return gq


def parse_gq(text: str, name: str = "", require_thick: bool = True) -> IncidenceGQ:
    header = None
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "gq":
                raise NotGQ("bad header %r, expected 'gq <n_points> <n_lines>'" % raw)
            header = int(parts[1]), int(parts[2])
            continue
        lines.append([int(x) for x in line.split()])
    if header is None:
        raise NotGQ("missing header")
    if len(lines) != header[1]:
        raise NotGQ("header declares %d lines, found %d" % (header[1], len(lines)))
    return gq_verify(header[0], lines, name=name, require_thick=require_thick)


def read_gq(path, require_thick: bool = True) -> IncidenceGQ:
    p = Path(path)
    return parse_gq(p.read_text(encoding="utf-8"), name=p.stem, require_thick=require_thick)


# -- classical models -------------------------------------------------------

def _check_q(q: int) -> None:
    if q not in (2, 3, 4):
        raise Unsupported("classical GQ models are built for q in {2,3,4}, got %r" % q)


def _sub_incidence(g, point_ok, line_ok):
    """Restrict PG(n,q) to the accepted points and the accepted lines."""
    keep = [p.id for p in g.points if point_ok(p.basis[0])]
    renum = {old: new for new, old in enumerate(keep)}
    lines = []
    for l in g.lines:
        if line_ok(l.basis):
            lines.append(sorted(renum[p] for p in bits(g.line_points[l.id])))
    coords = tuple(g.points[i].basis[0] for i in keep)
    return len(keep), lines, coords


@lru_cache(maxsize=None)
def w_symplectic(q: int) -> IncidenceGQ:
    """W(q): all points of PG(3,q), lines totally isotropic for
    x0*y1 - x1*y0 + x2*y3 - x3*y2."""
    _check_q(q)
    g = enumerate_geometry(3, q)
    F = g.F

    def form(u, v):
        a = F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0]))
        b = F.sub(F.mul(u[2], v[3]), F.mul(u[3], v[2]))
        return F.add(a, b)

    n, lines, coords = _sub_incidence(g, lambda v: True, lambda b: form(b[0], b[1]) == 0)
    return gq_verify(n, lines, name="W(%d)" % q, coords=coords, q=q)


def quadric_form(F):
    def Q(x):
        return F.add(F.add(F.mul(x[0], x[0]), F.mul(x[1], x[2])), F.mul(x[3], x[4]))

    def B(x, y):
        # polar form Q(x+y) - Q(x) - Q(y)
        s = [F.add(a, b) for a, b in zip(x, y)]
        return F.sub(F.sub(Q(s), Q(x)), Q(y))

    return Q, B


@lru_cache(maxsize=None)
def q4_quadric(q: int) -> IncidenceGQ:
    """Q(4,q): points of PG(4,q) on x0^2 + x1*x2 + x3*x4 = 0 and the lines on it."""
    _check_q(q)
    g = enumerate_geometry(4, q)
    Q, B = quadric_form(g.F)

    def line_ok(b):
        return Q(b[0]) == 0 and Q(b[1]) == 0 and B(b[0], b[1]) == 0

    n, lines, coords = _sub_incidence(g, lambda v: Q(v) == 0, line_ok)
    return gq_verify(n, lines, name="Q(4,%d)" % q, coords=coords, q=q)


@lru_cache(maxsize=None)
def h4_hermitian() -> IncidenceGQ:
    """H(4,4): points of PG(4,4) with sum x_i^3 = 0, i.e. sum x_i * conj(x_i)."""
    g = enumerate_geometry(4, 4)
    F = g.F

    def h(u, v):
        acc = 0
        for a, b in zip(u, v):
            acc = F.add(acc, F.mul(a, F.conj(b)))
        return acc

    def line_ok(b):
        return h(b[0], b[0]) == 0 and h(b[1], b[1]) == 0 and h(b[0], b[1]) == 0

    n, lines, coords = _sub_incidence(g, lambda v: h(v, v) == 0, line_ok)
    return gq_verify(n, lines, name="H(4,4)", coords=coords, q=4)


def dual_gq(gq: IncidenceGQ) -> IncidenceGQ:
    """Swap points and lines; new point i is old line i."""
    lines = [list(ls) for ls in gq.point_lines]
    name = gq.name[5:-1] if gq.name.startswith("dual(") else "dual(%s)" % gq.name
    return gq_verify(gq.n_lines, lines, name=name, require_thick=gq.s >= 2 and gq.t >= 2)


# -- flags and the flag graph ------------------------------------------------

def flag_opposite(f1: Flag, f2: Flag, gq: IncidenceGQ) -> bool:
    if gq.line_sets[f1.line_id] & gq.line_sets[f2.line_id]:
        return False
    # disjoint lines force distinct points
    return not gq.collinear(f1.point_id, f2.point_id)


def flag_graph(gq: IncidenceGQ, threads: int = 1) -> OppositionGraph:
    """Opposition graph on all flags, flags ordered by (point_id, line_id)."""
    flags = gq.flags
    if len(flags) > FLAG_GRAPH_MAX:
        raise Unsupported("%d flags exceed the %d-flag guard" % (len(flags), FLAG_GRAPH_MAX))
    if gq.s < 2 or gq.t < 2:
        raise Unsupported("flag graph needs a thick GQ")
    P = np.array([f.point_id for f in flags])
    L = np.array([f.line_id for f in flags])
    coll = np.zeros((gq.n_points, gq.n_points), dtype=bool)
    for p, c in enumerate(gq.collinearity):
        coll[p, list(bits(c))] = True
        coll[p, p] = True
    inc = np.zeros((gq.n_lines, gq.n_points), dtype=np.int32)
    for i, l in enumerate(gq.lines):
        inc[i, list(l)] = 1
    meet = (inc @ inc.T) > 0
    adj = ~coll[P][:, P] & ~meet[L][:, L]
    # row conversion is cheap at <= 2000 flags; threads kept for interface parity
    del threads
    return OppositionGraph(tuple(rows_from_bool(adj)), labels=flags, name=gq.name)


def flag_dual_map(gq: IncidenceGQ, dual: IncidenceGQ) -> list[int]:
    """Vertex i of flag_graph(gq) -> vertex of flag_graph(dual) with roles swapped."""
    return [dual.flag_index[Flag(f.line_id, f.point_id)] for f in gq.flags]


# -- grids (subquadrangles of order (q,1)) ----------------------------------

@dataclass(frozen=True)
class Grid:
    points: tuple[int, ...]
    lines: tuple[int, ...]
    hyperplane: tuple[int, ...] | None = None

    def lines_on(self, gq: IncidenceGQ, p: int) -> list[int]:
        return [l for l in self.lines if gq.line_sets[l] >> p & 1]


def _is_grid(gq: IncidenceGQ, pts: int, lines) -> bool:
    k = gq.s + 1
    if pts.bit_count() != k * k or len(lines) != 2 * k:
        return False
    return all(sum(1 for l in lines if gq.line_sets[l] >> p & 1) == 2 for p in bits(pts))


def hyperbolic_sections(gq: IncidenceGQ) -> list[Grid]:
    """Grids cut out of a Q(4,q) model by hyperplanes of PG(4,q)."""
    if gq.coords is None or len(gq.coords[0]) != 5:
        raise InvalidGrid("hyperplane sections need PG(4,q) coordinates")
    F = field_create(gq.q)
    out = []
    for h in enumerate_geometry(4, gq.q).points:
        a = h.basis[0]
        pts = to_bitset(i for i, x in enumerate(gq.coords) if F.dot(a, x) == 0)
        inside = tuple(i for i, ls in enumerate(gq.line_sets) if ls & ~pts == 0)
        if _is_grid(gq, pts, inside):
            out.append(Grid(tuple(bits(pts)), inside, a))
    return out


def grids_in_q42(gq: IncidenceGQ) -> list[Grid]:
    if gq.order != (2, 2):
        raise InvalidGrid("grids_in_q42 needs the order (2,2) quadric model")
    return hyperbolic_sections(gq)


def grids_exhaustive(gq: IncidenceGQ) -> list[Grid]:
    """Every 9-point set of a GQ(2,2) that carries a 3x3 grid, by brute force."""
    if gq.order != (2, 2):
        raise InvalidGrid("exhaustive grid search is only for order (2,2)")
    out = []
    for pts in itertools.combinations(range(gq.n_points), 9):
        b = to_bitset(pts)
        inside = tuple(i for i, ls in enumerate(gq.line_sets) if ls & ~b == 0)
        if _is_grid(gq, b, inside):
            out.append(Grid(pts, inside))
    return out


def check_grid(gq: IncidenceGQ, grid: Grid) -> None:
    b = to_bitset(grid.points)
    if any(gq.line_sets[l] & ~b for l in grid.lines) or not _is_grid(gq, b, grid.lines):
        raise InvalidGrid("not a (s,1) subquadrangle: %r" % (grid,))


# -- isomorphisms ------------------------------------------------------------

def find_isomorphism(a: IncidenceGQ, b: IncidenceGQ) -> tuple[list[int], list[int]] | None:
    """Point and line bijections a -> b preserving incidence, or None.

    Backtracking on the collinearity graphs; in a GQ the lines are exactly
    the maximal cliques of collinearity, so a collinearity isomorphism
    induces the line map, which is then checked explicitly.
    """
    if (a.n_points, a.n_lines, a.order) != (b.n_points, b.n_lines, b.order):
        return None
    n = a.n_points
    ca, cb = a.collinearity, b.collinearity
    # visit a's points so that each new one is collinear with an earlier one
    order, seen = [], 0
    for start in range(n):
        if seen >> start & 1:
            continue
        queue = [start]
        seen |= 1 << start
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in bits(ca[v] & ~seen):
                seen |= 1 << w
                queue.append(w)
    image = [-1] * n

    def extend(k: int, used: int) -> bool:
        if k == n:
            return True
        v = order[k]
        cand = ((1 << n) - 1) & ~used
        for u in order[:k]:
            if ca[v] >> u & 1:
                cand &= cb[image[u]]
            else:
                cand &= ~cb[image[u]]
        for w in bits(cand):
            image[v] = w
            if extend(k + 1, used | (1 << w)):
                return True
        image[v] = -1
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, n + 100))
    try:
        if not extend(0, 0):
            return None
    finally:
        sys.setrecursionlimit(limit)
    target = {ls: i for i, ls in enumerate(b.line_sets)}
    line_map = []
    for ls in a.line_sets:
        img = to_bitset(image[p] for p in bits(ls))
        if img not in target:
            return None
        line_map.append(target[img])
    return image, line_map
