"""Explicit independent sets, colorings and covers, emitted as Certificates.

Pencils F(x) collect the chambers/flags whose line is incident with x (x a
point or plane of PG(3,q), or a point of a GQ), or, for a GQ line x, the
flags whose point lies on x.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from .certificates import Certificate, Verdict, is_maximal, verify_certificate
from .galois import Unsupported, field_create
from .graph import OppositionGraph, bits, to_bitset
from .projective import Geometry, chambers_pg3
from .quadrangle import (
    Grid,
    IncidenceGQ,
    InvalidGrid,
    check_grid,
    dual_gq,
    find_isomorphism,
    q4_quadric,
    w_symplectic,
)


class ConstructionFailed(RuntimeError):
    pass


class NotPartition(ValueError):
    pass


class NotLineIndependent(ValueError):
    def __init__(self, message: str, witness: tuple[int, int]):
        super().__init__("%s: lines %d and %d are skew" % (message, *witness))
        self.witness = witness


def _checked(graph: OppositionGraph, cert: Certificate) -> Certificate:
    v = verify_certificate(graph, cert)
    if not v:
        raise AssertionError("construction %r failed verification: %s" % (cert.provenance, v))
    return cert


# -- PG(3,q) ----------------------------------------------------------------

def pencil_pg_set(kind: str, x: int, g: Geometry) -> int:
    """Bitset of chamber indices in F(x), x a point or a plane."""
    out = 0
    for i, c in enumerate(_chambers(g)):
        if kind == "point":
            hit = g.point_in_line(x, c.line_id)
        elif kind == "plane":
            hit = g.line_in_plane(c.line_id, x)
        else:
            raise ValueError("pencil of a %r" % kind)
        if hit:
            out |= 1 << i
    return out


@lru_cache(maxsize=None)
def _chambers_cached(g: Geometry):
    return tuple(chambers_pg3(g))


def _chambers(g: Geometry):
    return _chambers_cached(g)


def pencil_pg(kind: str, x: int, g: Geometry, graph: OppositionGraph) -> Certificate:
    cert = Certificate.build("independent_set", [pencil_pg_set(kind, x, g)],
                             "pencil F(%s %d) in PG(3,%d)" % (kind, x, g.q), graph)
    return _checked(graph, cert)


def all_pencils_pg(g: Geometry) -> list[tuple[str, int, int]]:
    """(kind, id, bitset) for every point and every plane, points first."""
    return [("point", p, pencil_pg_set("point", p, g)) for p in range(len(g.points))] + [
        ("plane", j, pencil_pg_set("plane", j, g)) for j in range(len(g.planes))
    ]


def coloring_family(line: int, plane: int, g: Geometry) -> list[tuple[str, int]]:
    """The q^2 points of plane off line, then the q planes on line other than plane."""
    if not g.line_in_plane(line, plane):
        raise ValueError("line %d is not in plane %d" % (line, plane))
    pts = [("point", p) for p in bits(g.plane_points[plane] & ~g.line_points[line])]
    pls = [("plane", j) for j in g.planes_on_line[line] if j != plane]
    return pts + pls


def pg_covering(line: int, plane: int, g: Geometry, graph: OppositionGraph) -> Certificate:
    family = coloring_family(line, plane, g)
    sets = [pencil_pg_set(k, x, g) for k, x in family]
    cert = Certificate.build("covering_family", sets,
                             "pencil cover from line %d in plane %d, PG(3,%d)" % (line, plane, g.q),
                             graph)
    return _checked(graph, cert)


def pg_coloring(line: int, plane: int, g: Geometry, graph: OppositionGraph) -> Certificate:
    """q^2+q coloring: each chamber takes the first family member on its line."""
    family = coloring_family(line, plane, g)
    sets = [0] * len(family)
    for i, c in enumerate(_chambers(g)):
        for k, (kind, x) in enumerate(family):
            if (g.point_in_line(x, c.line_id) if kind == "point"
                    else g.line_in_plane(c.line_id, x)):
                sets[k] |= 1 << i
                break
        else:
            raise ConstructionFailed("chamber %d meets no member of the family" % i)
    cert = Certificate.build("proper_coloring", sets,
                             "first-hit coloring from line %d in plane %d, PG(3,%d)"
                             % (line, plane, g.q), graph)
    return _checked(graph, cert)


def line_classes_from_family(line: int, plane: int, g: Geometry) -> list[list[int]]:
    """Partition of all lines by first incident member of the coloring family."""
    family = coloring_family(line, plane, g)
    classes: list[list[int]] = [[] for _ in family]
    for l in range(len(g.lines)):
        for k, (kind, x) in enumerate(family):
            if g.point_in_line(x, l) if kind == "point" else g.line_in_plane(l, x):
                classes[k].append(l)
                break
    return classes


def lift_line_coloring(line_classes, g: Geometry, graph: OppositionGraph) -> Certificate:
    """Color each chamber by the class of its line.

    Every class must consist of pairwise meeting lines.
    """
    owner = {}
    for k, cls in enumerate(line_classes):
        for a, b in itertools.combinations(cls, 2):
            if not g.lines_meet(a, b):
                raise NotLineIndependent("class %d is not line-independent" % k, (a, b))
        for l in cls:
            if l in owner:
                raise NotPartition("line %d in classes %d and %d" % (l, owner[l], k))
            owner[l] = k
    if len(owner) != len(g.lines):
        raise NotPartition("line classes miss %d lines" % (len(g.lines) - len(owner)))
    sets = [0] * len(line_classes)
    for i, c in enumerate(_chambers(g)):
        sets[owner[c.line_id]] |= 1 << i
    cert = Certificate.build("proper_coloring", sets,
                             "lifted line coloring, %d classes, PG(3,%d)" % (len(sets), g.q),
                             graph)
    return _checked(graph, cert)


# -- generalized quadrangles ------------------------------------------------

def pencil_gq_set(kind: str, x: int, gq: IncidenceGQ) -> int:
    out = 0
    for i, f in enumerate(gq.flags):
        if kind == "point":
            hit = gq.line_sets[f.line_id] >> x & 1
        elif kind == "line":
            hit = gq.line_sets[x] >> f.point_id & 1
        else:
            raise ValueError("pencil of a %r" % kind)
        if hit:
            out |= 1 << i
    return out


def all_pencils_gq(gq: IncidenceGQ) -> list[tuple[str, int, int]]:
    return [("point", p, pencil_gq_set("point", p, gq)) for p in range(gq.n_points)] + [
        ("line", l, pencil_gq_set("line", l, gq)) for l in range(gq.n_lines)
    ]


def pencil_gq(kind: str, x: int, gq: IncidenceGQ, graph: OppositionGraph) -> Certificate:
    cert = Certificate.build("independent_set", [pencil_gq_set(kind, x, gq)],
                             "pencil F(%s %d) in %s" % (kind, x, gq.name), graph)
    return _checked(graph, cert)


def exceptional_gq22(grid: Grid, gq: IncidenceGQ, graph: OppositionGraph) -> Certificate:
    """Nine flags (P, l): P on the grid, l the GQ line on P outside the grid."""
    if gq.order != (2, 2):
        raise InvalidGrid("the exceptional set lives in the order (2,2) quadrangle")
    check_grid(gq, grid)
    gl = set(grid.lines)
    sets = 0
    for p in grid.points:
        outside = [l for l in gq.point_lines[p] if l not in gl]
        if len(outside) != 1:
            raise InvalidGrid("grid point %d lies on %d non-grid lines" % (p, len(outside)))
        sets |= 1 << gq.flag_index[(p, outside[0])]
    cert = Certificate.build("independent_set", [sets],
                             "grid set on points %s in %s" % (list(grid.points), gq.name), graph)
    return _checked(graph, cert)


def sharpness_set(gq: IncidenceGQ, grid: Grid, Q: int, graph: OppositionGraph) -> Certificate:
    """All flags on Q, plus (P, m) for P != Q on the two grid lines h, h' at Q,
    m the other grid line on P.  Size t+1+2s."""
    check_grid(gq, grid)
    if Q not in grid.points:
        raise InvalidGrid("point %d is not on the grid" % Q)
    h, h2 = grid.lines_on(gq, Q)
    chosen = [gq.flag_index[(Q, l)] for l in gq.point_lines[Q]]
    for base in (h, h2):
        for P in gq.lines[base]:
            if P == Q:
                continue
            (m,) = [l for l in grid.lines_on(gq, P) if l not in (h, h2)]
            chosen.append(gq.flag_index[(P, m)])
    cert = Certificate.build("independent_set", [to_bitset(chosen)],
                             "sharpness set at grid point %d in %s" % (Q, gq.name), graph)
    return _checked(graph, cert)


@lru_cache(maxsize=None)
def ovoid_q4(q: int) -> tuple[int, ...]:
    """Ovoid of Q(4,q) cut out by the first hyperplane a*x0 - x3 + b*x4 = 0
    (over (a, b) in lexicographic order) whose section is elliptic."""
    gq = q4_quadric(q)
    F = gq_field(gq)
    for a, b in itertools.product(range(q), repeat=2):
        # x3 = a*x0 + b*x4
        pts = tuple(i for i, x in enumerate(gq.coords)
                    if x[3] == F.add(F.mul(a, x[0]), F.mul(b, x[4])))
        if len(pts) == q * q + 1 and is_ovoid(gq, pts):
            return pts
    raise ConstructionFailed("no elliptic section x3 = a*x0 + b*x4 of Q(4,%d)" % q)


def gq_field(gq: IncidenceGQ):
    return field_create(gq.q)


def is_ovoid(gq: IncidenceGQ, pts) -> bool:
    b = to_bitset(pts)
    return all((ls & b).bit_count() == 1 for ls in gq.line_sets)


def is_spread(gq: IncidenceGQ, lines) -> bool:
    cover = 0
    for l in lines:
        if cover & gq.line_sets[l]:
            return False
        cover |= gq.line_sets[l]
    return cover == (1 << gq.n_points) - 1


@lru_cache(maxsize=None)
def w_q4_duality(q: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Isomorphism dual(W(q)) -> Q(4,q): (W-line -> Q-point, W-point -> Q-line)."""
    found = find_isomorphism(dual_gq(w_symplectic(q)), q4_quadric(q))
    if found is None:
        raise ConstructionFailed("no duality W(%d) -> Q(4,%d) found" % (q, q))
    return tuple(found[0]), tuple(found[1])


@lru_cache(maxsize=None)
def spread_w(q: int) -> tuple[int, ...]:
    """Spread of W(q): the ovoid of Q(4,q) pulled back through the duality."""
    line_to_point, _ = w_q4_duality(q)
    back = {pt: l for l, pt in enumerate(line_to_point)}
    spread = tuple(sorted(back[p] for p in ovoid_q4(q)))
    if not is_spread(w_symplectic(q), spread):
        raise ConstructionFailed("pulled-back ovoid is not a spread of W(%d)" % q)
    return spread


def coloring_from_ovoid_or_spread(gq: IncidenceGQ, graph: OppositionGraph, kind: str,
                                  members) -> Certificate:
    """st+1 classes F(x), x over an ovoid (kind 'point') or spread (kind 'line')."""
    sets = [pencil_gq_set(kind, x, gq) for x in members]
    seen = 0
    for x, s in zip(members, sets):
        if seen & s:
            raise NotPartition("pencil of %s %d overlaps earlier classes" % (kind, x))
        seen |= s
    if seen != graph.all_vertices:
        raise NotPartition("classes miss %d flags" % (graph.all_vertices & ~seen).bit_count())
    label = "ovoid" if kind == "point" else "spread"
    cert = Certificate.build("proper_coloring", sets,
                             "%s coloring of %s by %s" % (label, gq.name, list(members)), graph)
    return _checked(graph, cert)


def h44_cover(p: int, gq: IncidenceGQ, graph: OppositionGraph) -> Certificate:
    """Pencils F(x) of the points x != p collinear with p."""
    xs = list(bits(gq.collinearity[p]))
    sets = [pencil_gq_set("point", x, gq) for x in xs]
    cert = Certificate.build("covering_family", sets,
                             "collinear-point cover at point %d of %s" % (p, gq.name), graph)
    return _checked(graph, cert)


def coloring_from_cover(cover: Certificate, graph: OppositionGraph) -> Certificate:
    """Give each vertex the first cover member containing it; empty classes drop out."""
    if cover.kind != "covering_family":
        raise ValueError("expected a covering_family certificate, got %r" % cover.kind)
    left = graph.all_vertices
    sets = []
    for s in cover.bitsets():
        part = s & left
        if part:
            sets.append(part)
            left &= ~part
    if left:
        raise NotPartition("cover misses %d vertices" % left.bit_count())
    cert = Certificate.build("proper_coloring", sets,
                             "first-hit coloring from: " + cover.provenance, graph)
    return _checked(graph, cert)


def pencil_kind(members: int, pencils) -> tuple[str, int] | None:
    """(kind, id) of the pencil equal to the given bitset, if any."""
    for kind, x, s in pencils:
        if s == members:
            return kind, x
    return None


def check_maximal(graph: OppositionGraph, cert: Certificate) -> Verdict:
    return is_maximal(graph, cert)


__all__ = [
    "ConstructionFailed", "NotPartition", "NotLineIndependent", "InvalidGrid", "Unsupported",
    "pencil_pg", "pencil_pg_set", "all_pencils_pg", "pg_covering", "pg_coloring",
    "coloring_family", "line_classes_from_family", "lift_line_coloring",
    "pencil_gq", "pencil_gq_set", "all_pencils_gq", "exceptional_gq22", "sharpness_set",
    "ovoid_q4", "spread_w", "w_q4_duality", "is_ovoid", "is_spread",
    "coloring_from_ovoid_or_spread", "h44_cover", "coloring_from_cover", "pencil_kind", "check_maximal",
]
