"""Klein correspondence: lines of PG(3,q) <-> points of Q+(5,q).

Plücker coordinates are ordered (p01, p02, p03, p12, p31, p23) with the
quadratic form p01*p23 + p02*p31 + p03*p12, which needs no factor 2 and so
works in every characteristic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import NamedTuple

import numpy as np

from .galois import FieldTable, Unsupported
from .graph import OppositionGraph, bits, to_bitset
from .linalg import normalize, rref_matrices, span_points
from .projective import Chamber, Geometry, chambers_pg3, enumerate_geometry

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (3, 1), (2, 3))


def pluecker_vector(u, v, F: FieldTable) -> tuple[int, ...]:
    """Normalized 2x2 minors of the rows u, v."""
    p = [F.sub(F.mul(u[i], v[j]), F.mul(u[j], v[i])) for i, j in PAIRS]
    return normalize(p, F)


def klein_form(x, F: FieldTable) -> int:
    return F.add(F.add(F.mul(x[0], x[5]), F.mul(x[1], x[4])), F.mul(x[2], x[3]))


def klein_polar(x, y, F: FieldTable) -> int:
    """Polar form of klein_form; zero iff the joining line lies on the quadric
    (for two quadric points)."""
    acc = 0
    for i, j in ((0, 5), (1, 4), (2, 3)):
        acc = F.add(acc, F.add(F.mul(x[i], y[j]), F.mul(x[j], y[i])))
    return acc


class KleinChamber(NamedTuple):
    point_id: int
    greek_plane_id: int
    latin_plane_id: int


@dataclass(frozen=True)
class KleinQuadric:
    """Q+(5,q) with its planes, and the images of PG(3,q) under Plücker."""

    q: int
    g3: Geometry = field(repr=False)
    g5: Geometry = field(repr=False)
    line_image: tuple[int, ...] = field(repr=False)      # PG(3) line -> PG(5) point
    plane_points: tuple[int, ...] = field(repr=False)    # quadric plane -> PG(5) point bitset
    latin_of_point: tuple[int, ...] = field(repr=False)  # PG(3) point -> quadric plane
    greek_of_plane: tuple[int, ...] = field(repr=False)  # PG(3) plane -> quadric plane

    @cached_property
    def quadric_points(self) -> int:
        F = self.g5.F
        return to_bitset(p.id for p in self.g5.points if klein_form(p.basis[0], F) == 0)

    def pluecker(self, line_id: int) -> tuple[int, ...]:
        return self.g5.point_vector(self.line_image[line_id])

    def translate(self, c: Chamber) -> KleinChamber:
        return KleinChamber(self.line_image[c.line_id], self.greek_of_plane[c.plane_id],
                            self.latin_of_point[c.point_id])

    def opposite(self, a: KleinChamber, b: KleinChamber) -> bool:
        F = self.g5.F
        pa, pb = self.g5.point_vector(a.point_id), self.g5.point_vector(b.point_id)
        if klein_polar(pa, pb, F) == 0:
            return False
        pp = self.plane_points
        return not (pp[a.greek_plane_id] & pp[b.latin_plane_id]) and not (
            pp[b.greek_plane_id] & pp[a.latin_plane_id])


def quadric_planes(g5: Geometry) -> list[tuple[tuple[int, ...], ...]]:
    """RREF bases of the planes of PG(5,q) lying on Q+(5,q)."""
    F = g5.F
    out = []
    for m in rref_matrices(3, 6, F):
        if all(klein_form(r, F) == 0 for r in m) and all(
                klein_polar(m[i], m[j], F) == 0 for i, j in ((0, 1), (0, 2), (1, 2))):
            out.append(m)
    return out


@lru_cache(maxsize=None)
def klein_quadric(q: int) -> KleinQuadric:
    if q not in (2, 3, 4):
        raise Unsupported("Klein correspondence built for q in {2,3,4}")
    g3 = enumerate_geometry(3, q)
    g5 = enumerate_geometry(5, q)
    F = g3.F
    image = tuple(g5.point_id(pluecker_vector(*l.basis, F)) for l in g3.lines)

    planes = quadric_planes(g5)
    plane_pts = tuple(to_bitset(g5.point_index[v] for v in span_points(b, F)) for b in planes)
    by_points = {pp: i for i, pp in enumerate(plane_pts)}

    def resolve(line_ids) -> int:
        pts = to_bitset(image[l] for l in line_ids)
        if pts not in by_points:
            raise AssertionError("image of a line pencil is not a quadric plane")
        return by_points[pts]

    latin = tuple(resolve(g3.lines_on_point[p]) for p in range(len(g3.points)))
    greek = tuple(resolve(l for l in range(len(g3.lines)) if g3.line_in_plane(l, j))
                  for j in range(len(g3.planes)))
    return KleinQuadric(q, g3, g5, image, plane_pts, latin, greek)


def pluecker(line_id: int, g: Geometry) -> tuple[int, ...]:
    """Plücker point of a PG(3,q) line, normalized."""
    return pluecker_vector(*g.lines[line_id].basis, g.F)


def translate_chamber(c: Chamber, g: Geometry) -> KleinChamber:
    return klein_quadric(g.q).translate(c)


@dataclass
class TransferReport:
    q: int
    pairs_checked: int
    agree: bool
    bijective: bool
    counterexample: tuple[int, int] | None = None


def klein_adjacency(kq: KleinQuadric, kchambers) -> np.ndarray:
    """Boolean opposition matrix computed purely on the quadric side."""
    F = kq.g5.F
    pts = sorted({k.point_id for k in kchambers})
    idx = {p: i for i, p in enumerate(pts)}
    vec = [kq.g5.point_vector(p) for p in pts]
    noncoll = np.array([[klein_polar(a, b, F) != 0 for b in vec] for a in vec], dtype=bool)
    npl = len(kq.plane_points)
    meet = np.array([[bool(kq.plane_points[i] & kq.plane_points[j]) for j in range(npl)]
                     for i in range(npl)], dtype=bool)
    P = np.array([idx[k.point_id] for k in kchambers])
    G = np.array([k.greek_plane_id for k in kchambers])
    L = np.array([k.latin_plane_id for k in kchambers])
    # greek_i meets latin_j, and greek_j meets latin_i (transposed)
    cross = meet[G][:, L]
    return noncoll[P][:, P] & ~cross & ~cross.T


def opposition_transfer_check(g: Geometry, graph: OppositionGraph) -> TransferReport:
    """Compare opposite_pg (graph adjacency) with the quadric-side condition
    on every ordered pair of chambers."""
    if g.q not in (2, 3):
        raise Unsupported("transfer check runs for q in {2,3}")
    kq = klein_quadric(g.q)
    chambers = chambers_pg3(g)
    kch = [kq.translate(c) for c in chambers]
    bijective = len(set(kch)) == len(kch) == klein_chamber_count(g.q)
    kadj = klein_adjacency(kq, kch)
    n = len(chambers)
    counter = None
    for i in range(n):
        row = graph.rows[i]
        mine = np.fromiter(((row >> j) & 1 for j in range(n)), dtype=bool, count=n)
        diff = np.nonzero(mine != kadj[i])[0]
        if diff.size:
            counter = (i, int(diff[0]))
            break
    return TransferReport(g.q, n * n, counter is None, bijective, counter)


def klein_chamber_count(q: int) -> int:
    """Klein chambers: incident (point, greek plane, latin plane) on Q+(5,q)."""
    kq = klein_quadric(q)
    pp = kq.plane_points
    greek = set(kq.greek_of_plane)
    latin = set(kq.latin_of_point)
    total = 0
    for p in bits(kq.quadric_points):
        bit = 1 << p
        total += sum(1 for a in greek if pp[a] & bit) * sum(1 for b in latin if pp[b] & bit)
    return total


def pencil_transfer_check(g: Geometry) -> tuple[int, bool]:
    """Check that F(x) is exactly the set of chambers whose Klein point lies
    in the plane of Q+(5,q) attached to x (Latin for points, Greek for planes).

    Returns (pencils checked, all equal).
    """
    kq = klein_quadric(g.q)
    chambers = chambers_pg3(g)
    kpts = [kq.line_image[c.line_id] for c in chambers]
    ok = True
    targets = [("point", x, kq.latin_of_point[x]) for x in range(len(g.points))] + [
        ("plane", x, kq.greek_of_plane[x]) for x in range(len(g.planes))]
    for kind, x, plane in targets:
        pts = kq.plane_points[plane]
        image = to_bitset(i for i, p in enumerate(kpts) if pts >> p & 1)
        if kind == "point":
            pencil = to_bitset(i for i, c in enumerate(chambers) if g.point_in_line(x, c.line_id))
        else:
            pencil = to_bitset(i for i, c in enumerate(chambers) if g.line_in_plane(c.line_id, x))
        ok &= image == pencil
    return len(targets), ok
