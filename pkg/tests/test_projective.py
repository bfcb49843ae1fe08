import itertools

import pytest

from flagkneser.galois import Unsupported, field_create
from flagkneser.linalg import rank
from flagkneser.projective import (
    Chamber,
    chamber_graph,
    chambers_pg3,
    dual_id,
    enumerate_geometry,
    gaussian_binomial,
    opposite_pg,
)


def brute_subspace_count(n_vec: int, k: int, q: int) -> int:
    """Count k-subspaces of GF(q)^n_vec by counting ordered bases via rank."""
    F = field_create(q)
    vecs = list(itertools.product(range(q), repeat=n_vec))
    bases = sum(1 for t in itertools.product(vecs, repeat=k) if rank(t, F) == k)
    gl = 1
    for i in range(k):
        gl *= q**k - q**i
    return bases // gl


@pytest.mark.parametrize("q,counts", [(2, (15, 35, 15)), (3, (40, 130, 40))])
def test_pg3_counts(q, counts):
    g = enumerate_geometry(3, q)
    assert (len(g.points), len(g.lines), len(g.planes)) == counts
    assert len(g.lines) == gaussian_binomial(4, 2, q)
    assert len(g.lines) == brute_subspace_count(4, 2, q)
    assert len(g.points) == brute_subspace_count(4, 1, q)


def test_pg4_points():
    assert len(enumerate_geometry(4, 2).points) == 31


def test_unsupported_dimension():
    with pytest.raises(Unsupported):
        enumerate_geometry(6, 2)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_line_and_plane_sizes(q):
    g = enumerate_geometry(3, q)
    assert {lp.bit_count() for lp in g.line_points} == {q + 1}
    assert {pp.bit_count() for pp in g.plane_points} == {q * q + q + 1}


def test_canonical_reenumeration():
    a = enumerate_geometry.__wrapped__(3, 3)
    b = enumerate_geometry.__wrapped__(3, 3)
    assert a.points == b.points and a.lines == b.lines and a.planes == b.planes
    assert a.line_points == b.line_points and a.plane_points == b.plane_points


@pytest.mark.parametrize("q", [2, 3])
def test_bases_are_rref(q):
    g = enumerate_geometry(3, q)
    for s in g.points + g.lines + g.planes:
        assert rank(s.basis, g.F) == s.dim + 1
        pivots = [next(i for i, x in enumerate(r) if x) for r in s.basis]
        assert pivots == sorted(pivots)
        for r, pc in zip(s.basis, pivots):
            assert r[pc] == 1
            assert all(other[pc] == 0 for other in s.basis if other is not r)


@pytest.mark.parametrize("q", [2, 3])
def test_duality_reverses_incidence(q):
    g = enumerate_geometry(3, q)
    pt2pl = [dual_id(g, 0, p) for p in range(len(g.points))]
    ln2ln = [dual_id(g, 1, l) for l in range(len(g.lines))]
    assert sorted(pt2pl) == list(range(len(g.planes)))
    assert sorted(ln2ln) == list(range(len(g.lines)))
    for l in range(len(g.lines)):
        for p in range(len(g.points)):
            assert g.point_in_line(p, l) == g.line_in_plane(ln2ln[l], pt2pl[p])


def test_opposition_preserved_by_duality(pg2):
    g, G = pg2
    ch = chambers_pg3(g)
    pl2pt = {dual_id(g, 0, p): p for p in range(len(g.points))}
    pt2pl = {v: k for k, v in pl2pt.items()}
    dual = [Chamber(pl2pt[c.plane_id], dual_id(g, 1, c.line_id), pt2pl[c.point_id]) for c in ch]
    for c1, c2 in itertools.product(range(len(ch)), repeat=2):
        assert opposite_pg(ch[c1], ch[c2], g) == opposite_pg(dual[c1], dual[c2], g)


@pytest.mark.parametrize("q,expected", [(2, 315), (3, 2080)])
def test_chamber_count(q, expected):
    g = enumerate_geometry(3, q)
    assert len(chambers_pg3(g)) == expected == (q * q + 1) * (q * q + q + 1) * (q + 1) ** 2


def test_chambers_sorted_and_incident():
    g = enumerate_geometry(3, 3)
    ch = chambers_pg3(g)
    assert ch == sorted(ch)
    for c in ch:
        assert g.point_in_line(c.point_id, c.line_id) and g.line_in_plane(c.line_id, c.plane_id)


@pytest.mark.parametrize("q", [2, 3])
def test_chambers_through_a_line(q):
    g = enumerate_geometry(3, q)
    ch = chambers_pg3(g)
    for l in range(len(g.lines)):
        n = sum(1 for c in ch if g.point_in_line(c.point_id, l) and g.line_in_plane(l, c.plane_id))
        assert n == (q + 1) ** 3


def test_opposite_basics(pg2):
    g, _ = pg2
    ch = chambers_pg3(g)
    c = ch[0]
    assert not opposite_pg(c, c, g)
    same_point = [d for d in ch if d.point_id == c.point_id]
    assert not any(opposite_pg(c, d, g) for d in same_point)


def test_brute_force_opposite_count(pg2):
    g, G = pg2
    ch = chambers_pg3(g)
    for i, c in enumerate(ch):
        row = [j for j, d in enumerate(ch) if opposite_pg(c, d, g)]
        assert len(row) == 64
        assert sum(1 << j for j in row) == G.rows[i]


def test_chamber_graph_q2(pg2):
    _, G = pg2
    assert G.n == 315
    assert G.edge_count() == 10080
    assert G.check_symmetric()
    assert sum(G.degree(v) for v in range(G.n)) % 2 == 0


def test_chamber_graph_q3(pg3):
    _, G = pg3
    assert G.n == 2080
    assert {G.degree(v) for v in range(G.n)} == {729}


def test_chamber_graph_guard():
    with pytest.raises(Unsupported):
        chamber_graph(enumerate_geometry(3, 5))


def test_thread_count_independent():
    g = enumerate_geometry(3, 3)
    assert chamber_graph(g, threads=1).rows == chamber_graph(g, threads=3).rows
