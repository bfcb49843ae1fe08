import pytest

from flagkneser.certificates import is_maximal, verify_certificate
from flagkneser.constructions import (
    NotLineIndependent,
    NotPartition,
    all_pencils_gq,
    all_pencils_pg,
    coloring_family,
    coloring_from_cover,
    coloring_from_ovoid_or_spread,
    exceptional_gq22,
    h44_cover,
    is_ovoid,
    is_spread,
    line_classes_from_family,
    lift_line_coloring,
    ovoid_q4,
    pencil_gq,
    pencil_kind,
    pencil_pg,
    pg_coloring,
    pg_covering,
    sharpness_set,
    spread_w,
)
from flagkneser.graph import bits
from flagkneser.quadrangle import (
    InvalidGrid,
    grids_exhaustive,
    grids_in_q42,
    hyperbolic_sections,
    q4_quadric,
    w_symplectic,
)
from flagkneser.solvers import enumerate_maximal_is


def test_pg2_pencils(pg2):
    g, G = pg2
    pencils = all_pencils_pg(g)
    assert len(pencils) == 30
    for kind, x, s in pencils:
        assert s.bit_count() == 63
        assert is_maximal(G, pencil_pg(kind, x, g, G))


def test_pg3_pencil_size(pg3):
    g, G = pg3
    assert {s.bit_count() for _, _, s in all_pencils_pg(g)} == {208}


def test_point_pencil_meets_plane_pencil(pg2):
    g, _ = pg2
    pts = {x: s for k, x, s in all_pencils_pg(g) if k == "point"}
    pls = {x: s for k, x, s in all_pencils_pg(g) if k == "plane"}
    for x, s in pts.items():
        for j, t in pls.items():
            assert bool(s & t) == bool(g.plane_points[j] >> x & 1)


@pytest.mark.parametrize("fixture,q", [("pg2", 2), ("pg3", 3)])
def test_pg_coloring_and_cover(request, fixture, q):
    g, G = request.getfixturevalue(fixture)
    line = 5
    plane = g.planes_on_line[line][-1]
    fam = coloring_family(line, plane, g)
    assert len(fam) == q * q + q
    col = pg_coloring(line, plane, g, G)
    assert col.size == q * q + q and verify_certificate(G, col)
    assert verify_certificate(G, pg_covering(line, plane, g, G))


def test_family_needs_incidence(pg2):
    g, _ = pg2
    off = next(j for j in range(len(g.planes)) if not g.line_in_plane(0, j))
    with pytest.raises(ValueError):
        coloring_family(0, off, g)


def test_lift_line_coloring(pg2):
    g, G = pg2
    classes = line_classes_from_family(0, g.planes_on_line[0][0], g)
    cert = lift_line_coloring(classes, g, G)
    assert cert.size == 6 and verify_certificate(G, cert)


def test_lift_rejects_skew_class(pg2):
    g, G = pg2
    skew = next(b for b in range(1, len(g.lines)) if not g.lines_meet(0, b))
    rest = [l for l in range(len(g.lines)) if l not in (0, skew)]
    with pytest.raises(NotLineIndependent) as exc:
        lift_line_coloring([[0, skew], rest], g, G)
    assert exc.value.witness == (0, skew)


def test_lift_rejects_non_partition(pg2):
    g, G = pg2
    classes = line_classes_from_family(0, g.planes_on_line[0][0], g)
    with pytest.raises(NotPartition):
        lift_line_coloring(classes[:-1], g, G)
    with pytest.raises(NotPartition):
        lift_line_coloring(classes + [[classes[0][0]]], g, G)


@pytest.mark.parametrize("fixture", ["w2", "w3", "q43"])
def test_gq_pencils(request, fixture):
    gq, G = request.getfixturevalue(fixture)
    s, t = gq.order
    pencils = all_pencils_gq(gq)
    assert len(pencils) == gq.n_points + gq.n_lines
    for kind, x, b in pencils:
        assert b.bit_count() == (s + 1) * (t + 1)
    for kind, x, _ in pencils[:3] + pencils[-3:]:
        assert is_maximal(G, pencil_gq(kind, x, gq, G))


def test_point_and_line_pencils_always_meet(w3):
    gq, _ = w3
    pencils = all_pencils_gq(gq)
    pts = [b for k, _, b in pencils if k == "point"]
    lns = [b for k, _, b in pencils if k == "line"]
    assert all(p & l for p in pts for l in lns)


def test_exceptional_sets_are_the_non_pencils(q42):
    gq, G = q42
    grids = grids_in_q42(gq)
    exc = {exceptional_gq22(gr, gq, G).bitsets()[0] for gr in grids}
    assert len(exc) == 10
    pencils = {b for _, _, b in all_pencils_gq(gq)}
    nine = {c.bitsets()[0] for c in enumerate_maximal_is(G, 9)}
    assert nine - pencils == exc
    for b in exc:
        assert pencil_kind(b, all_pencils_gq(gq)) is None


def test_exceptional_in_w2(w2):
    gq, G = w2
    for gr in grids_exhaustive(gq):
        cert = exceptional_gq22(gr, gq, G)
        assert cert.size == 9 and is_maximal(G, cert)


def test_exceptional_needs_order_22(q43):
    gq, G = q43
    with pytest.raises(InvalidGrid):
        exceptional_gq22(hyperbolic_sections(gq)[0], gq, G)


@pytest.mark.parametrize("fixture,size", [("q42", 7), ("q43", 10)])
def test_sharpness(request, fixture, size):
    gq, G = request.getfixturevalue(fixture)
    for grid in hyperbolic_sections(gq)[:3]:
        for Q in grid.points[:3]:
            cert = sharpness_set(gq, grid, Q, G)
            assert cert.size == size
            assert is_maximal(G, cert)


def test_sharpness_point_off_grid(q42):
    gq, G = q42
    grid = grids_in_q42(gq)[0]
    off = next(p for p in range(gq.n_points) if p not in grid.points)
    with pytest.raises(InvalidGrid):
        sharpness_set(gq, grid, off, G)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_ovoid_and_spread(q):
    assert len(ovoid_q4(q)) == q * q + 1 and is_ovoid(q4_quadric(q), ovoid_q4(q))
    assert len(spread_w(q)) == q * q + 1 and is_spread(w_symplectic(q), spread_w(q))


@pytest.mark.parametrize("fixture,kind", [("w2", "line"), ("w3", "line"),
                                          ("q42", "point"), ("q43", "point")])
def test_partition_colorings(request, fixture, kind):
    gq, G = request.getfixturevalue(fixture)
    members = spread_w(gq.q) if kind == "line" else ovoid_q4(gq.q)
    cert = coloring_from_ovoid_or_spread(gq, G, kind, members)
    assert cert.kind == "proper_coloring" and cert.size == gq.s * gq.t + 1


def test_non_ovoid_rejected(q42):
    gq, G = q42
    with pytest.raises(NotPartition):
        coloring_from_ovoid_or_spread(gq, G, "point", [0, 1, 2, 3, 4])


def test_h44_cover(h44):
    gq, G = h44
    cover = h44_cover(7, gq, G)
    assert cover.kind == "covering_family" and cover.size == 36
    assert 7 not in [x for x in bits(gq.collinearity[7])]
    col = coloring_from_cover(cover, G)
    assert col.size <= 36 and verify_certificate(G, col)
