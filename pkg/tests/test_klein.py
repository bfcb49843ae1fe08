import itertools

import pytest

from flagkneser.galois import Unsupported
from flagkneser.graph import bits
from flagkneser.klein import (
    klein_chamber_count,
    klein_form,
    klein_polar,
    klein_quadric,
    opposition_transfer_check,
    pencil_transfer_check,
    pluecker,
    translate_chamber,
)
from flagkneser.projective import chambers_pg3, enumerate_geometry


@pytest.mark.parametrize("q", [2, 3])
def test_image_is_the_quadric(q):
    kq = klein_quadric(q)
    g = kq.g3
    assert len(set(kq.line_image)) == len(g.lines)
    assert kq.quadric_points.bit_count() == (q * q + 1) * (q * q + q + 1)
    assert set(kq.line_image) == set(bits(kq.quadric_points))
    for l in range(len(g.lines)):
        assert klein_form(pluecker(l, g), g.F) == 0


@pytest.mark.parametrize("q", [2, 3])
def test_plane_count(q):
    kq = klein_quadric(q)
    assert len(kq.plane_points) == 2 * (q + 1) * (q * q + 1)
    assert len(set(kq.latin_of_point)) == len(set(kq.greek_of_plane)) == q**3 + q * q + q + 1
    assert not set(kq.latin_of_point) & set(kq.greek_of_plane)


def test_meeting_lines_are_conjugate():
    g = enumerate_geometry(3, 2)
    for a, b in itertools.combinations(range(len(g.lines)), 2):
        conj = klein_polar(pluecker(a, g), pluecker(b, g), g.F) == 0
        assert conj == g.lines_meet(a, b)


@pytest.mark.parametrize("q", [2, 3])
def test_plane_intersections(q):
    kq = klein_quadric(q)
    pp = kq.plane_points
    latin, greek = sorted(set(kq.latin_of_point)), sorted(set(kq.greek_of_plane))
    for a, b in itertools.combinations(latin, 2):
        assert (pp[a] & pp[b]).bit_count() == 1
    for a in latin[:5]:
        for b in greek:
            assert (pp[a] & pp[b]).bit_count() in (0, q + 1)


def test_transfer_q2(pg2):
    g, G = pg2
    rep = opposition_transfer_check(g, G)
    assert rep.bijective and rep.agree and rep.counterexample is None
    assert rep.pairs_checked == 315 * 315
    assert klein_chamber_count(2) == 315


def test_translate_is_injective():
    g = enumerate_geometry(3, 2)
    images = [translate_chamber(c, g) for c in chambers_pg3(g)]
    assert len(set(images)) == len(images)


@pytest.mark.parametrize("q", [2, 3])
def test_pencils_map_to_planes(q):
    n, ok = pencil_transfer_check(enumerate_geometry(3, q))
    assert ok and n == 2 * (q**3 + q * q + q + 1)


def test_unsupported_q():
    with pytest.raises(Unsupported):
        klein_quadric(5)
