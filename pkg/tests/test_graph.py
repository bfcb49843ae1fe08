import pytest

from flagkneser.graph import DimacsError, OppositionGraph, parse_dimacs, read_dimacs, to_bitset


def test_dimacs_round_trip(pg2, tmp_path):
    _, G = pg2
    text = G.to_dimacs("chamber graph\nq=2")
    assert text.startswith("c chamber graph\nc q=2\np edge 315 10080\n")
    back = parse_dimacs(text)
    assert back.rows == G.rows and back.fingerprint == G.fingerprint
    G.write_dimacs(tmp_path / "g.dimacs")
    assert read_dimacs(tmp_path / "g.dimacs").rows == G.rows


@pytest.mark.parametrize("text,msg", [
    ("e 1 2\n", "before problem"),
    ("p edge 3 1\ne 1 4\n", "bad edge"),
    ("p edge 3 1\ne 2 2\n", "bad edge"),
    ("p edge 3 2\ne 1 2\n", "declares"),
    ("p edge 3\n", "problem line"),
    ("x 1 2\n", "unknown"),
    ("c only comments\n", "missing"),
])
def test_dimacs_errors(text, msg):
    with pytest.raises(DimacsError, match=msg):
        parse_dimacs(text)


def test_duplicate_edges_counted_once():
    G = parse_dimacs("p edge 3 1\ne 1 2\ne 2 1\n")
    assert G.edge_count() == 1


def test_fingerprint_sensitive():
    a = OppositionGraph((0b10, 0b01, 0))
    b = OppositionGraph((0b100, 0, 0b001))
    assert a.fingerprint != b.fingerprint
    assert a.fingerprint == OppositionGraph((0b10, 0b01, 0), name="other").fingerprint


def test_basic_predicates():
    G = OppositionGraph((0b110, 0b101, 0b011, 0))
    assert G.is_clique(0b111) and not G.is_clique(0b1011)
    assert G.is_independent(0b1001)
    assert G.is_maximal_independent(0b1001) and not G.is_maximal_independent(0b1000)
    assert G.check_symmetric()
    assert not OppositionGraph((0b10, 0)).check_symmetric()
    assert list(G.edges()) == [(0, 1), (0, 2), (1, 2)]
    assert to_bitset([0, 3]) == 0b1001
