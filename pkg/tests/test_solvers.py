import itertools

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st
from oracles import graph_from_edges, graphs, naive_chromatic, naive_independent_sets, naive_maximal

from flagkneser.certificates import is_maximal, verify_certificate
from flagkneser.graph import OppositionGraph
from flagkneser.solvers import (
    Timeout,
    chromatic_number,
    enumerate_maximal_is,
    greedy_clique_cover,
    greedy_coloring,
    k_colorable,
    max_independent_set,
)


SETTINGS = settings(max_examples=120, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])


@SETTINGS
@given(graphs())
def test_mis_matches_oracle(G):
    r = max_independent_set(G, timeout_s=None)
    expected = max((s.bit_count() for s in naive_independent_sets(G)), default=0)
    assert r.optimal and r.value == expected
    if G.n:
        assert verify_certificate(G, r.witness)
        assert r.witness.size == expected


@SETTINGS
@given(graphs(), st.integers(1, 6))
def test_enumeration_matches_oracle(G, min_size):
    oracle = naive_maximal(G)
    got = [c.bitsets()[0] for c in enumerate_maximal_is(G, 1, timeout_s=None)]
    assert len(got) == len(set(got))
    if G.n:
        assert set(got) == oracle
    above = [c.bitsets()[0] for c in enumerate_maximal_is(G, min_size, timeout_s=None)]
    assert set(above) == {s for s in oracle if s.bit_count() >= min_size}


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(graphs(max_n=12), st.booleans())
def test_chromatic_matches_oracle(G, with_alpha):
    expected = naive_chromatic(G)
    alpha = None
    if with_alpha and G.n:
        alpha = max(s.bit_count() for s in naive_independent_sets(G))
    r = chromatic_number(G, alpha=alpha, timeout_s=None)
    assert r.optimal and r.value == expected
    if G.n:
        assert r.witness.kind == "proper_coloring" and verify_certificate(G, r.witness)
        assert r.witness.size == expected


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=12))
def test_greedy_coloring_proper(G):
    color = greedy_coloring(G)
    for u, v in G.edges():
        assert color[u] != color[v]


def complete(n):
    return graph_from_edges(n, itertools.combinations(range(n), 2))


def cycle(n):
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def test_edgeless():
    G = graph_from_edges(7, [])
    assert max_independent_set(G).value == 7
    assert greedy_clique_cover(G).size == 7
    assert [c.size for c in enumerate_maximal_is(G)] == [7]


def test_complete():
    G = complete(5)
    assert max_independent_set(G).value == 1
    assert greedy_clique_cover(G).size == 1
    assert sorted(c.vertex_sets[0] for c in enumerate_maximal_is(G)) == [(i,) for i in range(5)]
    assert k_colorable(G, 4).value == 0
    assert chromatic_number(G).value == 5


def test_odd_cycle():
    G = cycle(5)
    assert k_colorable(G, 2).value == 0
    r = k_colorable(G, 3)
    assert r.value == 1 and verify_certificate(G, r.witness)


def test_w2_colorability(w2):
    _, G = w2
    no = k_colorable(G, 4, alpha=9)
    assert no.value == 0 and "pigeonhole" in no.lower_reason
    yes = k_colorable(G, 5, alpha=9)
    assert yes.value == 1 and yes.witness.size == 5
    assert chromatic_number(G, alpha=9).value == 5


def test_w2_enumeration_sizes(w2):
    _, G = w2
    sizes = sorted({c.size for c in enumerate_maximal_is(G, 1)})
    assert sizes == [6, 7, 9]
    assert all(c.size == 9 for c in enumerate_maximal_is(G, 8))
    assert sum(1 for _ in enumerate_maximal_is(G, 9)) == 40


def test_pg2_alpha(pg2):
    _, G = pg2
    r = max_independent_set(G, timeout_s=None)
    assert r.optimal and r.value == 63
    assert is_maximal(G, r.witness)


def test_pg2_cover_bound(pg2):
    _, G = pg2
    cover = greedy_clique_cover(G)
    assert cover.kind == "clique_cover" and verify_certificate(G, cover)
    assert cover.size >= 63


def test_hint_lower(pg2):
    _, G = pg2
    assert max_independent_set(G, hint_lower=63, timeout_s=None).value == 63
    with pytest.raises(ValueError):
        max_independent_set(OppositionGraph((0b10, 0b01)), hint_lower=2)


def test_mis_timeout_returns_bounds(pg3):
    _, G = pg3
    r = max_independent_set(G, timeout_s=0.05)
    assert not r.optimal
    assert r.lower is not None and r.upper >= r.lower
    if r.witness is not None:
        assert verify_certificate(G, r.witness)


def test_enumeration_timeout(pg2):
    _, G = pg2
    with pytest.raises(Timeout):
        list(enumerate_maximal_is(G, 1, timeout_s=0.05))


def test_colorable_timeout(pg3):
    _, G = pg3
    with pytest.raises(Timeout):
        k_colorable(G, 10, timeout_s=0.05)


def test_chromatic_timeout_keeps_bracket(pg3):
    _, G = pg3
    r = chromatic_number(G, lb_hint=10, timeout_s=0.05)
    assert not r.optimal and r.lower == 10 and r.upper >= 12


def test_deterministic(w3):
    _, G = w3
    a = [c.to_json() for c in enumerate_maximal_is(G, 16)]
    b = [c.to_json() for c in enumerate_maximal_is(G, 16)]
    assert a == b
    assert max_independent_set(G).witness == max_independent_set(G).witness
