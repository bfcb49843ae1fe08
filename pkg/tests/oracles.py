"""Naive exponential oracles and random graphs shared by the solver tests."""
import itertools
import random

from hypothesis import strategies as st

from flagkneser.graph import OppositionGraph, bits


def graph_from_edges(n, edges):
    rows = [0] * n
    for u, v in edges:
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return OppositionGraph(tuple(rows))


@st.composite
def graphs(draw, max_n=20):
    n = draw(st.integers(0, max_n))
    p = draw(st.sampled_from([0.15, 0.3, 0.5, 0.7, 0.9]))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    return graph_from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def naive_independent_sets(G):
    """All independent sets by include/exclude recursion, no bounding."""
    out = []

    def rec(v, cur, banned):
        if v == G.n:
            out.append(cur)
            return
        rec(v + 1, cur, banned)
        if not banned >> v & 1:
            rec(v + 1, cur | 1 << v, banned | G.rows[v])

    rec(0, 0, 0)
    return out


def naive_maximal(G):
    full = G.all_vertices
    res = set()
    for s in naive_independent_sets(G):
        dom = s
        for v in bits(s):
            dom |= G.rows[v]
        if dom == full:
            res.add(s)
    return res


def naive_chromatic(G):
    """Subset DP over independent sets."""
    n = G.n
    if n == 0:
        return 0
    ind = [s for s in naive_independent_sets(G) if s]
    full = G.all_vertices
    best = {0: 0}
    for S in range(1, full + 1):
        low = S & -S
        best[S] = 1 + min(best[S & ~I] for I in ind if I & low and I & ~S == 0)
    return best[full]


def random_graph(rng, n, p):
    return graph_from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])
