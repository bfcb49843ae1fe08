"""Chromatic bracket for the flag graph of H(4,4), plus an optional attempt at
an exact independence number.

    python scripts/h44_bracket.py --alpha-budget 600
"""
import argparse
import math

from flagkneser.constructions import coloring_from_cover, h44_cover
from flagkneser.quadrangle import flag_graph, h4_hermitian
from flagkneser.solvers import greedy_clique_cover, max_independent_set

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--alpha-budget", type=float, default=0.0,
                help="seconds for branch and bound on alpha (0 skips it)")
args = ap.parse_args()

gq = h4_hermitian()
G = flag_graph(gq)
s, t = gq.order
print("order (%d,%d): %d points, %d lines, %d flags" % (s, t, gq.n_points, gq.n_lines, G.n))
cover = h44_cover(0, gq, G)
col = coloring_from_cover(cover, G)
print("pencil cover: %d members, first-hit coloring uses %d classes" % (cover.size, col.size))
e0 = (s + 1) * (t + 1)
print("fractional lower bound n/alpha = %d/%d = %d" % (G.n, e0, math.ceil(G.n / e0)))
print("greedy clique cover bounds alpha by %d" % greedy_clique_cover(G).size)
print("cited lower bound 34 (no spread, no ovoid) is not recomputed here")
if args.alpha_budget > 0:
    r = max_independent_set(G, hint_lower=e0, timeout_s=args.alpha_budget)
    print("alpha search: optimal=%s lower=%s upper=%s nodes=%d"
          % (r.optimal, r.lower, r.upper, r.nodes))
