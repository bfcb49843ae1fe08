"""Does the PG(3,2) chamber graph split into 63 cliques of size 5?

Such a partition would certify alpha <= 63 with no search.  The greedy cover
is printed first; an exact-cover search over 5-cliques then runs within the
given budget and reports found / impossible / undecided.

    python scripts/pg2_clique_cover.py --budget 120
"""
import argparse
import sys
import time

from flagkneser.graph import bits
from flagkneser.projective import chamber_graph, enumerate_geometry
from flagkneser.solvers import greedy_clique_cover

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--budget", type=float, default=60.0)
args = ap.parse_args()

G = chamber_graph(enumerate_geometry(3, 2))
print("greedy clique cover: %d cliques" % greedy_clique_cover(G).size)

rows, n = G.rows, G.n
cliques = []


def grow(C, k, P):
    if k == 5:
        cliques.append(C)
        return
    for v in bits(P):
        grow(C | 1 << v, k + 1, P & rows[v] & ~((2 << v) - 1))


for v in range(n):
    grow(1 << v, 1, rows[v] & ~((2 << v) - 1))
print("5-cliques: %d" % len(cliques))
if not cliques:
    print("no 5-clique, so no perfect cover")
    sys.exit(0)

by_vertex = [[] for _ in range(n)]
for c in cliques:
    for v in bits(c):
        by_vertex[v].append(c)
full = G.all_vertices
deadline = time.monotonic() + args.budget
sys.setrecursionlimit(10000)


class OutOfTime(Exception):
    pass


def cover(covered):
    if covered == full:
        return True
    if time.monotonic() > deadline:
        raise OutOfTime
    pick = None
    for v in bits(full & ~covered):
        opts = [c for c in by_vertex[v] if not c & covered]
        if pick is None or len(opts) < len(pick):
            pick = opts
            if len(opts) <= 1:
                break
    return any(cover(covered | c) for c in pick)


try:
    print("perfect cover found" if cover(0) else "no perfect cover exists")
except OutOfTime:
    print("undecided within %.0f s" % args.budget)
