"""Threshold sweep for non-pencil maximal independent sets in PG(3,2).

Enumeration at threshold m is complete for sizes >= m, so the first
threshold (scanning downwards) that yields a non-pencil set gives the exact
size of the largest one.  Each run prints the size histogram and timing.

    python scripts/pg2_nonpencil.py 62 57 52 51
"""
import argparse
import time
from collections import Counter

from flagkneser.constructions import all_pencils_pg
from flagkneser.projective import chamber_graph, enumerate_geometry
from flagkneser.solvers import enumerate_maximal_is

ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
ap.add_argument("thresholds", type=int, nargs="*", default=[52, 51])
args = ap.parse_args()

g = enumerate_geometry(3, 2)
G = chamber_graph(g)
pencils = {b for _, _, b in all_pencils_pg(g)}
for m in sorted(args.thresholds, reverse=True):
    stats = {}
    t0 = time.monotonic()
    sets = [c.bitsets()[0] for c in enumerate_maximal_is(G, m, timeout_s=None, stats=stats)]
    others = Counter(b.bit_count() for b in sets if b not in pencils)
    print("threshold %d: pencils %d, non-pencil sizes %s, nodes %d, %.1f s"
          % (m, sum(b in pencils for b in sets), dict(sorted(others.items())),
             stats["nodes"], time.monotonic() - t0), flush=True)
    if others:
        print("largest non-pencil maximal set: %d" % max(others))
        break
