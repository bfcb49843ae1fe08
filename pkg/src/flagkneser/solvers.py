"""Exact search on OppositionGraph: independent sets, colorings, clique covers.

All searches run on int bitsets in the graph's vertex order with lowest-id
tie-breaking, so node counts and witnesses are reproducible.  Upper bounds
for independent sets come from greedy clique covers: a set of k cliques
covering the candidates caps any independent subset at k.
"""
from __future__ import annotations

import math
import sys
import time
from dataclasses import dataclass, field
from typing import Iterator

from .certificates import Certificate, Verdict, verify_certificate
from .graph import OppositionGraph, bits

DEFAULT_TIMEOUT_S = 300.0


class Timeout(Exception):
    """Search budget exhausted.  ``result`` carries the bounds reached."""

    def __init__(self, message: str, result: "SolveResult | None" = None):
        super().__init__(message)
        self.result = result


@dataclass
class SolveResult:
    value: int | None
    witness: Certificate | None
    optimal: bool
    lower: int | None = None
    upper: int | None = None
    nodes: int = 0
    runtime_s: float = 0.0
    lower_reason: str = ""
    stats: dict = field(default_factory=dict)


class _Clock:
    def __init__(self, timeout_s: float | None):
        self.start = time.monotonic()
        self.deadline = None if timeout_s is None else self.start + timeout_s
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Expired

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.start


class _Expired(Exception):
    pass


def _deep_recursion(n: int):
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 200))
    return limit


def clique_cover_order(rows, P: int) -> tuple[list[int], list[int]]:
    """Greedy sequential cover of P by cliques of the graph.

    Returns the vertices in cover order together with the running number of
    the clique each one went into.
    """
    order: list[int] = []
    labels: list[int] = []
    k = 0
    while P:
        k += 1
        Q = P
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            P ^= low
            Q &= rows[v]
            order.append(v)
            labels.append(k)
    return order, labels


def clique_cover_bound(rows, P: int) -> int:
    k = 0
    while P:
        k += 1
        Q = P
        while Q:
            low = Q & -Q
            P ^= low
            Q &= rows[low.bit_length() - 1]
    return k


def _branch_set(rows, P: int, order, labels, kmin: int) -> int:
    """Vertices to branch on: every improving set in P contains one of them.

    Two candidates, the smaller wins: the vertices whose clique number in the
    cover exceeds kmin, and {u} plus the neighbours of u in P for the u with
    fewest neighbours in P (a maximal set must contain u or a neighbour).
    """
    B = 0
    for i in range(len(order) - 1, -1, -1):
        if labels[i] <= kmin:
            break
        B |= 1 << order[i]
    pu, pc = -1, -1
    for u in bits(P):
        c = (rows[u] & P).bit_count()
        if pc < 0 or c < pc:
            pu, pc = u, c
            if c == 0:
                break
    S = (rows[pu] & P) | (1 << pu)
    return S if S.bit_count() < B.bit_count() else B


def _mis_search(rows, nonadj, P: int, base: int, best: list, clock: "_Clock") -> None:
    """Branch and bound below base on candidates P; best = [size, set]."""

    def expand(C: int, size: int, P: int) -> None:
        clock.tick()
        order, labels = clique_cover_order(rows, P)
        if size + labels[-1] <= best[0]:
            return
        for v in bits(_branch_set(rows, P, order, labels, best[0] - size)):
            bit = 1 << v
            NP = P & nonadj[v]
            if NP:
                expand(C | bit, size + 1, NP)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, C | bit
            P &= ~bit
            if not P or size + clique_cover_bound(rows, P) <= best[0]:
                return

    if P:
        expand(base, base.bit_count(), P)
    elif base.bit_count() > best[0]:
        best[0], best[1] = base.bit_count(), base


def max_independent_set(graph: OppositionGraph, hint_lower: int | None = None,
                        timeout_s: float | None = DEFAULT_TIMEOUT_S) -> SolveResult:
    """Exact independence number by branch and bound.

    hint_lower is a size known to be attainable; the search then only looks
    for sets of at least that size (and still has to find one).
    """
    rows = graph.rows
    full = graph.all_vertices
    best = [0 if hint_lower is None else max(0, hint_lower - 1), 0]
    clock = _Clock(timeout_s)
    limit = _deep_recursion(graph.n)
    timed_out = False
    try:
        _mis_search(rows, graph.complement_rows(), full, 0, best, clock)
    except _Expired:
        timed_out = True
    finally:
        sys.setrecursionlimit(limit)

    witness = None
    found = best[1].bit_count()
    if best[1]:
        witness = Certificate.build("independent_set", [best[1]],
                                    "max_independent_set branch-and-bound", graph)
        _self_check(graph, witness)
    if timed_out:
        return SolveResult(found or None, witness, False, lower=found,
                           upper=clique_cover_bound(rows, full),
                           nodes=clock.nodes, runtime_s=clock.elapsed)
    if not found and hint_lower:
        raise ValueError("hint_lower=%d is not attainable" % hint_lower)
    return SolveResult(found, witness, True, lower=found, upper=found,
                       nodes=clock.nodes, runtime_s=clock.elapsed,
                       lower_reason="exhaustive branch and bound")


def enumerate_maximal_is(graph: OppositionGraph, min_size: int = 1,
                         timeout_s: float | None = DEFAULT_TIMEOUT_S,
                         stats: dict | None = None) -> Iterator[Certificate]:
    """Every maximal independent set with at least min_size vertices, once each.

    Bron-Kerbosch with pivoting on the complement.  A branch is cut when the
    current set plus a clique-cover bound on the candidates stays below
    min_size, which cannot lose any qualifying set.
    """
    rows = graph.rows
    nonadj = graph.complement_rows()
    clock = _Clock(timeout_s)
    found = []

    def bk(R: int, size: int, P: int, X: int):
        clock.tick()
        if not P:
            if not X and size >= min_size:
                yield R
            return
        if size + clique_cover_bound(rows, P) < min_size:
            return
        # pivot maximizes |P cap N(u)| in the complement; ties to lowest id
        pivot, best = -1, -1
        for u in bits(P | X):
            c = (P & nonadj[u]).bit_count()
            if c > best:
                pivot, best = u, c
        for v in bits(P & ~nonadj[pivot]):
            bit = 1 << v
            yield from bk(R | bit, size + 1, P & nonadj[v], X & nonadj[v])
            P &= ~bit
            X |= bit
            if size + (P.bit_count() and clique_cover_bound(rows, P)) < min_size:
                return

    limit = _deep_recursion(graph.n)
    try:
        for R in bk(0, 0, graph.all_vertices, 0):
            found.append(R)
            yield Certificate.build("independent_set", [R],
                                    "enumerate_maximal_is min_size=%d" % min_size, graph)
    except _Expired:
        raise Timeout("maximal-set enumeration exceeded %ss after %d sets"
                      % (timeout_s, len(found)))
    finally:
        sys.setrecursionlimit(limit)
        if stats is not None:
            stats.update(nodes=clock.nodes, runtime_s=clock.elapsed, sets=len(found))


def greedy_coloring(graph: OppositionGraph) -> list[int]:
    """DSATUR greedy coloring (no backtracking); returns color per vertex.

    Picks the uncolored vertex with most distinct neighbour colors, then most
    uncolored neighbours, lowest id on ties; it gets the smallest free color.
    """
    n = graph.n
    rows = graph.rows
    color = [-1] * n
    seen = [0] * n                      # bitmask of colors among neighbours
    free_deg = [r.bit_count() for r in rows]
    uncolored = set(range(n))
    for _ in range(n):
        v = min(uncolored, key=lambda u: (-seen[u].bit_count(), -free_deg[u], u))
        c = (~seen[v] & (seen[v] + 1)).bit_length() - 1
        color[v] = c
        uncolored.discard(v)
        for u in bits(rows[v]):
            seen[u] |= 1 << c
            free_deg[u] -= 1
    return color


def _dsatur_pick(rows, classes, uncolored: int) -> int:
    best_v, best_key = -1, None
    for v in bits(uncolored):
        r = rows[v]
        sat = sum(1 for cls in classes if r & cls)
        key = (sat, (r & uncolored).bit_count())
        if best_key is None or key > best_key:
            best_v, best_key = v, key
    return best_v


def _coloring_cert(graph, color: list[int], provenance: str) -> Certificate:
    k = max(color) + 1 if color else 0
    sets = [0] * k
    for v, c in enumerate(color):
        sets[c] |= 1 << v
    return Certificate.build("proper_coloring", sets, provenance, graph)


def k_colorable(graph: OppositionGraph, k: int, timeout_s: float | None = DEFAULT_TIMEOUT_S,
                alpha: int | None = None) -> SolveResult:
    """Decide k-colorability; value is 1 (yes) or 0 (no).

    Backtracking in saturation-degree order; a new color is only opened as
    the next unused one.  With the independence number alpha supplied, n >
    k*alpha is refused by pigeonhole, and n == k*alpha is decided as an exact
    cover by maximum independent sets.
    """
    n = graph.n
    clock = _Clock(timeout_s)
    if n == 0:
        return SolveResult(1, None, True, nodes=0)
    if k <= 0:
        return SolveResult(0, None, True, lower_reason="no colors")
    if alpha is not None and n > k * alpha:
        return SolveResult(0, None, True, lower_reason="pigeonhole: n > k*alpha",
                           runtime_s=clock.elapsed)
    if alpha is not None and n == k * alpha:
        return _exact_cover_coloring(graph, k, alpha, clock, timeout_s)

    rows = graph.rows
    color = [-1] * n
    classes = [0] * k

    def rec(uncolored: int, used: int) -> bool:
        clock.tick()
        if not uncolored:
            return True
        v = _dsatur_pick(rows, classes[:used], uncolored)
        r = rows[v]
        bit = 1 << v
        for c in range(used):
            if not r & classes[c]:
                classes[c] |= bit
                color[v] = c
                if rec(uncolored & ~bit, used):
                    return True
                classes[c] &= ~bit
        if used < k:
            classes[used] |= bit
            color[v] = used
            if rec(uncolored & ~bit, used + 1):
                return True
            classes[used] &= ~bit
        color[v] = -1
        return False

    limit = _deep_recursion(n)
    try:
        ok = rec(graph.all_vertices, 0)
    except _Expired:
        raise Timeout("k_colorable(k=%d) exceeded %ss" % (k, timeout_s),
                      SolveResult(None, None, False, nodes=clock.nodes, runtime_s=clock.elapsed))
    finally:
        sys.setrecursionlimit(limit)
    if not ok:
        return SolveResult(0, None, True, nodes=clock.nodes, runtime_s=clock.elapsed,
                           lower_reason="exhausted %d-coloring search" % k)
    cert = _coloring_cert(graph, color, "k_colorable DSATUR backtracking k=%d" % k)
    _self_check(graph, cert)
    return SolveResult(1, cert, True, nodes=clock.nodes, runtime_s=clock.elapsed)


def _exact_cover_coloring(graph, k, alpha, clock, timeout_s) -> SolveResult:
    stats: dict = {}
    remaining = None if timeout_s is None else max(0.0, timeout_s - clock.elapsed)
    try:
        maxsets = [c.bitsets()[0] for c in enumerate_maximal_is(graph, alpha, remaining, stats)]
    except Timeout as exc:
        raise Timeout("exact-cover coloring: %s" % exc,
                      SolveResult(None, None, False, runtime_s=clock.elapsed))
    maxsets = [s for s in maxsets if s.bit_count() == alpha]
    full = graph.all_vertices
    by_vertex = [[s for s in maxsets if s >> v & 1] for v in range(graph.n)]
    chosen: list[int] = []

    def cover(covered: int) -> bool:
        clock.tick()
        if covered == full:
            return True
        uncovered = full & ~covered
        pick = None
        for v in bits(uncovered):
            opts = [s for s in by_vertex[v] if not s & covered]
            if pick is None or len(opts) < len(pick):
                pick = opts
                if len(opts) <= 1:
                    break
        for s in pick:
            chosen.append(s)
            if cover(covered | s):
                return True
            chosen.pop()
        return False

    stats_out = {"maximum_sets": len(maxsets), **stats}
    if not cover(0):
        return SolveResult(0, None, True, nodes=clock.nodes, runtime_s=clock.elapsed,
                           lower_reason="no partition into %d of the %d maximum independent sets"
                           % (k, len(maxsets)), stats=stats_out)
    cert = Certificate.build("proper_coloring", chosen,
                             "exact cover by maximum independent sets k=%d" % k, graph)
    _self_check(graph, cert)
    return SolveResult(1, cert, True, nodes=clock.nodes, runtime_s=clock.elapsed,
                       stats=stats_out)


def greedy_clique_cover(graph: OppositionGraph) -> Certificate:
    order, labels = clique_cover_order(graph.rows, graph.all_vertices)
    k = labels[-1] if labels else 0
    sets = [0] * k
    for v, c in zip(order, labels):
        sets[c - 1] |= 1 << v
    cert = Certificate.build("clique_cover", sets, "greedy sequential clique cover", graph)
    _self_check(graph, cert)
    return cert


def chromatic_number(graph: OppositionGraph, ub_hint: Certificate | None = None,
                     lb_hint: int | None = None, alpha: int | None = None,
                     timeout_s: float | None = DEFAULT_TIMEOUT_S) -> SolveResult:
    """Chromatic number bracketed from both sides, closed by k_colorable.

    Lower bound candidates: lb_hint, ceil(n/alpha), a greedy clique.  The
    upper bound is ub_hint if it verifies, else a DSATUR coloring.  The
    search then tests k = lower, lower+1, ... until it meets the upper bound.
    """
    clock = _Clock(timeout_s)
    n = graph.n
    if n == 0:
        return SolveResult(0, None, True, 0, 0, lower_reason="empty graph")
    if ub_hint is not None and verify_certificate(graph, ub_hint) and ub_hint.kind == "proper_coloring":
        witness = ub_hint
    else:
        witness = _coloring_cert(graph, greedy_coloring(graph), "DSATUR greedy coloring")
    upper = witness.size

    clique = _greedy_clique(graph)
    candidates = [(clique, "clique of size %d" % clique)]
    if alpha:
        candidates.append((math.ceil(n / alpha), "ceil(n/alpha) = ceil(%d/%d)" % (n, alpha)))
    if lb_hint:
        candidates.append((lb_hint, "supplied lower bound"))
    lower, reason = max(candidates, key=lambda c: c[0])

    nodes = 0
    while lower < upper:
        remaining = None if timeout_s is None else timeout_s - clock.elapsed
        if remaining is not None and remaining <= 0:
            break
        try:
            r = k_colorable(graph, lower, remaining, alpha)
        except Timeout:
            break
        nodes += r.nodes
        if r.value:
            witness, upper = r.witness, lower
        else:
            reason = r.lower_reason or "exhausted %d-coloring search" % lower
            lower += 1
    return SolveResult(upper if lower == upper else None, witness, lower == upper,
                       lower=lower, upper=upper, nodes=nodes, runtime_s=clock.elapsed,
                       lower_reason=reason)


def _greedy_clique(graph: OppositionGraph) -> int:
    best = 0
    for v in range(graph.n):
        C, P = 1, graph.rows[v]
        while P:
            u = (P & -P).bit_length() - 1
            C += 1
            P &= graph.rows[u]
        best = max(best, C)
    return best


def _self_check(graph: OppositionGraph, cert: Certificate) -> None:
    verdict: Verdict = verify_certificate(graph, cert)
    if not verdict:
        raise AssertionError("solver produced an invalid witness: %s" % (verdict,))
