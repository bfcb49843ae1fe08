"""Command-line driver: build graphs, run checks, write certificates and reports.

Workspace layout under --out::

    graphs/<slug>.json      metadata, vertex labels, fingerprint
    graphs/<slug>.dimacs    edge list (skipped for very large graphs unless built)
    certs/<slug>/<name>.json
    reports/<slug>.json     list of Report objects from the last run on <slug>
    report.json             consolidated document written by ``report``

Exit codes: 0 when nothing is refuted, 1 when some check is refuted (or the
input is not a generalized quadrangle), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

from .certificates import Certificate, FingerprintMismatch, is_maximal, verify_certificate
from .constructions import (
    all_pencils_gq,
    all_pencils_pg,
    coloring_from_cover,
    coloring_from_ovoid_or_spread,
    exceptional_gq22,
    h44_cover,
    ovoid_q4,
    pencil_gq,
    pencil_pg,
    pg_coloring,
    sharpness_set,
    spread_w,
)
from .galois import Unsupported
from .graph import OppositionGraph, read_dimacs
from .klein import opposition_transfer_check, pencil_transfer_check
from .projective import chamber_graph, enumerate_geometry
from .quadrangle import (
    IncidenceGQ,
    NotGQ,
    flag_graph,
    grids_exhaustive,
    h4_hermitian,
    hyperbolic_sections,
    q4_quadric,
    read_gq,
    w_symplectic,
)
from .solvers import (
    DEFAULT_TIMEOUT_S,
    Timeout,
    chromatic_number,
    enumerate_maximal_is,
    greedy_clique_cover,
    max_independent_set,
)

STATUSES = ("verified", "refuted", "reported-only", "timeout")
EXACT_ALPHA_MAX = 600     # vertices; above this alpha is only bracketed
FULL_ENUM_MAX = 64        # vertices; at or below this, enumerate every maximal set
DIMACS_MAX_EDGES = 2_000_000
# Default threshold for the non-pencil search in PG(3,2).  Enumeration is
# complete above it, so the reported maximum is exact whenever one is found.
PG2_NONPENCIL_MIN = 51
# Paper-independent label for the H(4,4) lower bound that rests on the
# published nonexistence of a spread; it is carried, not recomputed.
H44_CITED_LOWER = 34


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    out: Path = Path("out")
    timeout_s: float | None = DEFAULT_TIMEOUT_S
    threads: int = 1
    min_size: int | None = None


@dataclass
class Report:
    check_id: str
    parameters: dict
    claim: dict
    observed: object = None
    status: str = "reported-only"
    certificates: list = field(default_factory=list)
    runtime_ms: int = 0
    notes: str = ""
    _cert_ok: bool = field(default=True, repr=False)

    def settle(self, claim_holds: bool | None) -> None:
        """verified/refuted from the claim; None keeps reported-only.  A
        certificate that failed to re-verify always refutes."""
        if not self._cert_ok:
            self.status = "refuted"
        elif claim_holds is None:
            self.status = "reported-only"
        else:
            self.status = "verified" if claim_holds else "refuted"

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("_cert_ok")
        return d


def _claim(anchor: str, relation: str, value) -> dict:
    return {"anchor": anchor, "relation": relation, "value": value}


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


class Workspace:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.root = Path(cfg.out)

    def save_graph(self, slug: str, graph: OppositionGraph, source: dict,
                   dimacs: bool | None = None) -> Path:
        gdir = self.root / "graphs"
        gdir.mkdir(parents=True, exist_ok=True)
        edges = graph.edge_count()
        if dimacs is None:
            dimacs = edges <= DIMACS_MAX_EDGES
        dpath = None
        if dimacs:
            dpath = "graphs/%s.dimacs" % slug
            graph.write_dimacs(self.root / dpath, "opposition graph %s\nfingerprint %s"
                               % (graph.name, graph.fingerprint))
        meta = {
            "name": graph.name,
            "source": source,
            "vertices": graph.n,
            "edges": edges,
            "fingerprint": graph.fingerprint,
            "dimacs": dpath,
            "labels": [list(lab) for lab in graph.labels],
        }
        path = gdir / ("%s.json" % slug)
        path.write_text(json.dumps(meta, sort_keys=True) + "\n", encoding="utf-8")
        return path

    def attach(self, rep: Report, slug: str, name: str, cert: Certificate,
               graph: OppositionGraph, maximal: bool = False) -> bool:
        """Write cert, read it back and re-verify; record the path on rep."""
        rel = "certs/%s/%s.json" % (slug, name)
        cert.save(self.root / rel)
        back = Certificate.load(self.root / rel)
        ok = bool(is_maximal(graph, back) if maximal else verify_certificate(graph, back))
        ok &= back == cert
        rep.certificates.append(rel)
        rep._cert_ok &= ok
        return ok

    def write_reports(self, slug: str, reports: list[Report]) -> Path:
        rdir = self.root / "reports"
        rdir.mkdir(parents=True, exist_ok=True)
        path = rdir / ("%s.json" % slug)
        path.write_text(_dump([r.to_dict() for r in reports]), encoding="utf-8")
        return path


def _run(check_id: str, parameters: dict, claim: dict, body: Callable[[Report], None]) -> Report:
    rep = Report(check_id, parameters, claim)
    t0 = time.monotonic()
    try:
        body(rep)
    except Timeout as exc:
        rep.status = "timeout"
        r = exc.result
        rep.observed = None if r is None else {"lower": r.lower, "upper": r.upper}
        rep.notes = str(exc)
    rep.runtime_ms = round((time.monotonic() - t0) * 1000)
    return rep


# -- targets ----------------------------------------------------------------

def load_gq(target: str, q: int | None, path: str | None) -> tuple[str, IncidenceGQ, dict]:
    """(slug, quadrangle, source description) for a GQ target."""
    if target == "w":
        _need_q(q, (2, 3, 4))
        return "w-q%d" % q, w_symplectic(q), {"target": "w", "q": q}
    if target == "q4":
        _need_q(q, (2, 3, 4))
        return "q4-q%d" % q, q4_quadric(q), {"target": "q4", "q": q}
    if target == "h4":
        return "h4", h4_hermitian(), {"target": "h4"}
    if target == "file":
        if not path:
            raise UsageError("--path is required for a file target")
        gq = read_gq(path)
        return "file-%s" % Path(path).stem, gq, {"target": "file", "path": str(path)}
    raise UsageError("unknown GQ target %r" % target)


def _need_q(q: int | None, allowed) -> None:
    if q is None:
        raise UsageError("--q is required")
    if q not in allowed:
        raise UsageError("--q must be one of %s" % (allowed,))


def graph_from_source(source: dict, threads: int = 1) -> OppositionGraph:
    t = source["target"]
    if t == "pg":
        return chamber_graph(enumerate_geometry(3, source["q"]), threads=threads)
    _, gq, _ = load_gq(t, source.get("q"), source.get("path"))
    return flag_graph(gq, threads=threads)


def _gq_params(gq: IncidenceGQ, q: int | None) -> dict:
    p = {"model": gq.name, "s": gq.s, "t": gq.t}
    if q is not None:
        p["q"] = q
    return p


# -- generalized quadrangle checks -----------------------------------------

def verify_gq(ws: Workspace, target: str, q: int | None = None, path: str | None = None,
              include: tuple[str, ...] | None = None) -> list[Report]:
    slug, gq, source = load_gq(target, q, path)
    cfg = ws.cfg
    s, t = gq.order
    params = _gq_params(gq, q)
    graph = flag_graph(gq, threads=cfg.threads)
    ws.save_graph(slug, graph, source)
    n = graph.n
    e0 = (s + 1) * (t + 1)
    hm = max(1 + s + 2 * t, 1 + t + 2 * s)
    want = (lambda name: True) if include is None else (lambda name: name in include)
    reports: list[Report] = []
    state: dict = {}

    def order(rep: Report) -> None:
        expected = {"points": (s + 1) * (s * t + 1), "lines": (t + 1) * (s * t + 1),
                    "flags": (s + 1) * (t + 1) * (s * t + 1)}
        model_order = {"w": (q, q), "q4": (q, q), "h4": (4, 8)}.get(target)
        if model_order:
            expected["order"] = list(model_order)
        observed = {"order": [s, t], "points": gq.n_points, "lines": gq.n_lines, "flags": n}
        rep.claim = _claim("thick GQ of order (s,t) with (s+1)(st+1) points, (t+1)(st+1) lines",
                           "==", expected)
        rep.observed = observed
        rep.settle(all(observed[k] == v for k, v in expected.items()))

    def alpha(rep: Report) -> None:
        pencil = pencil_gq("point", 0, gq, graph)
        ws.attach(rep, slug, "alpha-pencil-point-0", pencil, graph, maximal=True)
        if n <= EXACT_ALPHA_MAX:
            r = max_independent_set(graph, timeout_s=cfg.timeout_s)
            if not r.optimal:
                rep.status = "timeout"
                rep.observed = {"lower": r.lower, "upper": r.upper}
                return
            ws.attach(rep, slug, "alpha-witness", r.witness, graph)
            state["alpha"] = r.value
            rep.observed = {"alpha": r.value, "nodes": r.nodes, "method": r.lower_reason}
            rep.settle(r.value == e0)
        else:
            cover = greedy_clique_cover(graph)
            ws.attach(rep, slug, "alpha-clique-cover", cover, graph)
            rep.observed = {"lower": pencil.size, "upper": cover.size}
            rep.notes = "graph too large for exact search; pencil lower bound, clique-cover upper bound"
            rep.settle(None if pencil.size == e0 else False)

    reports.append(_run("%s.order" % slug, params, {}, order))
    if want("alpha"):
        reports.append(_run("%s.alpha" % slug, params,
                            _claim("alpha = (s+1)(t+1)", "==", e0), alpha))

    if want("enumerate") and "alpha" in state:
        a = state["alpha"]
        m = cfg.min_size if cfg.min_size is not None else (1 if n <= FULL_ENUM_MAX else hm + 1)
        enum_box: dict = {}

        def enumerate_sets() -> list[int]:
            if "sets" not in enum_box:
                stats: dict = {}
                enum_box["sets"] = [c.bitsets()[0] for c in
                                    enumerate_maximal_is(graph, m, cfg.timeout_s, stats)]
                enum_box["stats"] = stats
            return enum_box["sets"]

        def classify(rep: Report) -> None:
            sets = [b for b in enumerate_sets() if b.bit_count() == a]
            pencils = {b: (kind, x) for kind, x, b in all_pencils_gq(gq)}
            grids = {}
            if (s, t) == (2, 2):
                found = (hyperbolic_sections(gq) if gq.coords and len(gq.coords[0]) == 5
                         else grids_exhaustive(gq))
                for g in found:
                    grids[exceptional_gq22(g, gq, graph).bitsets()[0]] = g
            n_p = n_g = other = 0
            for i, b in enumerate(sets):
                if b in pencils:
                    n_p += 1
                    kind, x = pencils[b]
                    name = "maxset-%s-%d" % (kind, x)
                elif b in grids:
                    n_g += 1
                    name = "maxset-grid-%d" % n_g
                else:
                    other += 1
                    name = "maxset-other-%d" % other
                ws.attach(rep, slug, name,
                          Certificate.build("independent_set", [b], "maximum set %d of %s"
                                            % (i, gq.name), graph), graph, maximal=True)
            rep.observed = {"maximum_sets": len(sets), "pencils": n_p, "grid_sets": n_g,
                            "other": other, "grids_in_gq": len(grids)}
            if m > a:
                rep.notes = "threshold above alpha; nothing enumerated"
                rep.settle(None)
                return
            rep.settle(other == 0 and n_p == len(pencils) and n_g == len(grids))

        def hilton_milner(rep: Report) -> None:
            sets = enumerate_sets()
            hist = Counter(b.bit_count() for b in sets)
            below = [b for b in sets if b.bit_count() < a]
            bad = sorted(k for k in hist if hm < k < a)
            rep.observed = {
                "threshold": m,
                "size_histogram": {str(k): hist[k] for k in sorted(hist)},
                "largest_non_maximum": max((b.bit_count() for b in below), default=None),
                "sizes_between_bound_and_alpha": bad,
                "nodes": enum_box["stats"].get("nodes"),
            }
            if below:
                largest = max(below, key=lambda b: (b.bit_count(), -b))
                ws.attach(rep, slug, "largest-non-maximum",
                          Certificate.build("independent_set", [largest],
                                            "largest non-maximum maximal set in %s" % gq.name,
                                            graph), graph, maximal=True)
            if bad:
                rep.settle(False)
            elif m <= hm + 1:
                rep.settle(True)
            else:
                rep.notes = "threshold %d leaves sizes %d..%d unchecked" % (m, hm + 1, m - 1)
                rep.settle(None)

        reports.append(_run("%s.maximum_sets" % slug, params,
                            _claim("every maximum set is a pencil F(x), or a grid set when s=t=2",
                                   "==", {"other": 0}), classify))
        reports.append(_run("%s.maximal_bound" % slug, params,
                            _claim("maximal sets below (s+1)(t+1) have size <= "
                                   "max{1+s+2t, 1+t+2s}", "<=", hm), hilton_milner))

    if want("sharpness") and target == "q4":
        def sharp(rep: Report) -> None:
            grid = hyperbolic_sections(gq)[0]
            cert = sharpness_set(gq, grid, grid.points[0], graph)
            maximal = ws.attach(rep, slug, "sharpness-set", cert, graph, maximal=True)
            rep.observed = {"size": cert.size, "maximal": maximal}
            rep.settle(cert.size == t + 1 + 2 * s)

        reports.append(_run("%s.sharpness" % slug, params,
                            _claim("grid-based maximal set of size t+1+2s", "==", t + 1 + 2 * s),
                            sharp))

    if want("chromatic"):
        reports.extend(_gq_chromatic(ws, slug, target, gq, graph, q, state.get("alpha")))

    ws.write_reports(slug, reports)
    return reports


def _gq_chromatic(ws: Workspace, slug: str, target: str, gq: IncidenceGQ,
                  graph: OppositionGraph, q: int | None, alpha: int | None) -> list[Report]:
    cfg = ws.cfg
    s, t = gq.order
    n = graph.n
    params = _gq_params(gq, q)
    e0 = (s + 1) * (t + 1)
    st1 = s * t + 1
    out = []

    if target in ("w", "q4"):
        def by_partition(rep: Report) -> None:
            if target == "w":
                cert = coloring_from_ovoid_or_spread(gq, graph, "line", spread_w(q))
                how = "spread coloring"
            else:
                cert = coloring_from_ovoid_or_spread(gq, graph, "point", ovoid_q4(q))
                how = "ovoid coloring"
            ws.attach(rep, slug, "coloring", cert, graph)
            if alpha is None:
                rep.observed = {"upper": cert.size, "upper_reason": how}
                rep.notes = "alpha not certified in this run; lower bound not closed"
                rep.settle(None)
                return
            lower = math.ceil(n / alpha)
            rep.observed = {"chi": cert.size if lower == cert.size else None,
                            "lower": lower, "upper": cert.size,
                            "lower_reason": "ceil(n/alpha) = ceil(%d/%d)" % (n, alpha),
                            "upper_reason": how, "search_nodes": 0}
            rep.settle(lower == cert.size == st1)

        out.append(_run("%s.chromatic" % slug, params,
                        _claim("chi = st+1 (an ovoid or spread exists)", "==", st1), by_partition))
        return out

    if target == "h4":
        box: dict = {}

        def cover(rep: Report) -> None:
            c = h44_cover(0, gq, graph)
            ws.attach(rep, slug, "cover-36", c, graph)
            col = coloring_from_cover(c, graph)
            ws.attach(rep, slug, "coloring", col, graph)
            box["upper"] = col.size
            rep.observed = {"cover_size": c.size, "coloring_classes": col.size}
            rep.settle(c.size == 36 and col.size <= 36)

        def bracket(rep: Report) -> None:
            frac = math.ceil(n / e0)
            upper = box.get("upper", 36)
            rep.observed = {
                "fractional_lower": frac,
                "fractional_reason": "n/alpha = %d/%d with alpha = (s+1)(t+1)" % (n, e0),
                "upper": upper,
                "bracket": [frac, upper],
                "cited_lower": H44_CITED_LOWER,
                "cited_lower_status": "cited, not recomputed (no ovoid or spread)",
                "cited_bracket": [H44_CITED_LOWER, 36],
            }
            rep.settle(None)

        out.append(_run("%s.cover" % slug, params,
                        _claim("36 pencils at the points collinear with p cover all flags",
                               "<=", 36), cover))
        out.append(_run("%s.chromatic" % slug, params,
                        _claim("chi in {34,35,36}", "in", [34, 35, 36]), bracket))
        return out

    def generic(rep: Report) -> None:
        r = chromatic_number(graph, alpha=alpha, timeout_s=cfg.timeout_s)
        ws.attach(rep, slug, "coloring", r.witness, graph)
        rep.observed = {"chi": r.value, "lower": r.lower, "upper": r.upper,
                        "lower_reason": r.lower_reason, "search_nodes": r.nodes}
        if not r.optimal:
            rep.status = "timeout"
            return
        rep.settle(r.value >= st1)

    out.append(_run("%s.chromatic" % slug, params,
                    _claim("chi >= st+1", ">=", st1), generic))
    return out


# -- PG(3,q) checks --------------------------------------------------------

def verify_pg(ws: Workspace, q: int, include: tuple[str, ...] | None = None) -> list[Report]:
    _need_q(q, (2, 3, 4))
    cfg = ws.cfg
    slug = "pg-q%d" % q
    g = enumerate_geometry(3, q)
    graph = chamber_graph(g, threads=cfg.threads)
    ws.save_graph(slug, graph, {"target": "pg", "q": q})
    params = {"model": "PG(3,%d)" % q, "q": q}
    n = graph.n
    e0 = (q * q + q + 1) * (q + 1) ** 2
    want = (lambda name: True) if include is None else (lambda name: name in include)
    reports: list[Report] = []
    state: dict = {}

    def structure(rep: Report) -> None:
        degrees = sorted({graph.degree(v) for v in range(n)})
        rep.observed = {"vertices": n, "degrees": degrees, "edges": graph.edge_count()}
        rep.settle(n == (q * q + 1) * (q * q + q + 1) * (q + 1) ** 2 and degrees == [q ** 6])

    def pencils(rep: Report) -> None:
        allp = all_pencils_pg(g)
        ok = 0
        sizes = set()
        for kind, x, _ in allp:
            cert = pencil_pg(kind, x, g, graph)
            sizes.add(cert.size)
            ok += ws.attach(rep, slug, "pencil-%s-%d" % (kind, x), cert, graph, maximal=True)
        rep.observed = {"pencils": len(allp), "sizes": sorted(sizes), "independent_and_maximal": ok}
        rep.settle(len(allp) == 2 * (q ** 3 + q * q + q + 1) and sizes == {e0} and ok == len(allp))

    def alpha(rep: Report) -> None:
        cover = greedy_clique_cover(graph)
        ws.attach(rep, slug, "alpha-clique-cover", cover, graph)
        if q == 2:
            r = max_independent_set(graph, timeout_s=cfg.timeout_s)
            if not r.optimal:
                rep.status = "timeout"
                rep.observed = {"lower": r.lower, "upper": r.upper}
                return
            ws.attach(rep, slug, "alpha-witness", r.witness, graph)
            state["alpha"] = r.value
            rep.observed = {"alpha": r.value, "nodes": r.nodes, "method": r.lower_reason,
                            "clique_cover_upper": cover.size}
            rep.settle(r.value == e0)
        else:
            pencil = pencil_pg("point", 0, g, graph)
            ws.attach(rep, slug, "alpha-pencil-point-0", pencil, graph)
            rep.observed = {"lower": pencil.size, "upper": cover.size}
            rep.notes = "certificate-bounded: pencil below, greedy clique cover above"
            rep.settle(None)

    def coloring(rep: Report) -> None:
        plane = g.planes_on_line[0][0]
        cert = pg_coloring(0, plane, g, graph)
        ws.attach(rep, slug, "coloring", cert, graph)
        state["coloring"] = cert
        rep.observed = {"classes": cert.size, "line": 0, "plane": plane}
        rep.settle(cert.size == q * q + q)

    def chromatic(rep: Report) -> None:
        ub = state.get("coloring")
        if q == 2 and "alpha" in state:
            r = chromatic_number(graph, ub_hint=ub, alpha=state["alpha"], timeout_s=cfg.timeout_s)
            if r.witness is not ub:
                ws.attach(rep, slug, "chromatic-witness", r.witness, graph)
            rep.observed = {"chi": r.value, "lower": r.lower, "upper": r.upper,
                            "lower_reason": r.lower_reason, "search_nodes": r.nodes}
            if not r.optimal:
                rep.status = "timeout"
                return
        else:
            lower = math.ceil(n / e0)
            rep.observed = {"chi": None, "lower": lower, "upper": ub.size if ub else None,
                            "lower_reason": "ceil(n/alpha) with alpha = (q^2+q+1)(q+1)^2"}
        rep.notes = "q^2+q is only proven for q >= 47; reported, not asserted"
        rep.settle(None)

    def klein(rep: Report) -> None:
        tr = opposition_transfer_check(g, graph)
        pc, pok = pencil_transfer_check(g)
        rep.observed = {"chambers": n, "bijective": tr.bijective, "pairs_checked": tr.pairs_checked,
                        "opposition_agrees": tr.agree, "counterexample": tr.counterexample,
                        "pencils_checked": pc, "pencils_map_to_planes": pok}
        rep.settle(tr.bijective and tr.agree and pok)

    reports.append(_run("%s.graph" % slug, params,
                        _claim("(q^2+1)(q^2+q+1)(q+1)^2 vertices, q^6-regular", "==",
                               {"vertices": n, "degree": q ** 6}), structure))
    if want("pencils"):
        reports.append(_run("%s.pencils" % slug, params,
                            _claim("every pencil F(x) is a maximal independent set of size "
                                   "(q^2+q+1)(q+1)^2", "==", e0), pencils))
    if want("alpha"):
        reports.append(_run("%s.alpha" % slug, params,
                            _claim("alpha = (q^2+q+1)(q+1)^2", "==", e0), alpha))
    if want("coloring") or want("chromatic"):
        reports.append(_run("%s.coloring" % slug, params,
                            _claim("proper coloring with q^2+q classes", "==", q * q + q), coloring))
    if want("chromatic"):
        reports.append(_run("%s.chromatic" % slug, params,
                            _claim("chi = q^2+q (proven for q >= 47)", "==", q * q + q), chromatic))
    if want("klein") and q in (2, 3):
        reports.append(_run("%s.klein" % slug, params,
                            _claim("Klein transfer is a bijection preserving opposition", "==",
                                   True), klein))
    if want("enumerate") and q == 2 and "alpha" in state:
        reports.extend(_pg2_enumeration(ws, slug, g, graph, params, state["alpha"]))

    ws.write_reports(slug, reports)
    return reports


def _pg2_enumeration(ws: Workspace, slug: str, g, graph: OppositionGraph, params: dict,
                     alpha: int) -> list[Report]:
    cfg = ws.cfg
    q = g.q
    m = cfg.min_size if cfg.min_size is not None else PG2_NONPENCIL_MIN
    m = min(m, alpha)
    hm_form = 9 * (q + 1) * (5 * q * q + 1)
    box: dict = {}

    def sets() -> list[int]:
        if "sets" not in box:
            stats: dict = {}
            box["sets"] = [c.bitsets()[0] for c in
                           enumerate_maximal_is(graph, m, cfg.timeout_s, stats)]
            box["stats"] = stats
        return box["sets"]

    pencils = {b: (kind, x) for kind, x, b in all_pencils_pg(g)}

    def maximum(rep: Report) -> None:
        top = [b for b in sets() if b.bit_count() == alpha]
        n_p = sum(1 for b in top if b in pencils)
        rep.observed = {"maximum_sets": len(top), "pencils": n_p, "other": len(top) - n_p}
        rep.notes = "classification is only proven for q >= 43; reported, not asserted"
        rep.settle(None)

    def non_pencil(rep: Report) -> None:
        others = [b for b in sets() if b not in pencils]
        hist = Counter(b.bit_count() for b in others)
        largest = max(hist, default=None)
        rep.observed = {
            "threshold": m,
            "largest_non_pencil": largest,
            "count_at_largest": hist[largest] if largest else 0,
            "non_pencil_histogram": {str(k): hist[k] for k in sorted(hist)},
            "bound_form_9(q+1)(5q^2+1)": hm_form,
            "nodes": box["stats"].get("nodes"),
        }
        if largest:
            first = next(b for b in others if b.bit_count() == largest)
            ws.attach(rep, slug, "largest-non-pencil",
                      Certificate.build("independent_set", [first],
                                        "largest non-pencil maximal set, PG(3,%d)" % q, graph),
                      graph, maximal=True)
            rep.notes = "enumeration is complete for sizes >= %d" % m
        else:
            rep.notes = "no non-pencil maximal set of size >= %d" % m
        rep.settle(None)

    return [
        _run("%s.maximum_sets" % slug, params,
             _claim("maximum sets are pencils (proven for q >= 43)", "==", {"other": 0}), maximum),
        _run("%s.non_pencil" % slug, params,
             _claim("non-pencil maximal sets have size <= 9(q+1)(5q^2+1) (proven for q >= 43)",
                    "<=", hm_form), non_pencil),
    ]


# -- color / build / report ------------------------------------------------

def color(ws: Workspace, target: str, q: int | None, path: str | None) -> list[Report]:
    if target == "pg":
        return verify_pg(ws, q, include=("chromatic", "alpha"))
    return verify_gq(ws, target, q, path, include=("alpha", "chromatic"))


def build(ws: Workspace, target: str, q: int | None, path: str | None) -> dict:
    if target == "pg":
        _need_q(q, (2, 3, 4))
        slug, source = "pg-q%d" % q, {"target": "pg", "q": q}
        graph = chamber_graph(enumerate_geometry(3, q), threads=ws.cfg.threads)
    else:
        slug, gq, source = load_gq(target, q, path)
        graph = flag_graph(gq, threads=ws.cfg.threads)
    meta = ws.save_graph(slug, graph, source, dimacs=True)
    return {"graph": str(meta.relative_to(ws.root)), "vertices": graph.n,
            "edges": graph.edge_count(), "fingerprint": graph.fingerprint,
            "dimacs": "graphs/%s.dimacs" % slug}


def consolidate(root: Path, threads: int = 1) -> dict:
    """Merge reports/*.json, re-verifying every certificate from disk."""
    root = Path(root)
    graphs: dict[str, dict] = {}
    for meta_path in sorted((root / "graphs").glob("*.json")):
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
        graphs[meta["fingerprint"]] = meta
    loaded: dict[str, OppositionGraph] = {}

    def graph_for(fp: str) -> OppositionGraph:
        if fp not in loaded:
            meta = graphs.get(fp)
            if meta is None:
                raise FingerprintMismatch("no graph with fingerprint %s in workspace" % fp)
            if meta.get("dimacs") and (root / meta["dimacs"]).exists():
                gr = read_dimacs(root / meta["dimacs"])
            else:
                gr = graph_from_source(meta["source"], threads)
            if gr.fingerprint != fp:
                raise FingerprintMismatch("rebuilt graph does not match %s" % fp)
            loaded[fp] = gr
        return loaded[fp]

    reports = []
    digests = {}
    for rpath in sorted((root / "reports").glob("*.json")):
        for rep in json.loads(rpath.read_text(encoding="utf-8")):
            failures = []
            for rel in rep["certificates"]:
                try:
                    cert = Certificate.load(root / rel)
                    verdict = verify_certificate(graph_for(cert.graph_fingerprint), cert)
                    digests[rel] = cert.digest()
                    if not verdict:
                        failures.append("%s: %s" % (rel, verdict.violation))
                except (OSError, ValueError, KeyError) as exc:
                    failures.append("%s: %s" % (rel, exc))
            rep["reverified"] = not failures
            if failures:
                rep["status"] = "refuted"
                rep["reverify_failures"] = failures
            reports.append(rep)
    reports.sort(key=lambda r: r["check_id"])
    summary = {st: sum(1 for r in reports if r["status"] == st) for st in STATUSES}
    return {"reports": reports, "certificate_digests": digests, "summary": summary}


def strip_runtime(obj):
    """Copy of a report document with runtime fields removed."""
    if isinstance(obj, dict):
        return {k: strip_runtime(v) for k, v in obj.items() if k != "runtime_ms"}
    if isinstance(obj, list):
        return [strip_runtime(v) for v in obj]
    return obj


# -- CLI ---------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="out", help="workspace directory (default: out)")
    common.add_argument("--threads", type=int, default=1, help="workers for graph construction")
    common.add_argument("--timeout-s", type=float, default=DEFAULT_TIMEOUT_S,
                        help="budget per solver call in seconds; 0 disables")
    common.add_argument("--min-size", type=int, default=None,
                        help="threshold for maximal-set enumeration")
    common.add_argument("--q", type=int, default=None)
    common.add_argument("--path", default=None, help="GQ incidence file for --gq file")

    p = argparse.ArgumentParser(prog="flagkneser",
                                description="Opposition graphs of PG(3,q) and generalized quadrangles.")
    sub = p.add_subparsers(dest="verb", required=True)
    b = sub.add_parser("build", parents=[common], help="write a graph as DIMACS plus metadata")
    b.add_argument("target", choices=["pg", "w", "q4", "h4", "file"])
    vg = sub.add_parser("verify-gq", parents=[common], help="run the quadrangle checks")
    vg.add_argument("--gq", required=True, choices=["w", "q4", "h4", "file"])
    sub.add_parser("verify-pg", parents=[common], help="run the PG(3,q) checks")
    c = sub.add_parser("color", parents=[common], help="coloring and chromatic bracket")
    c.add_argument("target", choices=["pg", "w", "q4", "h4", "file"])
    sub.add_parser("report", parents=[common], help="consolidate and re-verify all reports")
    return p


def _print_reports(reports: list[Report]) -> None:
    for r in reports:
        print("[%s] %s observed=%s (%d ms)" % (r.status, r.check_id,
                                               json.dumps(r.observed, sort_keys=True), r.runtime_ms))


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    if args.min_size is not None and args.min_size < 1:
        parser.error("--min-size must be at least 1")
    cfg = RunConfig(Path(args.out), args.timeout_s or None, args.threads, args.min_size)
    ws = Workspace(cfg)
    try:
        if args.verb == "build":
            print(json.dumps(build(ws, args.target, args.q, args.path), sort_keys=True))
            return 0
        if args.verb == "report":
            doc = consolidate(ws.root, args.threads)
            ws.root.mkdir(parents=True, exist_ok=True)
            (ws.root / "report.json").write_text(_dump(doc), encoding="utf-8")
            sys.stdout.write(_dump(doc))
            return 1 if doc["summary"]["refuted"] else 0
        if args.verb == "verify-gq":
            reports = verify_gq(ws, args.gq, args.q, args.path)
        elif args.verb == "verify-pg":
            reports = verify_pg(ws, args.q)
        else:
            reports = color(ws, args.target, args.q, args.path)
    except UsageError as exc:
        parser.error(str(exc))
    except (Unsupported, OSError) as exc:
        parser.error(str(exc))
    except NotGQ as exc:
        print("not a generalized quadrangle: %s" % exc, file=sys.stderr)
        return 1
    _print_reports(reports)
    return 1 if any(r.status == "refuted" for r in reports) else 0


if __name__ == "__main__":
    sys.exit(main())
