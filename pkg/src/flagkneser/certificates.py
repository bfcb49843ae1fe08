"""Verifiable witnesses bound to a specific graph build by fingerprint."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

from .graph import OppositionGraph, bits, to_bitset

KINDS = ("independent_set", "proper_coloring", "clique_cover", "covering_family")


class FingerprintMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    kind: str
    vertex_sets: tuple[tuple[int, ...], ...]
    provenance: str
    graph_fingerprint: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError("unknown certificate kind %r" % self.kind)

    @classmethod
    def build(cls, kind, sets, provenance, graph: OppositionGraph) -> "Certificate":
        norm = tuple(tuple(sorted(bits(s))) if isinstance(s, int) else tuple(sorted(s)) for s in sets)
        return cls(kind, norm, provenance, graph.fingerprint)

    @property
    def size(self) -> int:
        """Set size for independent_set, number of classes otherwise."""
        if self.kind == "independent_set":
            return len(self.vertex_sets[0])
        return len(self.vertex_sets)

    def bitsets(self) -> list[int]:
        return [to_bitset(s) for s in self.vertex_sets]

    def to_dict(self) -> dict:
        return {
            "graph_fingerprint": self.graph_fingerprint,
            "kind": self.kind,
            "provenance": self.provenance,
            "vertex_sets": [list(s) for s in self.vertex_sets],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        d = json.loads(text)
        return cls(d["kind"], tuple(tuple(s) for s in d["vertex_sets"]),
                   d["provenance"], d["graph_fingerprint"])

    def digest(self) -> str:
        return "sha256:" + hashlib.sha256(self.to_json().encode()).hexdigest()

    def save(self, path) -> Path:
        p = Path(path)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(self.to_json(), encoding="utf-8")
        return p

    @classmethod
    def load(cls, path) -> "Certificate":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


class Verdict(NamedTuple):
    ok: bool
    violation: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def _first_edge(graph: OppositionGraph, s: int):
    for v in bits(s):
        hit = graph.rows[v] & s
        if hit:
            return v, (hit & -hit).bit_length() - 1
    return None


def _first_non_edge(graph: OppositionGraph, s: int):
    for v in bits(s):
        miss = s & ~graph.rows[v] & ~(1 << v)
        if miss:
            return v, (miss & -miss).bit_length() - 1
    return None


def verify_certificate(graph: OppositionGraph, cert: Certificate) -> Verdict:
    """Re-check the invariant of cert.kind against graph.

    Raises FingerprintMismatch when cert was issued for another graph.
    """
    if cert.graph_fingerprint != graph.fingerprint:
        raise FingerprintMismatch("%s != %s" % (cert.graph_fingerprint, graph.fingerprint))
    n = graph.n
    sets = []
    for i, s in enumerate(cert.vertex_sets):
        if len(set(s)) != len(s):
            return Verdict(False, "repeated vertex in set", (i,))
        if s and (min(s) < 0 or max(s) >= n):
            return Verdict(False, "vertex out of range", (i,))
        sets.append(to_bitset(s))

    if cert.kind == "independent_set" and len(sets) != 1:
        return Verdict(False, "independent_set needs exactly one set", (len(sets),))

    if cert.kind in ("proper_coloring", "clique_cover"):
        seen = 0
        for i, s in enumerate(sets):
            if seen & s:
                v = (seen & s & -(seen & s)).bit_length() - 1
                return Verdict(False, "sets overlap", (i, v))
            seen |= s
        if seen != graph.all_vertices:
            missing = graph.all_vertices & ~seen
            return Verdict(False, "vertex not covered", ((missing & -missing).bit_length() - 1,))
    elif cert.kind == "covering_family":
        union = 0
        for s in sets:
            union |= s
        if union != graph.all_vertices:
            missing = graph.all_vertices & ~union
            return Verdict(False, "vertex not covered", ((missing & -missing).bit_length() - 1,))

    for i, s in enumerate(sets):
        if cert.kind == "clique_cover":
            pair = _first_non_edge(graph, s)
            if pair:
                return Verdict(False, "non-adjacent pair in clique", (i,) + pair)
        else:
            pair = _first_edge(graph, s)
            if pair:
                return Verdict(False, "adjacent pair in independent set", (i,) + pair)
    return Verdict(True)


def is_maximal(graph: OppositionGraph, cert: Certificate) -> Verdict:
    """Maximality of an independent_set certificate (no vertex addable)."""
    v = verify_certificate(graph, cert)
    if not v:
        return v
    s = to_bitset(cert.vertex_sets[0])
    dominated = s
    for u in bits(s):
        dominated |= graph.rows[u]
    free = graph.all_vertices & ~dominated
    if free:
        return Verdict(False, "vertex can be added", ((free & -free).bit_length() - 1,))
    return Verdict(True)
