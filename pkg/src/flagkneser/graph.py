"""Immutable bitset graphs, fingerprints and DIMACS edge files.

Vertex sets are Python ints used as bitsets: bit v is set iff v is in the
set.  Row v of a graph is the bitset of neighbours of v.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np


def bits(b: int) -> Iterator[int]:
    """Members of a bitset in increasing order."""
    while b:
        low = b & -b
        yield low.bit_length() - 1
        b ^= low


def to_bitset(vertices: Iterable[int]) -> int:
    b = 0
    for v in vertices:
        b |= 1 << v
    return b


def rows_from_bool(matrix: np.ndarray) -> list[int]:
    """Convert a boolean matrix (one row per vertex) into int bitsets."""
    packed = np.packbits(matrix.astype(bool), axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


@dataclass(frozen=True)
class OppositionGraph:
    rows: tuple[int, ...]
    labels: tuple = field(default=(), compare=False, repr=False)
    name: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def all_vertices(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        nbytes = (self.n + 7) // 8
        for u, r in enumerate(self.rows):
            hi = r >> (u + 1)
            if hi:
                row = np.unpackbits(np.frombuffer(hi.to_bytes(nbytes, "little"), dtype=np.uint8),
                                    bitorder="little")
                for v in np.flatnonzero(row).tolist():
                    yield u, u + 1 + v

    def is_independent(self, s: int) -> bool:
        return all(not (self.rows[v] & s) for v in bits(s))

    def is_clique(self, s: int) -> bool:
        return all((s & ~(1 << v)) & ~self.rows[v] == 0 for v in bits(s))

    def is_maximal_independent(self, s: int) -> bool:
        if not self.is_independent(s):
            return False
        dominated = s
        for v in bits(s):
            dominated |= self.rows[v]
        return dominated == self.all_vertices

    def complement_rows(self) -> list[int]:
        full = self.all_vertices
        return [full & ~r & ~(1 << v) for v, r in enumerate(self.rows)]

    def check_symmetric(self) -> bool:
        for u, r in enumerate(self.rows):
            if r >> u & 1:
                return False
            for v in bits(r):
                if not self.rows[v] >> u & 1:
                    return False
        return True

    @cached_property
    def fingerprint(self) -> str:
        return _fingerprint(self.rows)

    def _dimacs_lines(self, comment: str) -> Iterator[str]:
        if comment:
            yield from ("c " + ln + "\n" for ln in comment.splitlines())
        yield "p edge %d %d\n" % (self.n, self.edge_count())
        yield from ("e %d %d\n" % (u + 1, v + 1) for u, v in self.edges())

    def to_dimacs(self, comment: str = "") -> str:
        return "".join(self._dimacs_lines(comment))

    def write_dimacs(self, path, comment: str = "") -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.writelines(self._dimacs_lines(comment))


def _fingerprint(rows: Sequence[int]) -> str:
    n = len(rows)
    nbytes = (n + 7) // 8
    h = hashlib.sha256(b"opposition-graph\n%d\n" % n)
    for r in rows:
        h.update(r.to_bytes(nbytes, "little"))
    return "sha256:" + h.hexdigest()


class DimacsError(ValueError):
    pass


def parse_dimacs(text: str, name: str = "") -> OppositionGraph:
    n = None
    rows: list[int] = []
    declared_m = 0
    seen = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsError("line %d: bad problem line %r" % (lineno, raw))
            n, declared_m = int(parts[2]), int(parts[3])
            rows = [0] * n
        elif parts[0] == "e":
            if n is None:
                raise DimacsError("line %d: edge before problem line" % lineno)
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise DimacsError("line %d: bad edge %r" % (lineno, raw))
            if not rows[u] >> v & 1:
                seen += 1
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        else:
            raise DimacsError("line %d: unknown record %r" % (lineno, raw))
    if n is None:
        raise DimacsError("missing problem line")
    if seen != declared_m:
        raise DimacsError("header declares %d edges, found %d" % (declared_m, seen))
    return OppositionGraph(tuple(rows), name=name)


def read_dimacs(path) -> OppositionGraph:
    return parse_dimacs(Path(path).read_text(encoding="utf-8"), name=Path(path).stem)
