"""Row reduction over a FieldTable.  Vectors are tuples of element codes."""
from __future__ import annotations

import itertools

from .galois import FieldTable


def rref(rows, F: FieldTable) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon form with zero rows dropped."""
    m = [list(r) for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    out_row = 0
    for col in range(ncols):
        piv = next((r for r in range(out_row, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[out_row], m[piv] = m[piv], m[out_row]
        inv = F.inv(m[out_row][col])
        m[out_row] = [F.mul(inv, x) for x in m[out_row]]
        for r in range(len(m)):
            if r != out_row and m[r][col]:
                c = m[r][col]
                m[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(m[r], m[out_row])]
        out_row += 1
        if out_row == len(m):
            break
    return tuple(tuple(r) for r in m[:out_row])


def rank(rows, F: FieldTable) -> int:
    return len(rref(rows, F))


def normalize(v, F: FieldTable) -> tuple[int, ...]:
    """Scale a nonzero vector so its first nonzero entry is 1."""
    lead = next(x for x in v if x)
    inv = F.inv(lead)
    return tuple(F.mul(inv, x) for x in v)


def nullspace(rows, F: FieldTable, ncols: int) -> tuple[tuple[int, ...], ...]:
    """Basis (in RREF) of {x : r.x = 0 for every row r}."""
    R = rref(rows, F)
    pivots = [next(i for i, x in enumerate(r) if x) for r in R]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, pc in zip(R, pivots):
            v[pc] = F.neg(r[f])
        basis.append(v)
    return rref(basis, F)


def span_points(basis, F: FieldTable):
    """All normalized nonzero vectors of the span of basis (deterministic order)."""
    seen = set()
    out = []
    for coeffs in itertools.product(range(F.q), repeat=len(basis)):
        if not any(coeffs):
            continue
        v = [0] * len(basis[0])
        for c, row in zip(coeffs, basis):
            if c:
                v = [F.add(x, F.mul(c, y)) for x, y in zip(v, row)]
        pt = normalize(v, F)
        if pt not in seen:
            seen.add(pt)
            out.append(pt)
    return out


def rref_matrices(k: int, ncols: int, F: FieldTable):
    """Every k x ncols matrix in reduced row echelon form of rank k.

    Order: pivot column tuples lexicographically, then free entries in
    row-major order with the last entry varying fastest.
    """
    for pivots in itertools.combinations(range(ncols), k):
        slots = [
            (r, c)
            for r in range(k)
            for c in range(pivots[r] + 1, ncols)
            if c not in pivots
        ]
        for vals in itertools.product(range(F.q), repeat=len(slots)):
            m = [[0] * ncols for _ in range(k)]
            for r, pc in enumerate(pivots):
                m[r][pc] = 1
            for (r, c), x in zip(slots, vals):
                m[r][c] = x
            yield tuple(tuple(r) for r in m)
