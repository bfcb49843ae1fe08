"""Finite fields GF(q), q = p^e <= 16, as full lookup tables.

Elements are integer codes 0..q-1.  A code is read as the base-p digit
vector of a polynomial over GF(p), lowest degree first, so code 0 is zero
and code 1 is one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

MAX_ORDER = 16


class NotPrimePower(ValueError):
    pass


class Unsupported(ValueError):
    pass


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(q)
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrimePower(q)
    return p, e


def _digits(code: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(code % p)
        code //= p
    return out


def _code(digits, p: int) -> int:
    return sum(d * p**i for i, d in enumerate(digits))


def _polymod(a: list[int], modulus: list[int], p: int) -> list[int]:
    """Reduce a (low-first coefficients) modulo a monic polynomial."""
    a = list(a)
    deg = len(modulus) - 1
    for i in range(len(a) - 1, deg - 1, -1):
        c = a[i] % p
        if c:
            for j in range(deg + 1):
                a[i - deg + j] = (a[i - deg + j] - c * modulus[j]) % p
    a = [c % p for c in a[:deg]]
    return a + [0] * (deg - len(a))


def _polymul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _is_irreducible(modulus: list[int], p: int) -> bool:
    # trial division by every monic polynomial of degree 1..deg//2
    deg = len(modulus) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not any(_polymod(modulus, divisor, p)):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree e over GF(p).

    Coefficients are compared low-degree-first; the returned list has length
    e+1 with a trailing 1.
    """
    for low in itertools.product(range(p), repeat=e):
        cand = list(low) + [1]
        if e == 1 or _is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True)
class FieldTable:
    q: int
    p: int
    e: int
    modulus: tuple[int, ...]
    add_table: tuple[tuple[int, ...], ...] = field(repr=False)
    mul_table: tuple[tuple[int, ...], ...] = field(repr=False)
    neg_table: tuple[int, ...] = field(repr=False)
    inv_table: tuple[int, ...] = field(repr=False)

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul_table[a][self.inv(b)]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul_table[result][base]
            base = self.mul_table[base][base]
            n >>= 1
        return result

    def dot(self, u, v) -> int:
        acc = 0
        for a, b in zip(u, v):
            acc = self.add_table[acc][self.mul_table[a][b]]
        return acc

    def conj(self, a: int) -> int:
        """Involution a -> a^sqrt(q); only defined for square q."""
        r = int(round(self.q**0.5))
        if r * r != self.q:
            raise Unsupported("conjugation needs a square order, got %d" % self.q)
        return self.pow(a, r)


# DivisionByZero in the error vocabulary is Python's ZeroDivisionError
DivisionByZero = ZeroDivisionError


@lru_cache(maxsize=None)
def field_create(q: int) -> FieldTable:
    p, e = prime_power(q)
    if q > MAX_ORDER:
        raise Unsupported("GF(%d) exceeds the supported range q <= %d" % (q, MAX_ORDER))
    modulus = smallest_irreducible(p, e)
    digits = [_digits(c, p, e) for c in range(q)]
    add = tuple(
        tuple(_code([(x + y) % p for x, y in zip(digits[a], digits[b])], p) for b in range(q))
        for a in range(q)
    )
    mul = tuple(
        tuple(_code(_polymod(_polymul(digits[a], digits[b], p), modulus, p), p) for b in range(q))
        for a in range(q)
    )
    neg = tuple(next(b for b in range(q) if add[a][b] == 0) for a in range(q))
    inv = (0,) + tuple(next(b for b in range(q) if mul[a][b] == 1) for a in range(1, q))
    return FieldTable(q, p, e, tuple(modulus), add, mul, neg, inv)
