import itertools

import pytest
from hypothesis import given, strategies as st

from flagkneser.galois import (
    NotPrimePower,
    Unsupported,
    field_create,
    prime_power,
    smallest_irreducible,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def poly_mod_gf2(a: int, m: int) -> int:
    """Reduce polynomial a modulo m over GF(2); bit i is the x^i coefficient."""
    while a.bit_length() >= m.bit_length():
        a ^= m << (a.bit_length() - m.bit_length())
    return a


def test_char_two_addition():
    assert field_create(2).add(1, 1) == 0


def test_gf4_x_squared():
    F = field_create(4)
    assert F.modulus == (1, 1, 1)
    x = 2  # code of the polynomial x
    # x*x = x^2 reduced by x^2+x+1 over GF(2)[x]
    expected = poly_mod_gf2(0b100, 0b111)
    assert expected == 0b11
    assert F.mul(x, x) == expected


def test_gf5_inverse():
    assert field_create(5).inv(2) == 3


def test_gf3_neg():
    assert field_create(3).neg(1) == 2


def test_gf4_x_cubed_by_repeated_mul():
    F = field_create(4)
    acc = 1
    for _ in range(3):
        acc = F.mul(acc, 2)
    assert acc == 1
    assert F.pow(2, 3) == 1


def test_gf9_inverses():
    F = field_create(9)
    for a in range(1, 9):
        assert F.mul(F.inv(a), a) == 1


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        field_create(7).inv(0)


@pytest.mark.parametrize("q", [1, 6, 10, 12, 15])
def test_not_prime_power(q):
    with pytest.raises(NotPrimePower):
        field_create(q)


def test_too_large():
    with pytest.raises(Unsupported):
        field_create(17)


def test_prime_power_decomposition():
    assert prime_power(16) == (2, 4)
    assert prime_power(9) == (3, 2)
    assert prime_power(13) == (13, 1)


def test_modulus_is_smallest_irreducible_gf8():
    # (1,0,0,1) = 1 + x^3 has root 1; 1 + x^2 + x^3 is the first irreducible
    assert smallest_irreducible(2, 3) == [1, 0, 1, 1]


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms_exhaustive(q):
    F = field_create(q)
    R = range(q)
    for a in R:
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, q - 1) == 1
    for a, b in itertools.product(R, R):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
    for a, b, c in itertools.product(R, R, R):
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("q", ORDERS)
def test_frobenius(q):
    F = field_create(q)
    for a, b in itertools.product(range(q), repeat=2):
        assert F.pow(F.add(a, b), F.p) == F.add(F.pow(a, F.p), F.pow(b, F.p))


@given(st.sampled_from(ORDERS), st.data())
def test_no_zero_divisors(q, data):
    F = field_create(q)
    a = data.draw(st.integers(1, q - 1))
    b = data.draw(st.integers(1, q - 1))
    assert F.mul(a, b) != 0
