"""Field table tests, cross-checked against a naive polynomial oracle."""

import pytest

from matroidlab.errors import NotPrimePower, SizeLimit
from matroidlab.field import (factor_prime_power, field_make, is_prime,
                              is_prime_power)

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


# -- independent oracle: polynomial arithmetic written from scratch ----------

def poly_mul_mod(a, b, modulus, p):
    """Multiply two coefficient lists over GF(p) and reduce mod `modulus`."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    deg = len(modulus) - 1
    while len(prod) > deg:
        lead = prod.pop()
        if lead:
            for i in range(deg):
                prod[-deg + i] = (prod[-deg + i] - lead * modulus[i]) % p
    while len(prod) < deg:
        prod.append(0)
    return prod


def encode(coeffs, p):
    x = 0
    for c in reversed(coeffs):
        x = x * p + c
    return x


def decode(x, p, k):
    out = []
    for _ in range(k):
        out.append(x % p)
        x //= p
    return out


def test_gf4_multiplication_against_poly_oracle():
    gf4 = field_make(4)
    assert gf4.modulus == (1, 1, 1)  # x^2 + x + 1
    for a in range(4):
        for b in range(4):
            expect = encode(poly_mul_mod(decode(a, 2, 2), decode(b, 2, 2),
                                         gf4.modulus, 2), 2)
            assert gf4.mul(a, b) == expect
    # 2 encodes x, 3 encodes x + 1, and x * x = x + 1 mod x^2 + x + 1
    assert gf4.mul(2, 2) == 3


def test_extension_tables_against_poly_oracle():
    for q in (8, 9, 16):
        spec = field_make(q)
        p, k = spec.p, spec.k
        for a in range(q):
            for b in range(q):
                expect = encode(poly_mul_mod(decode(a, p, k), decode(b, p, k),
                                             spec.modulus, p), p)
                assert spec.mul(a, b) == expect, (q, a, b)


def test_gf2_identities():
    gf2 = field_make(2)
    assert gf2.add(1, 1) == 0
    assert gf2.mul(1, 1) == 1


def test_gf5_inverse():
    assert field_make(5).invert(2) == 3


@pytest.mark.parametrize("q", [1, 6, 12, 18, 100])
def test_not_prime_power_rejected(q):
    with pytest.raises(NotPrimePower):
        field_make(q)


def test_order_cap():
    with pytest.raises(SizeLimit):
        field_make(257)


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustive(q):
    f = field_make(q)
    els = range(q)
    for a in els:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.mul(a, 0) == 0
        assert f.add(a, f.neg[a]) == 0
        if a:
            assert f.mul(a, f.inv[a]) == 1
        for b in els:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in els:
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@pytest.mark.parametrize("q", [4, 8, 9, 16])
def test_frobenius_is_additive(q):
    f = field_make(q)
    for a in range(q):
        for b in range(q):
            assert f.frob_power(f.add(a, b)) == f.add(f.frob_power(a), f.frob_power(b))


def test_field_make_reproducible():
    field_make.cache_clear()
    first = field_make(9)
    field_make.cache_clear()
    second = field_make(9)
    assert first == second


def test_subfield_elements():
    gf4 = field_make(4)
    assert gf4.subfield_elements(1) == frozenset({0, 1})
    gf16 = field_make(16)
    assert len(gf16.subfield_elements(2)) == 4
    assert gf16.subfield_elements(1) == frozenset({0, 1})


def test_prime_power_helpers():
    assert factor_prime_power(8) == (2, 3)
    assert factor_prime_power(9) == (3, 2)
    assert factor_prime_power(12) is None
    assert is_prime_power(49) and not is_prime_power(50)
    assert is_prime(2) and is_prime(97) and not is_prime(91)
