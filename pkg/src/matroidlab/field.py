"""Exact GF(q) arithmetic through precomputed lookup tables.

Elements of GF(p^k) are the integers 0..q-1 read base p as coefficient
vectors of polynomials over GF(p), reduced modulo a fixed irreducible monic
polynomial.  The modulus is the lexicographically least irreducible monic
polynomial of degree k (least integer encoding), so tables, matrices and
point orderings built on top of them are stable across runs.

Tables are tiny (q is desk-scale) and every operation is a flat-list lookup,
which is what the elimination inner loops want.
"""

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .errors import NotPrimePower, SizeLimit

MAX_FIELD_ORDER = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factor_prime_power(q: int):
    """Return (p, k) with q = p^k, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
        p += 1
    return (q, 1)  # q itself prime


def is_prime_power(q: int) -> bool:
    return factor_prime_power(q) is not None


# -- polynomial helpers over GF(p), coefficients low degree first --------


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        shift = len(a) - 1 - dm
        coef = (a[-1] * inv_lead) % p
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divides(d, a, p):
    return not _poly_mod(a, d, p)


def _int_to_poly(x, p, k):
    coeffs = []
    for _ in range(k):
        coeffs.append(x % p)
        x //= p
    return coeffs


def _poly_to_int(coeffs, p):
    x = 0
    for c in reversed(coeffs):
        x = x * p + c
    return x


def _least_irreducible(p: int, k: int):
    """Lexicographically least monic irreducible polynomial of degree k."""
    for tail in range(p ** k):
        cand = _int_to_poly(tail, p, k) + [1]  # monic degree k
        if cand[0] == 0:
            continue  # divisible by x
        for d_deg in range(1, k // 2 + 1):
            for d_tail in range(p ** d_deg):
                div = _int_to_poly(d_tail, p, d_deg) + [1]
                if _poly_divides(div, cand, p):
                    break
            else:
                continue
            break
        else:
            return cand
    raise NotPrimePower(f"no irreducible polynomial found for p={p}, k={k}")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    """Arithmetic tables for GF(q); immutable and freely shareable."""

    q: int
    p: int
    k: int
    modulus: tuple  # coefficients, low degree first, monic
    add_flat: tuple = dc_field(repr=False)  # add_flat[a*q+b]
    mul_flat: tuple = dc_field(repr=False)
    neg: tuple = dc_field(repr=False)
    inv: tuple = dc_field(repr=False)  # inv[0] unused

    def add(self, a, b):
        return self.add_flat[a * self.q + b]

    def sub(self, a, b):
        return self.add_flat[a * self.q + self.neg[b]]

    def mul(self, a, b):
        return self.mul_flat[a * self.q + b]

    def invert(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv[a]

    def frob_power(self, a, times=1):
        """Apply the Frobenius map x -> x^p `times` times."""
        for _ in range(times):
            b = 1
            for _ in range(self.p):
                b = self.mul(b, a)
            a = b
        return a

    def subfield_elements(self, k0: int) -> frozenset:
        """Elements fixed by the k0-fold Frobenius, i.e. the copy of GF(p^k0)."""
        return frozenset(x for x in range(self.q) if self.frob_power(x, k0) == x)


def _build_tables(p, k, modulus):
    q = p ** k
    if k == 1:
        add = [(a + b) % p for a in range(q) for b in range(q)]
        mul = [(a * b) % p for a in range(q) for b in range(q)]
    else:
        polys = [_int_to_poly(x, p, k) for x in range(q)]
        add = []
        mul = []
        for a in range(q):
            pa = polys[a]
            for b in range(q):
                pb = polys[b]
                add.append(_poly_to_int([(x + y) % p for x, y in zip(pa, pb)], p))
                prod = _poly_mod(_poly_mul(pa, pb, p), modulus, p)
                mul.append(_poly_to_int(prod, p))
    neg = [0] * q
    for a in range(q):
        for b in range(q):
            if add[a * q + b] == 0:
                neg[a] = b
                break
    inv = [0] * q
    for a in range(1, q):
        for b in range(1, q):
            if mul[a * q + b] == 1:
                inv[a] = b
                break
    return tuple(add), tuple(mul), tuple(neg), tuple(inv)


@lru_cache(maxsize=None)
def field_make(q: int) -> FieldSpec:
    """Build GF(q) for a prime power q.

    Raises NotPrimePower for q < 2 or q with two distinct prime divisors,
    SizeLimit beyond MAX_FIELD_ORDER.  Deterministic: the modulus is fixed
    per (p, k), so repeated calls give identical tables.
    """
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    if q > MAX_FIELD_ORDER:
        raise SizeLimit(f"field order {q} exceeds the cap of {MAX_FIELD_ORDER}")
    pk = factor_prime_power(q)
    if pk is None:
        raise NotPrimePower(f"{q} is not a prime power")
    p, k = pk
    modulus = tuple(_least_irreducible(p, k)) if k > 1 else (0, 1)
    add, mul, neg, inv = _build_tables(p, k, modulus)
    return FieldSpec(q=q, p=p, k=k, modulus=modulus,
                     add_flat=add, mul_flat=mul, neg=neg, inv=inv)
