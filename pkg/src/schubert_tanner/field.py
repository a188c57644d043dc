"""Finite fields GF(p^e) with dense lookup tables.

Elements are the integers 0..q-1. An element encodes the polynomial
c_0 + c_1 x + ... + c_{e-1} x^{e-1} as the base-p integer sum c_i p^i.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_ORDER = 256

# Conway polynomials for every prime power p^e <= 256 with e > 1, written
# as base-p integers (leading coefficient included). Prime fields use the
# degree-one modulus x, encoded as p.
MODULI = {
    (2, 2): 0b111,                  # x^2 + x + 1
    (2, 3): 0b1011,                 # x^3 + x + 1
    (2, 4): 0b10011,                # x^4 + x + 1
    (2, 5): 0b100101,               # x^5 + x^2 + 1
    (2, 6): 0b1011011,              # x^6 + x^4 + x^3 + x + 1
    (2, 7): 0b10000011,             # x^7 + x + 1
    (2, 8): 0b100011101,            # x^8 + x^4 + x^3 + x^2 + 1
    (3, 2): 9 + 2 * 3 + 2,          # x^2 + 2x + 2
    (3, 3): 27 + 2 * 3 + 1,         # x^3 + 2x + 1
    (3, 4): 81 + 2 * 27 + 2,        # x^4 + 2x^3 + 2
    (3, 5): 243 + 2 * 3 + 1,        # x^5 + 2x + 1
    (5, 2): 25 + 4 * 5 + 2,         # x^2 + 4x + 2
    (5, 3): 125 + 3 * 5 + 3,        # x^3 + 3x + 3
    (7, 2): 49 + 6 * 7 + 3,         # x^2 + 6x + 3
    (11, 2): 121 + 7 * 11 + 2,      # x^2 + 7x + 2
    (13, 2): 169 + 12 * 13 + 2,     # x^2 + 12x + 2
}


class FieldError(ValueError):
    pass


class NotPrimeError(FieldError):
    pass


class DegreeError(FieldError):
    pass


class FieldTooLargeError(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def int_to_poly(a: int, p: int, length: int | None = None) -> list[int]:
    """Base-p digits of a, lowest degree first."""
    digits = []
    while a:
        digits.append(a % p)
        a //= p
    if length is not None:
        digits += [0] * (length - len(digits))
    return digits


def poly_to_int(coeffs, p: int) -> int:
    return sum(int(c) * p**i for i, c in enumerate(coeffs))


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    num = list(num)
    while den and den[-1] == 0:
        den = den[:-1]
    inv_lead = pow(den[-1], p - 2, p)
    for shift in range(len(num) - len(den), -1, -1):
        coef = num[shift + len(den) - 1] * inv_lead % p
        if coef:
            for i, d in enumerate(den):
                num[shift + i] = (num[shift + i] - coef * d) % p
    return num[: len(den) - 1]


def is_irreducible(modulus: int, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = int_to_poly(modulus, p)
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            divisor = int_to_poly(low, p, d) + [1]
            if not any(_poly_mod(poly, divisor, p)):
                return False
    return True


class FieldSpec:
    """GF(q) with q = p^e, all arithmetic through precomputed tables."""

    def __init__(self, p: int, e: int, modulus: int):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        q = self.q
        mod_poly = int_to_poly(modulus, p)
        if len(mod_poly) != e + 1 or mod_poly[-1] != 1:
            raise FieldError(f"modulus {modulus} is not monic of degree {e} over GF({p})")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")

        digits = np.array([int_to_poly(a, p, e) for a in range(q)], dtype=np.int64)
        powers = p ** np.arange(e, dtype=np.int64)

        add = (digits[:, None, :] + digits[None, :, :]) % p
        self.add_table = add @ powers
        self.neg_table = ((-digits) % p) @ powers

        # a * x^j for j < e, then mul(a, b) = sum_j b_j (a x^j)
        shifted = np.empty((q, e, e), dtype=np.int64)
        cur = digits.copy()
        for j in range(e):
            shifted[:, j, :] = cur
            lead = cur[:, -1].copy()
            cur = np.roll(cur, 1, axis=1)
            cur[:, 0] = 0
            # reduce x^e = -(lower part of modulus)
            low = np.array(mod_poly[:e], dtype=np.int64)
            cur = (cur - lead[:, None] * low[None, :]) % p
        prod = np.einsum("bj,ajd->abd", digits, shifted) % p
        self.mul_table = prod @ powers

        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            hits = np.nonzero(self.mul_table[a] == 1)[0]
            inv[a] = hits[0]
        self.inv_table = inv
        for t in (self.add_table, self.mul_table, self.neg_table, self.inv_table):
            t.setflags(write=False)

    # scalar arithmetic

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.q)
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = 1
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    @property
    def elements(self) -> range:
        return range(self.q)

    # identity and serialization

    def __str__(self) -> str:
        return f"{self.p}^{self.e}/modulus={self.modulus}"

    def __repr__(self) -> str:
        return f"FieldSpec({self})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __reduce__(self):
        return (FieldSpec, (self.p, self.e, self.modulus))


@lru_cache(maxsize=None)
def build_field(p: int, e: int = 1) -> FieldSpec:
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if e < 1:
        raise DegreeError(f"extension degree must be >= 1, got {e}")
    if p**e > MAX_ORDER:
        raise FieldTooLargeError(f"GF({p}^{e}) exceeds the order cap {MAX_ORDER}")
    modulus = p if e == 1 else MODULI[(p, e)]
    return FieldSpec(p, e, modulus)


def field_of_order(q: int) -> FieldSpec:
    """GF(q) for a prime power q."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    else:
        raise NotPrimeError(f"{q} is not a prime power")
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise NotPrimeError(f"{q} is not a prime power")
    return build_field(p, e)


def parse_field(text: str) -> FieldSpec:
    """Inverse of str(FieldSpec): "p^e/modulus=<int>"."""
    try:
        head, mod = text.strip().split("/modulus=")
        p, e = (int(t) for t in head.split("^"))
        modulus = int(mod)
    except ValueError:
        raise FieldError(f"malformed field spec {text!r}") from None
    field = build_field(p, e)
    if field.modulus != modulus:
        return FieldSpec(p, e, modulus)
    return field
