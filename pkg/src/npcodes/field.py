"""GF(2^mu) arithmetic through log/antilog tables.

Elements are polynomial-basis ints (bit i = coefficient of x^i) reduced
modulo a fixed primitive polynomial per extension degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Minimal-weight primitive polynomials, bit i = coefficient of x^i.
PRIMITIVE_POLYS = {
    2: 0b111,            # x^2 + x + 1
    3: 0b1011,           # x^3 + x + 1
    4: 0b10011,          # x^4 + x + 1
    5: 0b100101,         # x^5 + x^2 + 1
    6: 0b1000011,        # x^6 + x + 1
    7: 0b10000011,       # x^7 + x + 1
    8: 0b100011101,      # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,     # x^9 + x^4 + 1
    10: 0b10000001001,   # x^10 + x^3 + 1
}


def poly_str(p: int) -> str:
    terms = []
    for i in range(p.bit_length() - 1, -1, -1):
        if (p >> i) & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return " + ".join(terms) or "0"


class GF2m:
    def __init__(self, mu: int):
        if mu not in PRIMITIVE_POLYS:
            raise ValueError(f"no bundled primitive polynomial for degree {mu} (supported: 2..10)")
        self.mu = mu
        self.poly = PRIMITIVE_POLYS[mu]
        self.order = (1 << mu) - 1
        self.exp = [0] * (2 * self.order)
        self.log = [0] * (self.order + 1)
        x = 1
        for i in range(self.order):
            self.exp[i] = x
            self.log[x] = i
            x <<= 1
            if x >> mu:
                x ^= self.poly
        if x != 1:
            raise AssertionError(f"{poly_str(self.poly)} is not primitive")
        for i in range(self.order, 2 * self.order):
            self.exp[i] = self.exp[i - self.order]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^%d)" % self.mu)
        return self.exp[(self.order - self.log[a]) % self.order]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % self.order]

    def alpha_pow(self, e: int) -> int:
        return self.exp[e % self.order]

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self.mu, value)

    @property
    def alpha(self) -> "FieldElement":
        return FieldElement(self.mu, 2 if self.mu > 1 else 1)


@lru_cache(maxsize=None)
def field(mu: int) -> GF2m:
    return GF2m(mu)


@dataclass(frozen=True)
class FieldElement:
    mu: int
    value: int

    def __post_init__(self):
        if not 0 <= self.value < (1 << self.mu):
            raise ValueError(f"{self.value} is not an element of GF(2^{self.mu})")

    def _check(self, other: "FieldElement"):
        if other.mu != self.mu:
            raise ValueError(f"mixing GF(2^{self.mu}) and GF(2^{other.mu})")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.mu, self.value ^ other.value)

    __sub__ = __add__

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.mu, field(self.mu).mul(self.value, other.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.mu, field(self.mu).inv(self.value))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.mu, field(self.mu).pow(self.value, e))

    def is_zero(self) -> bool:
        return self.value == 0


def multiplicative_order(q: int, n: int) -> int:
    """Smallest mu >= 1 with q^mu = 1 (mod n)."""
    if n == 1:
        return 1
    mu, x = 1, q % n
    while x != 1:
        x = (x * q) % n
        mu += 1
        if mu > n:
            raise ValueError(f"{q} is not invertible mod {n}")
    return mu


# -- GF(2)[x] with int coefficients -----------------------------------

def gf2_poly_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def gf2_poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def minimal_polynomial(f: GF2m, root: int, coset) -> int:
    """Product of ``(x - root^j)`` over the conjugates, as a GF(2)[x] int.

    ``root`` is the field element whose powers (indexed by ``coset``) are
    the conjugates.  The coefficients must land in GF(2).
    """
    coeffs = [1]  # over GF(2^mu), low degree first
    for j in coset:
        r = f.pow(root, j)
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] ^= c
            nxt[i] ^= f.mul(c, r)
        coeffs = nxt
    out = 0
    for i, c in enumerate(coeffs):
        if c not in (0, 1):
            raise AssertionError("minimal polynomial has a coefficient outside GF(2)")
        out |= c << i
    return out
