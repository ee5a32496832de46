"""Exact arithmetic in GF(2^k) (polynomial basis) and in prime fields GF(l).

Binary field elements are plain ints whose bits are the coordinates in the
polynomial basis 1, x, ..., x^(k-1).  The context object carries the
log/exp tables, so the hot paths in the constructors can work on raw ints
or numpy arrays; :class:`BinaryFieldElement` is the checked value type for
everything else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ConstructionError

# One irreducible polynomial per degree, bit i = coefficient of x^i.
DEFAULT_MODULI: dict[int, int] = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}

PRIME_SEARCH_CAP = 1 << 31


# --- GF(2)[x] helpers -------------------------------------------------------

def poly_degree(f: int) -> int:
    return f.bit_length() - 1


def poly_mod(a: int, f: int) -> int:
    df = poly_degree(f)
    while a and poly_degree(a) >= df:
        a ^= f << (poly_degree(a) - df)
    return a


def poly_mulmod(a: int, b: int, f: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> poly_degree(f) & 1:
            a ^= f
    return r


def poly_str(f: int) -> str:
    terms = []
    for i in range(poly_degree(f), -1, -1):
        if f >> i & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return "+".join(terms) if terms else "0"


def smallest_factor(f: int) -> int | None:
    """Smallest-degree proper factor of ``f`` over GF(2), by exhaustive trial division."""
    d = poly_degree(f)
    for deg in range(1, d // 2 + 1):
        for g in range(1 << deg, 1 << (deg + 1)):
            if poly_mod(f, g) == 0:
                return g
    return None


# --- GF(2^k) -----------------------------------------------------------------

class BinaryField:
    """The field GF(2^k) = GF(2)[x]/(modulus), 1 <= k <= 16."""

    def __init__(self, k: int, modulus: Union[int, str] = "default"):
        if not 1 <= k <= 16:
            raise ConstructionError(f"extension degree must be in 1..16, got {k}")
        if modulus == "default":
            modulus = DEFAULT_MODULI[k]
        modulus = int(modulus)
        if poly_degree(modulus) != k:
            raise ConstructionError(
                f"modulus {poly_str(modulus)} has degree {poly_degree(modulus)}, expected {k}"
            )
        factor = smallest_factor(modulus)
        if factor is not None:
            raise ConstructionError(
                f"modulus {poly_str(modulus)} is reducible: divisible by {poly_str(factor)}"
            )
        self.k = k
        self.modulus = modulus
        self.order = 1 << k
        self.mult_order = self.order - 1

        n = self.mult_order
        # brute-force power table of every candidate until a primitive one turns up
        self.generator = None
        for g in range(1, self.order):
            exp = [1] * n
            x = 1
            for i in range(1, n):
                x = poly_mulmod(x, g, modulus)
                if x == 1:
                    break
                exp[i] = x
            else:
                if poly_mulmod(x, g, modulus) == 1:
                    self.generator = g
                    break
        if self.generator is None:  # pragma: no cover - impossible for an irreducible modulus
            raise ConstructionError("no primitive element found")
        self.exp = np.array(exp + exp, dtype=np.int64)
        self.log = np.full(self.order, -1, dtype=np.int64)
        self.log[self.exp[:n]] = np.arange(n)
        self._exp = [int(v) for v in self.exp]
        self._log = [int(v) for v in self.log]
        # whether the polynomial x itself generates the multiplicative group
        self.x_is_primitive = k == 1 or self.multiplicative_order(2 % self.order) == n

    def __repr__(self) -> str:
        return f"BinaryField(2^{self.k}, {poly_str(self.modulus)})"

    # raw int arithmetic
    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^k)")
        return self._exp[(-self._log[a]) % self.mult_order]

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % self.mult_order]

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        return self.mult_order // math.gcd(self._log[a], self.mult_order)

    def frobenius(self, a: int, j: int) -> int:
        """a^(2^j)."""
        return self.pow(a, 1 << (j % self.k))

    def abs_trace(self, a: int) -> int:
        """Absolute trace to GF(2), a value in {0, 1}."""
        t = 0
        x = a
        for _ in range(self.k):
            t ^= x
            x = self.mul(x, x)
        return t

    def subfield_trace(self, a: int, m: int) -> int:
        """Trace of an element of the subfield GF(2^m) down to GF(2)."""
        if self.k % m:
            raise ValueError(f"{m} does not divide {self.k}")
        if self.frobenius(a, m) != a:
            raise ValueError("element does not lie in the subfield")
        t = 0
        x = a
        for _ in range(m):
            t ^= x
            x = self.mul(x, x)
        return t

    def norm_to_subfield(self, a: int, m: int) -> int:
        """Norm GF(2^k) -> GF(2^m): a^((2^k-1)/(2^m-1))."""
        if self.k % m:
            raise ValueError(f"{m} does not divide {self.k}")
        return self.pow(a, self.mult_order // ((1 << m) - 1))

    # vectorised arithmetic for table construction
    def mul_array(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[(self.log[a] + self.log[b]) % self.mult_order]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_array(self, a, n: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = self.exp[(self.log[a] * n) % self.mult_order]
        return np.where(a == 0, 1 if n == 0 else 0, out)

    def element(self, value: int) -> "BinaryFieldElement":
        if not 0 <= value < self.order:
            raise ValueError(f"{value} is not a valid element of GF(2^{self.k})")
        return BinaryFieldElement(self, value)

    def elements(self):
        return [BinaryFieldElement(self, v) for v in range(self.order)]


def make_binary_field(k: int, modulus: Union[int, str] = "default") -> BinaryField:
    return BinaryField(k, modulus)


@dataclass(frozen=True)
class BinaryFieldElement:
    field: BinaryField
    value: int

    def _other(self, other) -> int:
        if isinstance(other, BinaryFieldElement):
            if other.field is not self.field:
                raise TypeError("operands belong to different fields")
            return other.value
        if isinstance(other, int) and other in (0, 1):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return BinaryFieldElement(self.field, self.value ^ v)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return BinaryFieldElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return BinaryFieldElement(self.field, self.field.mul(self.value, self.field.inv(v)))

    def __pow__(self, n: int):
        return BinaryFieldElement(self.field, self.field.pow(self.value, n))

    def __neg__(self):
        return self

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, BinaryFieldElement):
            if other.field is not self.field:
                raise TypeError("comparing elements of different fields")
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.field), self.value))

    def inverse(self) -> "BinaryFieldElement":
        return BinaryFieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, j: int) -> "BinaryFieldElement":
        return frobenius(self, j)

    def trace(self) -> int:
        return abs_trace(self)

    def __repr__(self) -> str:
        return f"GF(2^{self.field.k})[{poly_str(self.value) if self.value else '0'}]"


def frobenius(x: BinaryFieldElement, j: int) -> BinaryFieldElement:
    if not 0 <= j < x.field.k:
        raise ValueError(f"Frobenius exponent must lie in 0..{x.field.k - 1}")
    return BinaryFieldElement(x.field, x.field.frobenius(x.value, j))


def abs_trace(x: BinaryFieldElement) -> int:
    return x.field.abs_trace(x.value)


def norm_to_subfield(x: BinaryFieldElement, m: int) -> BinaryFieldElement:
    return BinaryFieldElement(x.field, x.field.norm_to_subfield(x.value, m))


# --- prime fields ------------------------------------------------------------

def is_prime(n: int) -> bool:
    """Deterministic trial division; fine for n < 2^31."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeField:
    """GF(p) together with a fixed element ``z`` of multiplicative order ``e``."""

    p: int
    e: int
    z: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ConstructionError(f"{self.p} is not prime")
        if (self.p - 1) % self.e:
            raise ConstructionError(f"{self.e} does not divide {self.p} - 1")
        if pow(self.z, self.e, self.p) != 1 or any(
            pow(self.z, self.e // q, self.p) == 1 for q in prime_factors(self.e)
        ):
            raise ConstructionError(f"{self.z} does not have order {self.e} mod {self.p}")

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)

    def root_powers(self) -> list[int]:
        """z^0, ..., z^(e-1)."""
        out = [1]
        for _ in range(self.e - 1):
            out.append(out[-1] * self.z % self.p)
        return out


def prime_field_with_root(e: int, lower_bound: int) -> PrimeField:
    """Smallest prime l = 1 (mod e) with l > lower_bound, plus the smallest z of order e."""
    if e < 1 or lower_bound < 2:
        raise ValueError("need e >= 1 and lower_bound >= 2")
    ell = ((lower_bound - 1) // e + 1) * e + 1
    while not is_prime(ell):
        ell += e
        if ell > PRIME_SEARCH_CAP:
            raise ConstructionError(f"no prime = 1 mod {e} below 2^31")
    qs = prime_factors(e)
    for z in range(1, ell):
        if pow(z, e, ell) == 1 and all(pow(z, e // q, ell) != 1 for q in qs):
            return PrimeField(ell, e, z)
    raise ConstructionError(f"no element of order {e} mod {ell}")  # pragma: no cover
