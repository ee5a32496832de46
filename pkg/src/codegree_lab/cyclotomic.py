"""Elements of Z[zeta_e] stored as multiplicity vectors over the exponents mod e.

A value is kept in the group ring Z[Z_e] (no reduction by cyclotomic
relations), so distinct vectors may denote the same algebraic number.
Equality and zero tests therefore go through the remainder modulo the
e-th cyclotomic polynomial.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    """a / b for monic b, asserting a zero remainder."""
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first: (x^n - 1) / prod_{d | n, d < n} Phi_d."""
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in _divisors(n)[:-1]:
        den = _poly_mul(den, list(cyclotomic_poly(d)))
    return tuple(_poly_divexact(num, den))


@lru_cache(maxsize=None)
def reduction_matrix(e: int) -> np.ndarray:
    """Row k holds the coefficients of x^k mod Phi_e (shape e x phi(e))."""
    phi = cyclotomic_poly(e)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(e):
        rows.append(list(cur))
        # multiply by x, then eliminate x^deg using the monic Phi_e
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    if max(abs(v) for row in rows for v in row) > 1 << 20:
        return np.array(rows, dtype=object)
    return np.array(rows, dtype=np.int64)


def reduce_mod_phi(dense: np.ndarray, e: int) -> np.ndarray:
    """Map group-ring vectors (last axis of length e) to coefficient vectors mod Phi_e."""
    R = reduction_matrix(e)
    dense = np.asarray(dense)
    bound = int(np.abs(dense).max()) if dense.size else 0
    if R.dtype == object or bound * max(1, int(np.abs(R).max(initial=0))) * e >= 1 << 62:
        return np.asarray(dense, dtype=object) @ np.asarray(R, dtype=object)
    return dense.astype(np.int64) @ R


def is_zero_dense(dense: np.ndarray, e: int) -> np.ndarray:
    """Elementwise zero test over the leading axes."""
    return ~np.asarray(reduce_mod_phi(dense, e) != 0).any(axis=-1)


@dataclass(frozen=True)
class CyclotomicValue:
    """sum_k m_k zeta_e^k with the nonzero (k, m_k) pairs sorted by k."""

    e: int
    terms: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, e: int, d: dict[int, int]) -> "CyclotomicValue":
        acc: dict[int, int] = {}
        for k, m in d.items():
            k = int(k) % e
            acc[k] = acc.get(k, 0) + int(m)
        return cls(e, tuple(sorted((k, m) for k, m in acc.items() if m)))

    @classmethod
    def from_dense(cls, v) -> "CyclotomicValue":
        v = np.asarray(v)
        return cls(len(v), tuple((int(k), int(v[k])) for k in np.nonzero(v)[0]))

    @classmethod
    def integer(cls, e: int, n: int) -> "CyclotomicValue":
        return cls.from_dict(e, {0: n})

    def dense(self) -> np.ndarray:
        out = np.zeros(self.e, dtype=np.int64)
        for k, m in self.terms:
            out[k] = m
        return out

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def conj(self) -> "CyclotomicValue":
        return CyclotomicValue.from_dict(self.e, {-k: m for k, m in self.terms})

    def __add__(self, other: "CyclotomicValue") -> "CyclotomicValue":
        self._check(other)
        d = self.as_dict()
        for k, m in other.terms:
            d[k] = d.get(k, 0) + m
        return CyclotomicValue.from_dict(self.e, d)

    def __neg__(self) -> "CyclotomicValue":
        return CyclotomicValue(self.e, tuple((k, -m) for k, m in self.terms))

    def __sub__(self, other: "CyclotomicValue") -> "CyclotomicValue":
        return self + (-other)

    def __mul__(self, other) -> "CyclotomicValue":
        if isinstance(other, int):
            return CyclotomicValue.from_dict(self.e, {k: m * other for k, m in self.terms})
        self._check(other)
        d: dict[int, int] = {}
        for k1, m1 in self.terms:
            for k2, m2 in other.terms:
                k = (k1 + k2) % self.e
                d[k] = d.get(k, 0) + m1 * m2
        return CyclotomicValue.from_dict(self.e, d)

    __rmul__ = __mul__

    def _check(self, other: "CyclotomicValue") -> None:
        if other.e != self.e:
            raise ValueError(f"conductors differ: {self.e} vs {other.e}")

    def multiplicity_sum(self) -> int:
        return sum(m for _, m in self.terms)

    def is_zero(self) -> bool:
        return bool(is_zero_dense(self.dense(), self.e))

    def equals(self, other: "CyclotomicValue") -> bool:
        """Equality as algebraic numbers."""
        return (self - other).is_zero()

    def rational_value(self) -> int | None:
        """The integer this value equals, or None if it is not rational."""
        red = reduce_mod_phi(self.dense(), self.e)
        if np.any(np.asarray(red[1:]) != 0):
            return None
        return int(red[0])

    def to_complex(self) -> complex:
        return sum(m * cmath.exp(2j * cmath.pi * k / self.e) for k, m in self.terms)

    def __str__(self) -> str:
        n = self.rational_value()
        if n is not None:
            return str(n)
        parts = []
        for k, m in self.terms:
            term = "1" if k == 0 else f"z{self.e}^{k}"
            parts.append(term if m == 1 else f"{m}*{term}")
        return " + ".join(parts)
