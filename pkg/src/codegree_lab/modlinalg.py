"""Dense linear algebra over GF(p) on int64 numpy arrays.

All routines reduce after every product, so they are exact as long as
``n * p**2`` stays below 2^63; :func:`check_width` enforces that.
"""

from __future__ import annotations

import numpy as np

_INT64_MAX = (1 << 63) - 1


def check_width(n: int, p: int) -> None:
    if n * (p - 1) ** 2 >= _INT64_MAX:
        raise OverflowError(f"GF({p}) products of length {n} overflow int64")


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    check_width(a.shape[-1], p)
    return (a @ b) % p


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (matrix, pivot columns)."""
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: np.ndarray, p: int) -> int:
    return len(rref(m, p)[1])


def nullspace(m: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : m @ x = 0} as the rows of the returned array."""
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[1]
    red, pivots = rref(m, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, c in enumerate(pivots):
            basis[i, c] = (-red[r, f]) % p
    return basis


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    aug = np.concatenate([np.asarray(m, dtype=np.int64) % p, np.eye(n, dtype=np.int64)], axis=1)
    red, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return red[:, n:]


def charpoly(a: np.ndarray, p: int) -> np.ndarray:
    """Characteristic polynomial det(xI - a) mod p, coefficients lowest degree first.

    Reduces to upper Hessenberg form by elementary similarities and then runs
    the usual Hessenberg determinant recurrence.
    """
    h = np.array(a, dtype=np.int64) % p
    n = h.shape[0]
    for j in range(n - 2):
        nz = np.nonzero(h[j + 1:, j])[0]
        if nz.size == 0:
            continue
        piv = j + 1 + int(nz[0])
        if piv != j + 1:
            h[[j + 1, piv]] = h[[piv, j + 1]]
            h[:, [j + 1, piv]] = h[:, [piv, j + 1]]
        inv = pow(int(h[j + 1, j]), -1, p)
        for i in range(j + 2, n):
            f = int(h[i, j]) * inv % p
            if f:
                h[i] = (h[i] - f * h[j + 1]) % p
                h[:, j + 1] = (h[:, j + 1] + f * h[:, i]) % p
    # polys[m] = charpoly of the leading m x m block
    polys = [np.array([1], dtype=np.int64)]
    for m in range(1, n + 1):
        cur = np.zeros(m + 1, dtype=np.int64)
        cur[1:] = polys[m - 1]
        cur[:m] = (cur[:m] - h[m - 1, m - 1] * polys[m - 1]) % p
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = prod * int(h[i, i - 1]) % p
            if prod == 0:
                break
            coef = int(h[i - 1, m - 1]) * prod % p
            if coef:
                cur[:i] = (cur[:i] - coef * polys[i - 1]) % p
        polys.append(cur)
    return polys[n]


def poly_roots(coeffs: np.ndarray, p: int) -> list[int]:
    """All roots in GF(p) by evaluating at every field element."""
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in coeffs[::-1]:
        acc = (acc * xs + int(c)) % p
    return [int(v) for v in np.nonzero(acc == 0)[0]]


def _reduce(v: np.ndarray, basis: np.ndarray, pivots: list[int], p: int) -> np.ndarray:
    v = v % p
    for row, c in zip(basis, pivots):
        if v[c]:
            v = (v - v[c] * row) % p
    return v


def submodule_span(v: np.ndarray, mats: list[np.ndarray], p: int) -> np.ndarray:
    """Basis (rows, in RREF) of the smallest subspace containing v and stable under mats.

    Vectors are column vectors; ``mats`` act on the left.
    """
    basis, pivots = rref(np.asarray(v, dtype=np.int64).reshape(1, -1), p)
    frontier = [basis[0]]
    while frontier:
        new = []
        for w in frontier:
            for m in mats:
                img = m @ w % p
                if _reduce(img, basis, pivots, p).any():
                    basis, pivots = rref(np.vstack([basis, img]), p)
                    new.append(img)
        frontier = new
    return basis


def is_irreducible_module(mats: list[np.ndarray], p: int, n: int) -> tuple[bool, np.ndarray | None]:
    """Exhaustive spin-up test: every nonzero vector of GF(p)^n must generate the whole space.

    Returns (True, None) or (False, a vector spanning a proper submodule).
    """
    for code in range(1, p ** n):
        v = np.array([(code // p ** i) % p for i in range(n)], dtype=np.int64)
        if submodule_span(v, mats, p).shape[0] < n:
            return False, v
    return True, None
