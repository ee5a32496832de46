"""Complex character tables by the Dixon-Schneider method.

Class matrices are reduced modulo a prime l = 1 (mod exp G) with l > 2 sqrt|G|,
their common eigenvectors give the central characters mod l, and the values
are lifted to multiplicity vectors over the e-th roots of unity via the power
maps.  Every table is checked exactly (integer arithmetic in Z[zeta_e]) before
it is returned.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import modlinalg
from .cyclotomic import CyclotomicValue, is_zero_dense, reduce_mod_phi
from .errors import ConsistencyError
from .fields import PrimeField, prime_field_with_root
from .groups import ClassData, FiniteGroup


@dataclass
class ClassMatrix:
    i: int
    entries: np.ndarray  # entries[j, k] = #{(x, y) in C_i x C_j : xy = g_k}


def class_matrix(cd: ClassData, i: int, threads: int = 1, chunk: int = 1 << 20) -> ClassMatrix:
    group = cd.group
    r = cd.r
    xinv = group.inv(cd.members(i))
    reps = cd.representatives

    def column_block(ks: np.ndarray) -> np.ndarray:
        out = np.zeros((r, len(ks)), dtype=np.int64)
        for col, k in enumerate(ks):
            y = group.mul(xinv, np.full(len(xinv), reps[k]))
            out[:, col] = np.bincount(cd.class_of(y), minlength=r)
        return out

    per = max(1, chunk // max(1, len(xinv)))
    blocks = [np.arange(s, min(r, s + per)) for s in range(0, r, per)]
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(column_block, blocks))
    else:
        parts = [column_block(b) for b in blocks]
    return ClassMatrix(i, np.concatenate(parts, axis=1))


# --- splitting ---------------------------------------------------------------

@dataclass
class _Space:
    basis: np.ndarray  # (r, d), identity on the pivot rows
    pivots: list[int]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def _normalise(columns: np.ndarray, p: int) -> _Space:
    red, piv = modlinalg.rref(columns.T, p)
    return _Space(red.T.copy(), piv)


def _eigenvalues(a: np.ndarray, p: int, method: str) -> list[int]:
    if method == "charpoly":
        return modlinalg.poly_roots(modlinalg.charpoly(a, p), p)
    d = a.shape[0]
    eye = np.eye(d, dtype=np.int64)
    return [x for x in range(p) if modlinalg.rank((a - x * eye) % p, p) < d]


def _split(space: _Space, m: np.ndarray, p: int, method: str) -> list[_Space]:
    image = modlinalg.matmul(m, space.basis, p)
    a = image[space.pivots]
    if not np.array_equal(modlinalg.matmul(space.basis, a, p), image):
        raise ConsistencyError("subspace is not invariant under a class matrix")
    roots = _eigenvalues(a, p, method)
    if len(roots) == 1:
        return [space]
    d = space.dim
    eye = np.eye(d, dtype=np.int64)
    parts = []
    for lam in roots:
        ns = modlinalg.nullspace((a - lam * eye) % p, p)
        parts.append(_normalise(modlinalg.matmul(space.basis, ns.T, p), p))
    if sum(s.dim for s in parts) != d:
        raise ConsistencyError("class matrix is not diagonalisable mod l")
    return parts


def split_eigenspaces(matrices: Callable[[int], np.ndarray] | list, order: list[int], r: int,
                      ctx: PrimeField, method: str = "charpoly") -> tuple[np.ndarray, list[int]]:
    """Common 1-dimensional eigenspaces of the class matrices, taken in ``order``.

    ``matrices`` is a list or a callable i -> entries, so expensive class
    matrices are only built while some subspace is still unsplit.  Returns the
    eigenvectors (rows, coordinate 0 scaled to 1) and the classes consumed.
    """
    p = ctx.p
    get = matrices if callable(matrices) else (lambda i: matrices[i])
    spaces = [_Space(np.eye(r, dtype=np.int64), list(range(r)))]
    used = []
    for i in order:
        if all(s.dim == 1 for s in spaces):
            break
        m = np.asarray(get(i), dtype=np.int64) % p
        used.append(i)
        nxt = []
        for s in spaces:
            nxt.extend([s] if s.dim == 1 else _split(s, m, p, method))
        spaces = nxt
    if any(s.dim > 1 for s in spaces):
        raise ConsistencyError("eigenspace splitting stalled with every class matrix consumed")
    vecs = []
    for s in spaces:
        v = s.basis[:, 0]
        if v[0] == 0:
            raise ConsistencyError("central character vanishes on the identity class")
        vecs.append(v * pow(int(v[0]), -1, p) % p)
    return np.array(vecs, dtype=np.int64), used


def recover_degrees(eigvecs: np.ndarray, sizes, inverse_class, group_order: int, ctx: PrimeField) -> list[int]:
    p = ctx.p
    sizes = np.asarray(sizes, dtype=np.int64)
    inv_sizes = np.array([pow(int(s), -1, p) for s in sizes], dtype=np.int64)
    half = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    squares = half * half % p
    out = []
    for w in eigvecs:
        s = int(((w * w[inverse_class]) % p * inv_sizes).sum() % p)
        if s == 0:
            raise ConsistencyError("degree formula divides by zero")
        target = group_order % p * pow(s, -1, p) % p
        hits = half[squares == target]
        if len(hits) != 1 or group_order % int(hits[0]):
            raise ConsistencyError(f"no admissible degree for residue {target} mod {p}")
        out.append(int(hits[0]))
    return out


def lift_values(eigvec: np.ndarray, degree: int, sizes, element_orders, power_map, ctx: PrimeField) -> list[CyclotomicValue]:
    """Exact values of one character from its central character mod l."""
    p, e = ctx.p, ctx.e
    sizes = np.asarray(sizes, dtype=np.int64)
    inv_sizes = np.array([pow(int(s), -1, p) for s in sizes], dtype=np.int64)
    chi = degree * eigvec % p * inv_sizes % p
    zpow = np.array(ctx.root_powers(), dtype=np.int64)
    row = []
    for j, o in enumerate(np.asarray(element_orders).tolist()):
        step = e // o
        vals = chi[power_map[j, :o]]
        s = np.arange(o)
        # m_k = o^-1 sum_s chi(g^s) z_o^(-k s)
        dft = zpow[(-np.outer(s, s) * step) % e]
        m = (dft @ vals) % p * pow(o, -1, p) % p
        if (m > degree).any() or int(m.sum()) != degree:
            raise ConsistencyError(f"lifted multiplicities out of range at class {j}")
        row.append(CyclotomicValue(e, tuple((int(k) * step, int(m[k])) for k in np.nonzero(m)[0])))
    return row


# --- the table ---------------------------------------------------------------

@dataclass
class CharacterTable:
    group_order: int
    class_sizes: np.ndarray
    element_orders: np.ndarray
    power_map: np.ndarray
    inverse_class: np.ndarray
    exponent: int
    ell: int
    z: int
    characters: list[list[CyclotomicValue]]
    classes: ClassData | None = field(default=None, repr=False)
    name: str = ""

    @property
    def r(self) -> int:
        return len(self.class_sizes)

    @property
    def degrees(self) -> list[int]:
        return [row[0].multiplicity_sum() for row in self.characters]

    def dense(self) -> np.ndarray:
        """(characters, classes, e) multiplicity array."""
        out = np.zeros((len(self.characters), self.r, self.exponent), dtype=np.int64)
        for a, row in enumerate(self.characters):
            for j, v in enumerate(row):
                for k, m in v.terms:
                    out[a, j, k] = m
        return out

    def value(self, chi: int, j: int) -> CyclotomicValue:
        return self.characters[chi][j]

    def complex_table(self) -> np.ndarray:
        return np.array([[v.to_complex() for v in row] for row in self.characters])

    def verify(self) -> None:
        """Raise ConsistencyError unless every table invariant holds exactly."""
        verify_table(self)


def _class_blocks(tbl: CharacterTable, dense: np.ndarray):
    """Per class: the compact multiplicity block over Z_o and the stride e/o."""
    e = tbl.exponent
    for j, o in enumerate(tbl.element_orders.tolist()):
        step = e // o
        yield j, o, step, dense[:, j, ::step]


def row_orthogonality_sums(tbl: CharacterTable, dense: np.ndarray | None = None) -> np.ndarray:
    """S[a, b] = sum_j |C_j| chi_a(g_j) conj(chi_b(g_j)) in the group ring Z[Z_e]."""
    dense = tbl.dense() if dense is None else dense
    n, e = dense.shape[0], tbl.exponent
    out = np.zeros((n, n, e), dtype=np.int64)
    for j, o, step, x in _class_blocks(tbl, dense):
        size = int(tbl.class_sizes[j])
        for delta in range(o):
            out[:, :, delta * step] += size * (x @ np.roll(x, delta, axis=1).T)
    return out


def column_orthogonality_sums(tbl: CharacterTable, dense: np.ndarray | None = None) -> np.ndarray:
    """S[j, k] = sum_chi chi(g_j) conj(chi(g_k)) in Z[Z_e]."""
    dense = tbl.dense() if dense is None else dense
    r, e = tbl.r, tbl.exponent
    blocks = list(_class_blocks(tbl, dense))
    xs = np.concatenate([b[3] for b in blocks], axis=1)
    gram = xs.T @ xs
    cls = np.concatenate([np.full(o, j) for j, o, _, _ in blocks])
    expo = np.concatenate([np.arange(o) * step for _, o, step, _ in blocks])
    pair = cls[:, None] * r + cls[None, :]
    ex = (expo[:, None] - expo[None, :]) % e
    out = np.zeros(r * r * e, dtype=np.int64)
    np.add.at(out, (pair * e + ex).ravel(), gram.ravel())
    return out.reshape(r, r, e)


def verify_table(tbl: CharacterTable) -> None:
    n = tbl.group_order
    e = tbl.exponent
    r = tbl.r
    if len(tbl.characters) != r:
        raise ConsistencyError(f"{len(tbl.characters)} characters for {r} classes")
    degs = tbl.degrees
    if sum(d * d for d in degs) != n:
        raise ConsistencyError("sum of squared degrees differs from |G|")
    if any(n % d for d in degs):
        raise ConsistencyError("a degree does not divide |G|")
    if int(tbl.class_sizes.sum()) != n:
        raise ConsistencyError("class sizes do not sum to |G|")
    dense = tbl.dense()
    if (dense < 0).any() or not (dense.sum(axis=2) == np.array(degs)[:, None]).all():
        raise ConsistencyError("multiplicity vectors do not sum to the degree")

    one = np.zeros(e, dtype=np.int64)
    one[0] = 1
    rows = row_orthogonality_sums(tbl, dense)
    expected = np.eye(r, dtype=np.int64)[:, :, None] * n * one
    if not is_zero_dense(rows - expected, e).all():
        raise ConsistencyError("row orthogonality fails")
    cols = column_orthogonality_sums(tbl, dense)
    expected = np.diag(n // tbl.class_sizes)[:, :, None] * one
    if not is_zero_dense(cols - expected, e).all():
        raise ConsistencyError("column orthogonality fails")
    # chi(g^-1) = conj chi(g)
    conj = np.roll(dense[:, :, ::-1], 1, axis=2)
    if not is_zero_dense(dense[:, tbl.inverse_class, :] - conj, e).all():
        raise ConsistencyError("values at inverse classes are not conjugate")


def _sort_key(row: list[CyclotomicValue]):
    return (row[0].multiplicity_sum(), tuple(v.terms for v in row))


def character_table(group: FiniteGroup, threads: int = 1, method: str = "charpoly",
                    verify: bool = True) -> CharacterTable:
    cd = group.classes
    n = group.order
    r, e = cd.r, cd.exponent
    bound = math.isqrt(4 * n)
    if bound * bound < 4 * n:
        bound += 1
    ctx = prime_field_with_root(e, max(2, bound))
    modlinalg.check_width(r, ctx.p)

    cache: dict[int, np.ndarray] = {}

    def get(i: int) -> np.ndarray:
        if i not in cache:
            cache[i] = class_matrix(cd, i, threads=threads).entries
        return cache[i]

    order = sorted(range(1, r), key=lambda i: (int(cd.sizes[i]), i))
    if r == 1:
        eigvecs = np.ones((1, 1), dtype=np.int64)
    else:
        eigvecs, _ = split_eigenspaces(get, order, r, ctx, method)
    if len(eigvecs) != r:
        raise ConsistencyError(f"found {len(eigvecs)} central characters for {r} classes")
    degrees = recover_degrees(eigvecs, cd.sizes, cd.inverse_class, n, ctx)
    rows = [lift_values(w, d, cd.sizes, cd.element_orders, cd.power_map, ctx)
            for w, d in zip(eigvecs, degrees)]
    rows.sort(key=_sort_key)
    tbl = CharacterTable(n, cd.sizes.copy(), cd.element_orders.copy(), cd.power_map, cd.inverse_class,
                         e, ctx.p, ctx.z, rows, classes=cd, name=group.name)
    if verify:
        tbl.verify()
    return tbl


def restriction_norm(tbl: CharacterTable, chi: int, class_mask) -> CyclotomicValue:
    """sum over classes in the mask of |C_j| |chi(g_j)|^2, as an element of Z[Z_e]."""
    acc = CyclotomicValue(tbl.exponent, ())
    for j in np.nonzero(np.asarray(class_mask))[0]:
        v = tbl.characters[chi][j]
        acc = acc + (v * v.conj()) * int(tbl.class_sizes[j])
    return acc


def values_reduced(tbl: CharacterTable) -> np.ndarray:
    """All values as coefficient vectors modulo Phi_e."""
    return reduce_mod_phi(tbl.dense(), tbl.exponent)
