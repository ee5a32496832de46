"""Enumerable finite groups and the structural computations built on them.

Every backend encodes its elements as non-negative int64 keys below
``key_bound`` and multiplies whole numpy arrays of keys at once.  The rest
of the module (enumeration, conjugacy classes, cores, Fitting subgroup,
chief-factor test) is backend agnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import modlinalg
from .errors import ConsistencyError, ConstructionError, ResourceCapError, UnsupportedCaseError
from .fields import prime_factors

DEFAULT_CAP = 1 << 22
DENSE_KEY_LIMIT = 1 << 24


class KeyIndex:
    """Position lookup for a sorted array of keys."""

    def __init__(self, keys: np.ndarray, key_bound: int):
        self.keys = keys
        self.dense = None
        if key_bound <= DENSE_KEY_LIMIT:
            self.dense = np.full(key_bound, -1, dtype=np.int64)
            self.dense[keys] = np.arange(len(keys))

    def __call__(self, keys) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.int64)
        if self.dense is not None:
            return self.dense[keys]
        pos = np.searchsorted(self.keys, keys)
        pos = np.minimum(pos, len(self.keys) - 1)
        return np.where(self.keys[pos] == keys, pos, -1)


class FiniteGroup:
    """Base class; subclasses define ``mul`` and the attributes below."""

    name: str = "group"
    key_bound: int
    identity: int
    generators: list[int]
    cap: int = DEFAULT_CAP

    def mul(self, a, b) -> np.ndarray:
        raise NotImplementedError

    def inv(self, a) -> np.ndarray:
        # x^-1 = x^(o(x)-1); fine for the small backends that do not override it
        a = np.atleast_1d(np.asarray(a, dtype=np.int64))
        prev = np.full_like(a, self.identity)
        cur = a.copy()
        out = np.full_like(a, -1)
        for _ in range(self.key_bound + 1):
            done = (cur == self.identity) & (out < 0)
            out[done] = prev[done]
            if (out >= 0).all():
                return out
            prev = cur
            cur = self.mul(cur, a)
        raise ConsistencyError("element of unbounded order")

    def describe(self, key: int) -> str:
        return str(int(key))

    # cached structure
    @property
    def elements(self) -> np.ndarray:
        if getattr(self, "_elements", None) is None:
            self._elements = enumerate_group(self)
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def index_of(self, keys) -> np.ndarray:
        if getattr(self, "_index", None) is None:
            self._index = KeyIndex(self.elements, self.key_bound)
        return self._index(keys)

    @property
    def classes(self) -> "ClassData":
        if getattr(self, "_classes", None) is None:
            self._classes = conjugacy_classes(self)
        return self._classes

    def mul1(self, a: int, b: int) -> int:
        return int(self.mul(np.array([a]), np.array([b]))[0])

    def inv1(self, a: int) -> int:
        return int(self.inv(np.array([a]))[0])

    def power(self, a: int, n: int) -> int:
        out, base = self.identity, a
        if n < 0:
            base, n = self.inv1(a), -n
        while n:
            if n & 1:
                out = self.mul1(out, base)
            base = self.mul1(base, base)
            n >>= 1
        return out

    def conj(self, x, g) -> np.ndarray:
        """g^-1 x g, vectorised over x."""
        x = np.asarray(x, dtype=np.int64)
        g = np.asarray(g, dtype=np.int64)
        return self.mul(self.mul(self.inv(g), x), g)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


def _dense_or_none(key_bound: int):
    return np.zeros(key_bound, dtype=bool) if key_bound <= DENSE_KEY_LIMIT else None


def _closure(group: FiniteGroup, start: np.ndarray, gens: Sequence[int], limit: int | None,
             seen: np.ndarray | None = None) -> np.ndarray | None:
    """All products start * w for words w in gens; None if more than ``limit`` elements."""
    start = np.unique(np.asarray(start, dtype=np.int64))
    if seen is None:
        seen = _dense_or_none(group.key_bound)
    if seen is not None:
        seen[start] = True
    found = [start]
    total = len(start)
    frontier = start
    gens = np.asarray(list(gens), dtype=np.int64)
    while frontier.size and gens.size:
        cand = group.mul(np.repeat(frontier, len(gens)), np.tile(gens, len(frontier)))
        cand = np.unique(cand)
        if seen is not None:
            new = cand[~seen[cand]]
            seen[new] = True
        else:
            new = np.setdiff1d(cand, np.concatenate(found), assume_unique=True)
        total += len(new)
        if limit is not None and total > limit:
            return None
        found.append(new)
        frontier = new
    return np.sort(np.concatenate(found))


def enumerate_group(group: FiniteGroup) -> np.ndarray:
    """Sorted keys of every element; breadth-first closure of the generators."""
    out = _closure(group, np.array([group.identity]), group.generators, group.cap)
    if out is None:
        raise ResourceCapError(f"{group.name}: more than {group.cap} elements")
    return out


def generate_subgroup(group: FiniteGroup, gens: Iterable[int], limit: int | None = None,
                      return_gens: bool = False):
    """Sorted keys of <gens>, or None as soon as it exceeds ``limit`` elements.

    With ``return_gens`` the irredundant generators actually used are returned too.
    """
    members = np.array([group.identity], dtype=np.int64)
    mask = _dense_or_none(group.key_bound)
    if mask is not None:
        mask[group.identity] = True
    used: list[int] = []
    for g in gens:
        g = int(g)
        inside = mask[g] if mask is not None else bool(np.isin(g, members))
        if inside:
            continue
        used.append(g)
        members = _closure(group, members, used, limit, seen=mask)
        if members is None:
            return (None, used) if return_gens else None
    return (members, used) if return_gens else members


def element_orders(group: FiniteGroup, keys) -> np.ndarray:
    keys = np.atleast_1d(np.asarray(keys, dtype=np.int64))
    out = np.zeros(len(keys), dtype=np.int64)
    cur = keys.copy()
    s = 1
    while True:
        hit = (cur == group.identity) & (out == 0)
        out[hit] = s
        if (out > 0).all():
            return out
        cur = group.mul(cur, keys)
        s += 1
        if s > group.key_bound + 1:
            raise ConsistencyError("element of unbounded order")


# --- conjugacy classes -------------------------------------------------------

@dataclass
class ClassData:
    group: FiniteGroup
    representatives: np.ndarray
    sizes: np.ndarray
    element_orders: np.ndarray
    class_index: np.ndarray  # class of group.elements[i]
    power_map: np.ndarray  # (r, exponent)
    inverse_class: np.ndarray
    exponent: int
    _order: np.ndarray = field(repr=False)
    _ptr: np.ndarray = field(repr=False)

    @property
    def r(self) -> int:
        return len(self.representatives)

    def class_of(self, keys) -> np.ndarray:
        idx = self.group.index_of(keys)
        if (np.asarray(idx) < 0).any():
            raise ValueError("key is not an element of the group")
        return self.class_index[idx]

    def members(self, j: int) -> np.ndarray:
        return self.group.elements[self._order[self._ptr[j]:self._ptr[j + 1]]]


def conjugacy_classes(group: FiniteGroup) -> ClassData:
    elts = group.elements
    n = len(elts)
    rows, cols = [], []
    for g in group.generators:
        rows.append(np.arange(n))
        cols.append(group.index_of(group.conj(elts, np.full(n, g))))
    if rows:
        rows = np.concatenate(rows)
        cols = np.concatenate(cols)
    else:
        rows = cols = np.arange(n)
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    _, first = np.unique(labels, return_index=True)
    reps = elts[first]
    sizes = np.bincount(labels)
    orders = element_orders(group, reps)
    # identity first, then by (order, size, representative key)
    perm = sorted(range(len(reps)), key=lambda j: (reps[j] != group.identity, orders[j], sizes[j], reps[j]))
    relabel = np.empty(len(perm), dtype=np.int64)
    relabel[perm] = np.arange(len(perm))
    class_index = relabel[labels]
    reps, sizes, orders = reps[perm], sizes[perm], orders[perm]
    if reps[0] != group.identity or sizes[0] != 1:
        raise ConsistencyError("identity class misplaced")
    if sizes.sum() != n or any(n % s for s in sizes):
        raise ConsistencyError("class equation fails")

    exponent = reduce(math.lcm, (int(o) for o in orders), 1)
    order_ = np.argsort(class_index, kind="stable")
    ptr = np.concatenate([[0], np.cumsum(sizes)])

    power_map = np.zeros((len(reps), exponent), dtype=np.int64)
    cur = np.full(len(reps), group.identity, dtype=np.int64)
    for s in range(exponent):
        power_map[:, s] = class_index[group.index_of(cur)]
        cur = group.mul(cur, reps)
    inverse_class = class_index[group.index_of(group.inv(reps))]
    return ClassData(group, reps, sizes, orders, class_index, power_map, inverse_class,
                     exponent, order_, ptr)


# --- subgroups ---------------------------------------------------------------

@dataclass
class Subgroup:
    parent: FiniteGroup
    members: np.ndarray  # sorted keys
    generators: list[int]
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.members)

    def contains(self, keys) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.int64)
        pos = np.minimum(np.searchsorted(self.members, keys), len(self.members) - 1)
        return self.members[pos] == keys

    def is_normal(self) -> bool:
        for g in self.parent.generators:
            if not self.contains(self.parent.conj(self.members, np.full(self.order, g))).all():
                return False
        return True

    def __le__(self, other: "Subgroup") -> bool:
        return bool(other.contains(self.members).all())

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and np.array_equal(self.members, other.members)


def whole_group(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, group.elements, list(group.generators), group.name)


def subgroup_from_generators(group: FiniteGroup, gens: Iterable[int], name: str = "") -> Subgroup:
    members, used = generate_subgroup(group, gens, return_gens=True)
    return Subgroup(group, members, used, name)


def centralizer_in(sub: Subgroup, other: Subgroup) -> Subgroup:
    """Elements of ``sub`` commuting with every generator of ``other``."""
    g = sub.parent
    ok = np.ones(sub.order, dtype=bool)
    for x in other.generators:
        xx = np.full(sub.order, x)
        ok &= g.mul(sub.members, xx) == g.mul(xx, sub.members)
    return subgroup_from_generators(g, sub.members[ok])


def center(group: FiniteGroup) -> Subgroup:
    elts = group.elements
    ok = np.ones(len(elts), dtype=bool)
    for g in group.generators:
        gg = np.full(len(elts), g)
        ok &= group.mul(elts, gg) == group.mul(gg, elts)
    z = subgroup_from_generators(group, elts[ok], f"Z({group.name})")
    if z.order != int(ok.sum()):
        raise ConsistencyError("center is not a subgroup")
    return z


@dataclass
class CyclicityReport:
    cyclic: bool
    witness: int | None
    max_order: int


def is_cyclic(h: Subgroup) -> CyclicityReport:
    orders = element_orders(h.parent, h.members)
    j = int(np.argmax(orders))
    m = int(orders[j])
    if m == h.order:
        return CyclicityReport(True, int(h.members[j]), m)
    return CyclicityReport(False, None, m)


def _conjugation_orbit(group: FiniteGroup, s: np.ndarray) -> np.ndarray:
    s = np.unique(np.asarray(s, dtype=np.int64))
    seen = set(s.tolist())
    frontier = s
    while frontier.size:
        imgs = np.concatenate([group.conj(frontier, np.full(len(frontier), g)) for g in group.generators]) \
            if group.generators else np.array([], dtype=np.int64)
        new = [x for x in np.unique(imgs).tolist() if x not in seen]
        seen.update(new)
        frontier = np.array(new, dtype=np.int64)
    return np.array(sorted(seen), dtype=np.int64)


def normal_closure(group: FiniteGroup, s: Iterable[int], limit: int | None = None) -> Subgroup | None:
    """Smallest normal subgroup containing ``s`` (None if it exceeds ``limit``)."""
    orbit = _conjugation_orbit(group, np.array(list(s), dtype=np.int64))
    members, used = generate_subgroup(group, orbit, limit, return_gens=True)
    if members is None:
        return None
    return Subgroup(group, members, used)


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _is_power_of(n: int, p: int) -> bool:
    return _p_part(n, p) == n


def p_core(group: FiniteGroup, p: int) -> Subgroup:
    """Largest normal p-subgroup: join of the p-classes whose normal closure is a p-group."""
    cd = group.classes
    limit = _p_part(group.order, p)
    good: list[int] = []
    for j in range(1, cd.r):
        if not _is_power_of(int(cd.element_orders[j]), p):
            continue
        closure = generate_subgroup(group, cd.members(j), limit)
        if closure is not None and _is_power_of(len(closure), p):
            good.append(j)
    pool = np.concatenate([cd.members(j) for j in good]) if good else np.array([], dtype=np.int64)
    members, gens = generate_subgroup(group, pool, return_gens=True)
    core = Subgroup(group, members, gens, f"O_{p}({group.name})")
    if not _is_power_of(core.order, p) or not core.is_normal():
        raise ConsistencyError(f"O_{p} is not a normal {p}-subgroup")
    return core


def fitting_subgroup(group: FiniteGroup) -> Subgroup:
    cores = [p_core(group, p) for p in prime_factors(group.order)]
    pool = np.concatenate([c.members for c in cores]) if cores else np.array([group.identity])
    members, gens = generate_subgroup(group, pool, return_gens=True)
    fit = Subgroup(group, members, gens, f"F({group.name})")
    # direct product of its normal Sylow subgroups
    if fit.order != math.prod(c.order for c in cores) or not fit.is_normal():
        raise ConsistencyError("Fitting subgroup is not nilpotent and normal")
    return fit


def is_nilpotent(group: FiniteGroup) -> bool:
    return fitting_subgroup(group).order == group.order


def hall_coprime_check(group: FiniteGroup, f: Subgroup) -> bool:
    return math.gcd(f.order, group.order // f.order) == 1


def _quotient_coordinates(group: FiniteGroup, f: Subgroup, z: Subgroup):
    """Basis f_1..f_n of the elementary abelian p-group F/Z and a key -> coordinate map."""
    index = f.order // z.order
    ps = prime_factors(index)
    if len(ps) != 1:
        raise UnsupportedCaseError(f"|F/Z| = {index} is not a prime power")
    p = ps[0]
    n = round(math.log(index, p))
    coord = {int(k): 0 for k in z.members}
    basis: list[int] = []
    covered = np.array(z.members)
    while len(coord) < f.order:
        fresh = f.members[~np.isin(f.members, covered)]
        b = int(fresh[0])
        weight = p ** len(basis)
        layer, new = covered, []
        for c in range(1, p):
            layer = group.mul(layer, np.full(len(layer), b))
            for x, base in zip(layer.tolist(), covered.tolist()):
                if x in coord:
                    raise UnsupportedCaseError("F/Z is not elementary abelian")
                coord[x] = coord[base] + c * weight
                new.append(x)
        basis.append(b)
        covered = np.concatenate([covered, np.array(new, dtype=np.int64)])
    if len(basis) != n:
        raise UnsupportedCaseError("F/Z is not elementary abelian")
    # p-th powers and commutators of the basis must land in Z
    for b in basis:
        if not z.contains([group.power(b, p)])[0]:
            raise UnsupportedCaseError("F/Z is not elementary abelian")
        for c in basis:
            comm = group.mul1(group.mul1(group.inv1(b), group.inv1(c)), group.mul1(b, c))
            if not z.contains([comm])[0]:
                raise UnsupportedCaseError("F/Z is not abelian")
    return p, basis, coord


def quotient_action_matrices(group: FiniteGroup, f: Subgroup, z: Subgroup):
    """(p, matrices of the conjugation action of each generator of G on F/Z)."""
    p, basis, coord = _quotient_coordinates(group, f, z)
    n = len(basis)
    mats = []
    for g in group.generators:
        m = np.zeros((n, n), dtype=np.int64)
        imgs = group.conj(np.array(basis), np.full(n, g))
        for i, y in enumerate(imgs.tolist()):
            code = coord[y]
            m[:, i] = [(code // p ** t) % p for t in range(n)]
        mats.append(m)
    return p, mats


def is_chief_factor_above_center(group: FiniteGroup, f: Subgroup, z: Subgroup) -> bool:
    """Whether F/Z is a chief factor of G (elementary abelian case, exhaustive spin-up)."""
    if not z <= f or not f.is_normal() or not z.is_normal():
        raise UnsupportedCaseError("need normal subgroups Z <= F")
    if f.order == z.order:
        return False
    p, mats = quotient_action_matrices(group, f, z)
    n = mats[0].shape[0] if mats else round(math.log(f.order // z.order, p))
    if not mats:
        return n == 1
    ok, _ = modlinalg.is_irreducible_module(mats, p, n)
    return ok


@dataclass
class OrderSpectrum:
    orders: list[int]
    maximal_pi_sets: list[tuple[int, ...]]

    def has_order_divisible_by(self, n: int) -> bool:
        return any(o % n == 0 for o in self.orders)


def element_order_spectrum(group: FiniteGroup) -> OrderSpectrum:
    orders = sorted({int(o) for o in group.classes.element_orders})
    pis = {tuple(prime_factors(o)) for o in orders}
    maximal = sorted(s for s in pis if not any(set(s) < set(t) for t in pis))
    return OrderSpectrum(orders, maximal)


# --- backends ----------------------------------------------------------------

class CyclicGroup(FiniteGroup):
    def __init__(self, n: int):
        if n < 1:
            raise ConstructionError("cyclic group order must be positive")
        self.n = n
        self.name = f"C_{n}"
        self.key_bound = n
        self.identity = 0
        self.generators = [1 % n] if n > 1 else []

    @property
    def elements(self) -> np.ndarray:
        if self.n > self.cap:
            raise ResourceCapError(f"{self.name}: more than {self.cap} elements")
        return np.arange(self.n, dtype=np.int64)

    def mul(self, a, b):
        return (np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64)) % self.n

    def inv(self, a):
        return (-np.asarray(a, dtype=np.int64)) % self.n


class PermutationGroup(FiniteGroup):
    """Permutations of 0..degree-1; products compose left to right (first a, then b)."""

    def __init__(self, degree: int, gens: Sequence[Sequence[int]], name: str = "perm"):
        if degree > 15:
            raise UnsupportedCaseError("permutation keys support degree <= 15")
        self.degree = degree
        self.name = name
        self.key_bound = degree ** degree
        self._pow = degree ** np.arange(degree, dtype=np.int64)
        self.identity = self.encode(list(range(degree)))
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise ConstructionError(f"{g} is not a permutation of {degree} points")
        self.generators = [self.encode(g) for g in gens]

    def encode(self, perm: Sequence[int]) -> int:
        return int(np.dot(np.asarray(perm, dtype=np.int64), self._pow))

    def decode(self, keys) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.int64)
        return (keys[..., None] // self._pow) % self.degree

    def mul(self, a, b):
        pa, pb = self.decode(a), self.decode(b)
        pa, pb = np.broadcast_arrays(pa, pb)
        return np.take_along_axis(pb, pa, axis=-1) @ self._pow

    def inv(self, a):
        pa = self.decode(a)
        out = np.empty_like(pa)
        np.put_along_axis(out, pa, np.broadcast_to(np.arange(self.degree), pa.shape), axis=-1)
        return out @ self._pow

    def describe(self, key: int) -> str:
        return str(self.decode(key).tolist())


class MatrixGroup(FiniteGroup):
    """n x n matrices over GF(p) under matrix multiplication."""

    def __init__(self, p: int, n: int, gens: Sequence[Sequence[Sequence[int]]], name: str = "matrix"):
        if p ** (n * n) > DENSE_KEY_LIMIT:
            raise UnsupportedCaseError("matrix keys must fit the dense key table")
        self.p, self.n = p, n
        self.name = name
        self.key_bound = p ** (n * n)
        self._pow = p ** np.arange(n * n, dtype=np.int64)
        self.identity = self.encode(np.eye(n, dtype=np.int64))
        self.generators = [self.encode(g) for g in gens]

    def encode(self, m) -> int:
        return int(np.dot(np.asarray(m, dtype=np.int64).reshape(-1) % self.p, self._pow))

    def decode(self, keys) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.int64)
        return ((keys[..., None] // self._pow) % self.p).reshape(keys.shape + (self.n, self.n))

    def mul(self, a, b):
        prod = np.matmul(self.decode(a), self.decode(b)) % self.p
        return prod.reshape(prod.shape[:-2] + (-1,)) @ self._pow

    def describe(self, key: int) -> str:
        return str(self.decode(key).tolist())


class SemidirectProduct(FiniteGroup):
    """N x| H with (n1, h1)(n2, h2) = (n1 * act[h1](n2), h1 h2).

    ``action[i, j]`` is the index (in N.elements) of h_i n_j h_i^-1, with h_i
    and n_j taken in enumeration order.  Keys pack n_index | h_index << nbits.
    """

    def __init__(self, normal: FiniteGroup, acting: FiniteGroup, action, name: str | None = None,
                 check: bool = True):
        self.N, self.H = normal, acting
        self.action = np.asarray(action, dtype=np.int64)
        nn, nh = normal.order, acting.order
        if self.action.shape != (nh, nn):
            raise ConstructionError(f"action table must have shape ({nh}, {nn})")
        if nh > 4096:
            raise UnsupportedCaseError("acting group too large for a Cayley table")
        self.name = name or f"({normal.name}):({acting.name})"
        self.nbits = max(1, (nn - 1).bit_length())
        self.mask = (1 << self.nbits) - 1
        self.key_bound = nh << self.nbits
        helts = acting.elements
        self.h_mul = acting.index_of(acting.mul(np.repeat(helts, nh), np.tile(helts, nh))).reshape(nh, nh)
        self.h_inv = acting.index_of(acting.inv(helts))
        self.n_inv = normal.index_of(normal.inv(normal.elements))
        h_id = int(acting.index_of([acting.identity])[0])
        n_id = int(normal.index_of([normal.identity])[0])
        self.identity = n_id | (h_id << self.nbits)
        self.generators = [int(normal.index_of([g])[0]) | (h_id << self.nbits) for g in normal.generators]
        self.generators += [n_id | (int(acting.index_of([g])[0]) << self.nbits) for g in acting.generators]
        if check:
            self.check_action()

    def check_action(self, samples: int = 2000, seed: int = 0) -> None:
        act = self.action
        nn, nh = self.N.order, self.H.order
        if not (np.sort(act, axis=1) == np.arange(nn)).all():
            raise ConstructionError("action rows must be permutations of N")
        rng = np.random.default_rng(seed)
        a = rng.integers(0, nn, samples)
        b = rng.integers(0, nn, samples)
        h = rng.integers(0, nh, samples)
        ne = self.N.elements
        ab = self.N.index_of(self.N.mul(ne[a], ne[b]))
        lhs = act[h, ab]
        rhs = self.N.index_of(self.N.mul(ne[act[h, a]], ne[act[h, b]]))
        if not (lhs == rhs).all():
            raise ConstructionError("action is not by automorphisms")
        h2 = rng.integers(0, nh, samples)
        if not (act[self.h_mul[h, h2], a] == act[h, act[h2, a]]).all():
            raise ConstructionError("action is not a homomorphism")

    def split(self, keys):
        keys = np.asarray(keys, dtype=np.int64)
        return keys & self.mask, keys >> self.nbits

    def pack(self, n_idx, h_idx):
        return np.asarray(n_idx, dtype=np.int64) | (np.asarray(h_idx, dtype=np.int64) << self.nbits)

    def mul(self, a, b):
        n1, h1 = self.split(a)
        n2, h2 = self.split(b)
        ne = self.N.elements
        n = self.N.index_of(self.N.mul(ne[n1], ne[self.action[h1, n2]]))
        return self.pack(n, self.h_mul[h1, h2])

    def inv(self, a):
        n, h = self.split(a)
        hi = self.h_inv[h]
        return self.pack(self.action[hi, self.n_inv[n]], hi)

    def describe(self, key: int) -> str:
        n, h = self.split(key)
        return f"({self.N.describe(self.N.elements[n])}, {self.H.describe(self.H.elements[h])})"
