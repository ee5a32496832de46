"""Builders for the small corpus, the semilinear group T, the extraspecial group E
and the semidirect product G = E x| T of order 337920.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import modlinalg
from .errors import ConstructionError, DescriptorError
from .fields import BinaryField
from .groups import (
    CyclicGroup,
    FiniteGroup,
    MatrixGroup,
    PermutationGroup,
    SemidirectProduct,
    element_orders,
    generate_subgroup,
)

CORPUS_NAMES = ("trivial", "C_n", "D8", "Q8", "S3", "S4", "A4", "SL23", "extraspecial_p_small")


def build_corpus_group(name: str) -> FiniteGroup:
    if name == "trivial":
        g = CyclicGroup(1)
        g.name = "trivial"
        return g
    m = re.fullmatch(r"C_?(\d+)", name)
    if m:
        return CyclicGroup(int(m.group(1)))
    if name == "D8":
        return PermutationGroup(4, [(1, 2, 3, 0), (0, 3, 2, 1)], name="D8")
    if name == "Q8":
        return MatrixGroup(3, 2, [[[0, 2], [1, 0]], [[1, 1], [1, 2]]], name="Q8")
    if name == "S3":
        return PermutationGroup(3, [(1, 0, 2), (1, 2, 0)], name="S3")
    if name == "S4":
        return PermutationGroup(4, [(1, 0, 2, 3), (1, 2, 3, 0)], name="S4")
    if name == "A4":
        return PermutationGroup(4, [(1, 2, 0, 3), (1, 0, 3, 2)], name="A4")
    if name == "SL23":
        return MatrixGroup(3, 2, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]], name="SL23")
    if name == "extraspecial_p_small":
        x = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
        y = [[1, 0, 0], [0, 1, 1], [0, 0, 1]]
        return MatrixGroup(3, 3, [x, y], name="3^(1+2)")
    raise DescriptorError(f"unknown corpus group {name!r}")


# --- semilinear maps x -> a * x^(2^j) on GF(2^k) -----------------------------

class SemilinearGroup(FiniteGroup):
    """Subgroup of Gamma(2^k); key = log_g(a) + (2^k - 1) * j for the map x -> a x^(2^j)."""

    def __init__(self, field: BinaryField, gens: list[tuple[int, int]], name: str = "Gamma"):
        self.field = field
        self.n = field.mult_order
        self.k = field.k
        self.name = name
        self.key_bound = self.n * self.k
        self.identity = 0
        self._twopow = np.array([pow(2, j, self.n) for j in range(self.k)], dtype=np.int64)
        self.generators = [self.encode(i, j) for i, j in gens]

    def encode(self, log_a: int, j: int) -> int:
        return (log_a % self.n) + self.n * (j % self.k)

    def decode(self, keys):
        keys = np.asarray(keys, dtype=np.int64)
        return keys % self.n, keys // self.n

    def mul(self, a, b):
        i1, j1 = self.decode(a)
        i2, j2 = self.decode(b)
        return (i1 + self._twopow[j1] * i2) % self.n + self.n * ((j1 + j2) % self.k)

    def inv(self, a):
        i, j = self.decode(a)
        jj = (-j) % self.k
        return (-self._twopow[jj] * i) % self.n + self.n * jj

    def apply(self, key: int, x) -> np.ndarray:
        """Image of field elements x under the map with this key."""
        i, j = self.decode(key)
        a = int(self.field.exp[int(i)])
        return self.field.mul_array(a, self.field.pow_array(x, 1 << int(j)))

    def linear_table(self, key: int) -> np.ndarray:
        return self.apply(key, np.arange(self.field.order))

    def describe(self, key: int) -> str:
        i, j = self.decode(key)
        return f"x -> g^{int(i)} x^(2^{int(j)})"


def build_torus_T(field: BinaryField | None = None) -> SemilinearGroup:
    """T = <m_lambda, sigma> in Gamma(2^10): lambda = g^31 of order 33, sigma = x -> x^4."""
    field = field or BinaryField(10)
    if field.k != 10:
        raise ConstructionError("the torus construction lives in GF(2^10)")
    t = SemilinearGroup(field, [(31, 0), (0, 2)], name="T")
    m_lam, sigma = t.generators
    lhs = t.mul1(t.mul1(sigma, m_lam), t.inv1(sigma))
    if lhs != t.power(m_lam, 4):
        raise ConstructionError("sigma m_lambda sigma^-1 != m_lambda^4")
    lam = int(field.exp[31])
    if field.multiplicative_order(lam) != 33 or field.norm_to_subfield(lam, 5) != 1:
        raise ConstructionError("lambda is not an order-33 norm-one element")
    if t.order != 165:
        raise ConstructionError(f"|T| = {t.order}, expected 165")
    return t


# --- symplectic / quadratic data on V = GF(2^10) -----------------------------

def _bits(n: int, width: int) -> np.ndarray:
    return (np.arange(n)[:, None] >> np.arange(width)) & 1


@dataclass
class SymplecticData:
    """B(u,v) = Tr(u v^(2^m)), Q(u) = Tr_{GF(2^m)/GF(2)}(u^(2^m+1)) and a bilinear cocycle c."""

    field: BinaryField
    B: np.ndarray  # (q, q) uint8
    Q: np.ndarray  # (q,) uint8
    C: np.ndarray  # (k, k) matrix of c on the basis
    c: np.ndarray  # (q, q) uint8

    @property
    def dim(self) -> int:
        return self.field.k

    @property
    def q_zero_count(self) -> int:
        return int((self.Q == 0).sum())

    @property
    def form_type(self) -> str:
        m = self.dim // 2
        return "minus" if self.q_zero_count == 2 ** (2 * m - 1) - 2 ** (m - 1) else "plus"


def build_symplectic_data(field: BinaryField | None = None) -> SymplecticData:
    field = field or BinaryField(10)
    k = field.k
    if k % 2:
        raise ConstructionError("need an even extension degree")
    m = k // 2
    q = field.order
    xs = np.arange(q)
    tr = np.array([field.abs_trace(int(x)) for x in xs], dtype=np.uint8)
    conj = field.pow_array(xs, 1 << m)
    B = tr[field.mul_array(xs[:, None], conj[None, :])]
    norms = field.pow_array(xs, (1 << m) + 1)
    Q = np.array([field.subfield_trace(int(y), m) for y in norms], dtype=np.uint8)

    basis = 1 << np.arange(k)
    C = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        C[i, i] = Q[basis[i]]
        for j in range(i):
            C[i, j] = B[basis[i], basis[j]]
    bits = _bits(q, k)
    cv = ((bits @ C.T) % 2) @ (1 << np.arange(k))  # C v as an int, for every v
    c = (np.bitwise_count(xs[:, None] & cv[None, :]) % 2).astype(np.uint8)

    if B.diagonal().any():
        raise ConstructionError("B is not alternating")
    if (B[1:].max(axis=1) == 0).any():
        raise ConstructionError("B is degenerate")
    polar = Q[xs[:, None] ^ xs[None, :]] ^ Q[:, None] ^ Q[None, :]
    if not np.array_equal(polar, B):
        raise ConstructionError("Q does not polarise to B")
    if not np.array_equal(c ^ c.T, B) or not np.array_equal(c.diagonal(), Q):
        raise ConstructionError("cocycle c is inconsistent with B and Q")
    return SymplecticData(field, B, Q, C, c)


class ExtraspecialGroup(FiniteGroup):
    """Pairs (u, a) in V x GF(2) with (u,a)(v,b) = (u+v, a+b+c(u,v)); key = u | a << k."""

    def __init__(self, sym: SymplecticData, name: str = "E"):
        self.sym = sym
        self.k = sym.dim
        self.name = name
        self.key_bound = 2 << self.k
        self.identity = 0
        self.generators = [1 << i for i in range(self.k)]
        self._c = sym.c.astype(np.int64)
        self._q = sym.Q.astype(np.int64)
        self.vmask = (1 << self.k) - 1

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        u, v = a & self.vmask, b & self.vmask
        z = (a >> self.k) ^ (b >> self.k) ^ self._c[u, v]
        return (u ^ v) | (z << self.k)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        u = a & self.vmask
        return u | (((a >> self.k) ^ self._q[u]) << self.k)

    def describe(self, key: int) -> str:
        return f"({int(key) & self.vmask}, {int(key) >> self.k})"


def build_extraspecial_E(sym: SymplecticData) -> ExtraspecialGroup:
    return ExtraspecialGroup(sym)


# --- the action of T on E ----------------------------------------------------

def _automorphism(sym: SymplecticData, L: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Permutation of E's keys induced by (u, a) -> (Lu, a + d(u))."""
    k = sym.dim
    u = np.arange(1 << k)
    lo = L[u] | (d[u].astype(np.int64) << k)
    hi = L[u] | ((d[u].astype(np.int64) ^ 1) << k)
    return np.concatenate([lo, hi])


def _perm_order(perm: np.ndarray, limit: int = 10_000) -> int:
    ident = np.arange(len(perm))
    cur = perm
    for n in range(1, limit):
        if np.array_equal(cur, ident):
            return n
        cur = perm[cur]
    raise ConstructionError("automorphism of unbounded order")


def _perm_power(perm: np.ndarray, n: int) -> np.ndarray:
    out = np.arange(len(perm))
    base = perm
    while n:
        if n & 1:
            out = base[out]
        base = base[base]
        n >>= 1
    return out


def _lift_linear(sym: SymplecticData, L: np.ndarray) -> np.ndarray:
    """d with d(u+v)+d(u)+d(v) = c(Lu,Lv)+c(u,v), via d(u) = sum_{i>j} u_i u_j g(e_i, e_j)."""
    k = sym.dim
    basis = 1 << np.arange(k)
    g = (sym.c[L[basis][:, None], L[basis][None, :]] ^ sym.c[basis[:, None], basis[None, :]]).astype(np.int64)
    lower = np.tril(g, -1)
    bits = _bits(1 << k, k)
    d = (((bits @ lower) % 2) * bits).sum(axis=1) % 2
    xs = np.arange(1 << k)
    lhs = d[xs[:, None] ^ xs[None, :]] ^ d[:, None] ^ d[None, :]
    rhs = sym.c[L[:, None], L[None, :]] ^ sym.c
    if not np.array_equal(lhs, rhs):
        raise ConstructionError("lifted map is not an automorphism of E")
    return d.astype(np.uint8)


def _inner(sym: SymplecticData, w: int) -> np.ndarray:
    """Conjugation by (w, 0): the central automorphism with d = B(w, .)."""
    return _automorphism(sym, np.arange(1 << sym.dim), sym.B[w])


def _gf2_matrix(table: np.ndarray, k: int) -> np.ndarray:
    cols = table[1 << np.arange(k)]
    return ((cols[None, :] >> np.arange(k)[:, None]) & 1).astype(np.int64)


@dataclass
class ActionTable:
    T: SemilinearGroup
    sym: SymplecticData
    t_mul: np.ndarray  # (|T|, |T|) indices
    L: np.ndarray  # (|T|, q): L_t(u)
    d: np.ndarray  # (|T|, q) bits
    perms: np.ndarray  # (|T|, 2q): automorphism on E keys
    correction: int  # the w used to fix the sigma lift (0 if none was needed)


def lift_action(T: SemilinearGroup, sym: SymplecticData) -> ActionTable:
    q = sym.field.order
    lifts = []
    for s in T.generators:
        L = T.linear_table(s)
        if not np.array_equal(sym.Q[L], sym.Q) or not np.array_equal(sym.B[L[:, None], L[None, :]], sym.B):
            raise ConstructionError(f"{T.describe(s)} does not preserve Q and B")
        phi = _automorphism(sym, L, _lift_linear(sym, L))
        lifts.append(_fix_order(phi, int(element_orders(T, [s])[0])))

    m_lam, sigma = T.generators
    phi_lam, phi_sig = lifts
    target = _perm_power(phi_lam, 4)
    correction = None
    for w in range(q):
        cand = _fix_order(_inner(sym, w)[phi_sig], 5) if w else phi_sig
        inv = np.argsort(cand)
        if np.array_equal(cand[phi_lam[inv]], target):
            correction = w
            phi_sig = cand
            break
    if correction is None:
        raise ConstructionError("no central correction makes the sigma lift compatible")

    # tabulate phi_t along a breadth-first spanning tree of T, checking consistency
    nT = T.order
    telts = T.elements
    gidx = [int(T.index_of([g])[0]) for g in T.generators]
    t_mul = T.index_of(T.mul(np.repeat(telts, nT), np.tile(telts, nT))).reshape(nT, nT)
    perms = np.full((nT, 2 * q), -1, dtype=np.int64)
    ident = int(T.index_of([T.identity])[0])
    perms[ident] = np.arange(2 * q)
    frontier = [ident]
    gen_perms = [phi_lam, phi_sig]
    while frontier:
        nxt = []
        for t in frontier:
            for g, pg in zip(gidx, gen_perms):
                prod = t_mul[t, g]
                img = perms[t][pg]
                if perms[prod, 0] < 0:
                    perms[prod] = img
                    nxt.append(int(prod))
                elif not np.array_equal(perms[prod], img):
                    raise ConstructionError("lifted generators do not satisfy the relations of T")
        frontier = nxt
    if (perms < 0).any():
        raise ConstructionError("generators do not reach all of T")
    for h in range(nT):
        if not np.array_equal(perms[t_mul[h]], perms[h][perms]):
            raise ConstructionError("t -> phi_t is not a homomorphism")
    L = perms[:, :q] & (q - 1)
    d = (perms[:, :q] >> sym.dim).astype(np.uint8)
    if len({row.tobytes() for row in L}) != nT:
        raise ConstructionError("T does not act faithfully on V")
    for t in range(nT):
        if not np.array_equal(L[t], T.linear_table(int(telts[t]))):
            raise ConstructionError("lift does not cover the linear action")
    return ActionTable(T, sym, t_mul, L, d, perms, correction)


def _fix_order(phi: np.ndarray, linear_order: int) -> np.ndarray:
    """Power of phi with the same linear part and order exactly ``linear_order`` (odd)."""
    n = _perm_order(phi)
    two = n // linear_order
    if n % linear_order or two & (two - 1):
        raise ConstructionError(f"lift of order {n} over a linear map of order {linear_order}")
    if two == 1:
        return phi
    # e = 1 mod linear_order, e = 0 mod two
    e = next(e for e in range(0, n, two) if e % linear_order == 1)
    out = _perm_power(phi, e)
    if _perm_order(out) != linear_order:
        raise ConstructionError("order fixing failed")
    return out


def invariant_linear_functionals(action: ActionTable) -> np.ndarray:
    """Basis of functionals delta on V with delta(L_t v) = delta(v) for every generator t."""
    k = action.sym.dim
    rows = []
    for g in action.T.generators:
        t = int(action.T.index_of([g])[0])
        M = _gf2_matrix(action.L[t], k)
        rows.append((M - np.eye(k, dtype=np.int64)).T % 2)
    return modlinalg.nullspace(np.vstack(rows), 2)


def action_is_irreducible(action: ActionTable) -> bool:
    k = action.sym.dim
    mats = [_gf2_matrix(action.L[int(action.T.index_of([g])[0])], k) for g in action.T.generators]
    return modlinalg.is_irreducible_module(mats, 2, k)[0]


# --- G = E x| T --------------------------------------------------------------

class PaperGroup(SemidirectProduct):
    """E x| T; key = u | a << 10 | t << 11 with t the index of the T-element."""

    def __init__(self, action: ActionTable, E: ExtraspecialGroup):
        self.act = action
        self.E = E
        self.T = action.T
        super().__init__(E, action.T, action.perms, name="G", check=False)

    def triple(self, key: int) -> tuple[int, int, int]:
        key = int(key)
        return key & 1023, (key >> 10) & 1, key >> 11

    def from_triple(self, u: int, a: int, t: int) -> int:
        return u | (a << 10) | (t << 11)

    def mul_formula(self, a, b) -> np.ndarray:
        """(u,a,t)(v,b,s) = (u + L_t v, a + b + c(u, L_t v) + d_t(v), ts), written out directly."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        u, x, t = a & 1023, (a >> 10) & 1, a >> 11
        v, y, s = b & 1023, (b >> 10) & 1, b >> 11
        lv = self.act.L[t, v]
        z = x ^ y ^ self.act.sym.c[u, lv] ^ self.act.d[t, v]
        return (u ^ lv) | (z.astype(np.int64) << 10) | (self.act.t_mul[t, s] << 11)

    @cached_property
    def e_subgroup_keys(self) -> np.ndarray:
        ident_t = int(self.T.index_of([self.T.identity])[0])
        return np.arange(2048, dtype=np.int64) | (ident_t << 11)


def check_associativity(group: FiniteGroup, samples: int = 100_000, seed: int = 0) -> None:
    rng = np.random.default_rng(seed)
    elts = group.elements
    a, b, c = (elts[rng.integers(0, len(elts), samples)] for _ in range(3))
    if not np.array_equal(group.mul(group.mul(a, b), c), group.mul(a, group.mul(b, c))):
        raise ConstructionError(f"{group.name}: multiplication is not associative")
    gens = np.array(group.generators, dtype=np.int64)
    n = len(gens)
    a, b, c = (x.reshape(-1) for x in np.meshgrid(gens, gens, gens, indexing="ij"))
    if n and not np.array_equal(group.mul(group.mul(a, b), c), group.mul(a, group.mul(b, c))):
        raise ConstructionError(f"{group.name}: multiplication is not associative on generators")


def build_paper_G(field: BinaryField | None = None) -> PaperGroup:
    field = field or BinaryField(10)
    T = build_torus_T(field)
    sym = build_symplectic_data(field)
    E = build_extraspecial_E(sym)
    action = lift_action(T, sym)
    G = PaperGroup(action, E)
    if G.order != 337920:
        raise ConstructionError(f"|G| = {G.order}, expected 337920")
    check_associativity(G)
    return G


# --- generic semidirect products ---------------------------------------------

def action_from_generators(N: FiniteGroup, H: FiniteGroup, gen_images) -> np.ndarray:
    """Extend per-generator permutations of N.elements (by index) to a full action table."""
    nh = H.order
    helts = H.elements
    gidx = [int(H.index_of([g])[0]) for g in H.generators]
    if len(gen_images) != len(gidx):
        raise ConstructionError("need one permutation per generator of the acting group")
    gen_images = [np.asarray(p, dtype=np.int64) for p in gen_images]
    table = np.full((nh, N.order), -1, dtype=np.int64)
    ident = int(H.index_of([H.identity])[0])
    table[ident] = np.arange(N.order)
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g, pg in zip(gidx, gen_images):
                prod = int(H.index_of(H.mul([helts[h]], [helts[g]]))[0])
                img = table[h][pg]
                if table[prod, 0] < 0:
                    table[prod] = img
                    nxt.append(prod)
                elif not np.array_equal(table[prod], img):
                    raise ConstructionError("generator images do not define a homomorphism")
        frontier = nxt
    return table


def build_semidirect(N: FiniteGroup, H: FiniteGroup, action, name: str | None = None) -> SemidirectProduct:
    """``action[h][n]``: key of h n h^-1, for h and n in enumeration order."""
    action = np.asarray(action, dtype=np.int64)
    idx = N.index_of(action)
    if (idx < 0).any():
        raise ConstructionError("action images must be elements of N")
    return SemidirectProduct(N, H, idx, name=name)


def automorphism_power_action(N: CyclicGroup, H: CyclicGroup, multiplier: int) -> np.ndarray:
    """Action of C_m on C_n where the generator acts by x -> multiplier * x."""
    ne = N.elements
    rows = []
    for h in H.elements:
        rows.append((ne * pow(multiplier, int(h), N.n)) % N.n)
    return np.array(rows)


def subgroup_keys(group: FiniteGroup, gens) -> np.ndarray:
    return generate_subgroup(group, gens)
