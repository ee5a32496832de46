import math

import numpy as np
import pytest

from codegree_lab.constructors import (
    PaperGroup,
    action_from_generators,
    action_is_irreducible,
    automorphism_power_action,
    build_corpus_group,
    build_extraspecial_E,
    build_semidirect,
    build_symplectic_data,
    check_associativity,
    invariant_linear_functionals,
    lift_action,
)
from codegree_lab.errors import ConstructionError, DescriptorError
from codegree_lab.groups import (
    CyclicGroup,
    FiniteGroup,
    center,
    conjugacy_classes,
    element_order_spectrum,
    element_orders,
    is_cyclic,
    whole_group,
)


@pytest.fixture(scope="module")
def sym(gf1024):
    return build_symplectic_data(gf1024)


@pytest.fixture(scope="module")
def E(sym):
    return build_extraspecial_E(sym)


@pytest.fixture(scope="module")
def action(torus, sym):
    return lift_action(torus, sym)


def test_corpus_examples():
    assert build_corpus_group("C_1").order == 1
    assert build_corpus_group("trivial").order == 1
    assert [build_corpus_group(n).order for n in ("D8", "Q8", "A4", "SL23")] == [8, 8, 12, 24]
    with pytest.raises(DescriptorError):
        build_corpus_group("M11")


def test_torus(torus):
    assert torus.order == 165
    assert not is_cyclic(whole_group(torus)).cyclic
    assert element_order_spectrum(torus).orders == [1, 3, 5, 11, 15, 33]
    m_lam, sigma = torus.generators
    assert torus.mul1(torus.mul1(sigma, m_lam), torus.inv1(sigma)) == torus.power(m_lam, 4)


def test_torus_acts_as_semilinear_maps(torus):
    x = np.arange(1024)
    for a in torus.elements[:20].tolist():
        for b in torus.elements[::17].tolist():
            # mul(b, a) is b after a
            assert np.array_equal(torus.apply(torus.mul1(b, a), x), torus.apply(b, torus.apply(a, x)))


def test_symplectic_data(sym):
    q = 1024
    assert (np.diag(sym.B) == 0).all()
    assert sym.q_zero_count == 496
    assert sym.form_type == "minus"
    radical = [u for u in range(q) if not sym.B[u].any()]
    assert radical == [0]
    # polar form of Q is B, and c(u, v) + c(v, u) = B(u, v)
    u, v = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    assert ((sym.Q[u ^ v] ^ sym.Q[u] ^ sym.Q[v]) == sym.B).all()
    assert ((sym.c ^ sym.c.T) == sym.B).all()
    assert (np.diag(sym.c) == sym.Q).all()


def test_extraspecial(E, sym):
    assert E.order == 2048
    z = center(E)
    assert z.order == 2
    orders = element_orders(E, E.elements)
    assert (orders == 4).sum() == 1056
    assert set(orders.tolist()) == {1, 2, 4}
    sq = E.mul(E.elements, E.elements)
    u = E.elements & 1023
    assert np.array_equal(sq, sym.Q[u].astype(np.int64) << 10)
    # E' = Z(E): commutators land in the center and are not all trivial
    rng = np.random.default_rng(0)
    a, b = rng.integers(0, 2048, 4000), rng.integers(0, 2048, 4000)
    comm = E.mul(E.mul(E.inv(a), E.inv(b)), E.mul(a, b))
    assert set(comm.tolist()) == set(z.members.tolist())


def test_lift(action, torus):
    assert action.perms.shape == (165, 2048)
    assert len({row.tobytes() for row in action.L}) == 165
    t_mul = action.t_mul
    for h in range(165):
        assert np.array_equal(action.perms[t_mul[h]], action.perms[h][action.perms])
    assert invariant_linear_functionals(action).shape[0] == 0
    assert action_is_irreducible(action)
    assert action.correction == 286


def test_each_lift_is_an_automorphism(action, E):
    rng = np.random.default_rng(1)
    a, b = rng.integers(0, 2048, 3000), rng.integers(0, 2048, 3000)
    for t in range(0, 165, 7):
        p = action.perms[t]
        assert np.array_equal(p[E.mul(a, b)], E.mul(p[a], p[b]))


def test_paper_group(paper_group, paper_structure):
    G = paper_group
    F, Z = paper_structure
    assert G.order == 337920 == 2048 * 165
    assert F.order == 2048 and Z.order == 2
    assert np.array_equal(F.members, G.e_subgroup_keys)
    assert math.gcd(F.order, G.order // F.order) == 1
    # the explicit triple formula agrees with the semidirect multiplication
    rng = np.random.default_rng(2)
    a = G.elements[rng.integers(0, G.order, 20000)]
    b = G.elements[rng.integers(0, G.order, 20000)]
    assert np.array_equal(G.mul(a, b), G.mul_formula(a, b))
    # projection to T is a homomorphism onto T
    ta, tb = a >> 11, b >> 11
    assert np.array_equal(G.mul(a, b) >> 11, G.act.t_mul[ta, tb])
    assert G.triple(G.from_triple(5, 1, 7)) == (5, 1, 7)


def test_associativity_check_catches_a_bad_product():
    class Broken(FiniteGroup):
        name = "broken"
        key_bound = 3
        identity = 0
        generators = [1]

        def mul(self, a, b):
            return (np.asarray(a) - np.asarray(b)) % 3

        def inv(self, a):
            return np.asarray(a)

    g = Broken()
    g._elements = np.arange(3)
    with pytest.raises(ConstructionError):
        check_associativity(g, samples=200)


def _class_signature(g):
    cd = conjugacy_classes(g)
    return sorted(zip(cd.sizes.tolist(), cd.element_orders.tolist()))


def test_semidirect_direct_product_is_c6():
    n, h = CyclicGroup(2), CyclicGroup(3)
    g = build_semidirect(n, h, automorphism_power_action(n, h, 1))
    assert g.order == 6
    assert _class_signature(g) == _class_signature(CyclicGroup(6))


def test_semidirect_inversion_is_s3():
    n, h = CyclicGroup(3), CyclicGroup(2)
    g = build_semidirect(n, h, automorphism_power_action(n, h, 2))
    assert _class_signature(g) == _class_signature(build_corpus_group("S3"))


def test_semidirect_c33_c5_matches_torus(torus):
    n, h = CyclicGroup(33), CyclicGroup(5)
    g = build_semidirect(n, h, automorphism_power_action(n, h, 4))
    assert g.order == 165
    assert element_order_spectrum(g).orders == element_order_spectrum(torus).orders
    assert _class_signature(g) == _class_signature(torus)


def test_action_from_generators_rejects_non_homomorphism():
    n, h = CyclicGroup(3), CyclicGroup(2)
    # a 3-cycle on C3 has order 3, incompatible with a generator of order 2
    with pytest.raises(ConstructionError):
        action_from_generators(n, h, [[1, 2, 0]])


def test_semidirect_rejects_non_automorphism():
    n, h = CyclicGroup(4), CyclicGroup(2)
    with pytest.raises(ConstructionError):
        build_semidirect(n, h, [[0, 1, 2, 3], [1, 0, 2, 3]])


def test_paper_group_class_type(paper_group):
    assert isinstance(paper_group, PaperGroup)
    assert paper_group.describe(paper_group.identity)
