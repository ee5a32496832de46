import numpy as np
import sympy
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from codegree_lab import modlinalg as ml

P = 13


def _sym_charpoly(a, p):
    c = sympy.Matrix(a.tolist()).charpoly(sympy.symbols("x")).all_coeffs()[::-1]
    return [int(v) % p for v in c]


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: arrays(np.int64, (n, n), elements=st.integers(0, P - 1))))
def test_charpoly_matches_sympy(a):
    assert ml.charpoly(a, P).tolist() == _sym_charpoly(a, P)


@settings(max_examples=80, deadline=None)
@given(arrays(np.int64, (5, 7), elements=st.integers(0, 6)))
def test_rank_nullity(m):
    ns = ml.nullspace(m, 7)
    assert ml.rank(m, 7) + len(ns) == 7
    if len(ns):
        assert (ml.matmul(m, ns.T, 7) == 0).all()


def test_rank_matches_sympy_gf_p():
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF
    rng = np.random.default_rng(1)
    for _ in range(30):
        m = rng.integers(0, 5, size=(4, 6))
        m[3] = (m[0] + 2 * m[1]) % 5
        dm = DomainMatrix([[GF(5)(int(x)) for x in row] for row in m.tolist()], (4, 6), GF(5))
        assert ml.rank(m, 5) == dm.rank()


def test_inverse():
    rng = np.random.default_rng(2)
    for _ in range(20):
        m = rng.integers(0, P, size=(5, 5))
        if ml.rank(m, P) < 5:
            continue
        assert (ml.matmul(m, ml.inverse(m, P), P) == np.eye(5, dtype=np.int64)).all()


def test_poly_roots():
    # (x - 2)(x - 5) = x^2 - 7x + 10
    assert ml.poly_roots(np.array([10, -7 % P, 1]), P) == [2, 5]


def test_irreducible_module():
    # cyclic shift on GF(2)^3: the all-ones vector spans a submodule
    shift = np.roll(np.eye(3, dtype=np.int64), 1, axis=0)
    ok, v = ml.is_irreducible_module([shift], 2, 3)
    assert not ok and ml.submodule_span(v, [shift], 2).shape[0] < 3
    # companion matrix of x^3 + x + 1 (irreducible over GF(2))
    comp = np.array([[0, 0, 1], [1, 0, 1], [0, 1, 0]])
    assert ml.is_irreducible_module([comp], 2, 3) == (True, None)


def test_width_guard():
    import pytest
    with pytest.raises(OverflowError):
        ml.check_width(1 << 40, 1 << 20)
