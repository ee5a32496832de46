import numpy as np
import pytest
from hypothesis import given, strategies as st

from codegree_lab.codegree import (
    codegrees,
    kernel_classes,
    kernel_is_normal_subgroup,
    moreto_check,
    pi_set,
    qian_property_test,
    verify_theorem22_consequence,
    verify_theorem23,
)
from codegree_lab.groups import center, fitting_subgroup

from conftest import CORPUS, corpus_table

ABELIAN = ["trivial", "C2", "C6", "C12"]


def test_pi_set_examples():
    assert pi_set(1) == set()
    assert pi_set(10560) == {2, 3, 5, 11}
    assert pi_set(337920) == {2, 3, 5, 11}
    with pytest.raises(ValueError):
        pi_set(0)


@given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6))
def test_pi_set_of_product_is_union(a, b):
    assert pi_set(a * b) == pi_set(a) | pi_set(b)


def test_small_codegree_sets():
    assert codegrees(corpus_table("trivial")[1])[1] == [1]
    assert codegrees(corpus_table("S3")[1])[1] == [1, 2, 3]
    assert codegrees(corpus_table("Q8")[1])[1] == [1, 2, 4]


def _brute_kernel_sizes(g, tbl):
    """Kernel of each character from the complex values on every element."""
    cd = g.classes
    x = tbl.complex_table()
    per_elem = x[:, cd.class_of(g.elements)]
    return [int(np.isclose(row, d).sum()) for row, d in zip(per_elem, tbl.degrees)]


@pytest.mark.parametrize("name", CORPUS + ["torus_t"])
def test_codegree_records(name):
    g, tbl = corpus_table(name)
    records, cods = codegrees(tbl)
    assert [r.kernel_size for r in records] == _brute_kernel_sizes(g, tbl)
    for r in records:
        assert r.cod * r.degree * r.kernel_size == g.order
        assert set(r.pi_set) == pi_set(r.cod)
        assert kernel_is_normal_subgroup(tbl, r.kernel_classes)
    assert records[0].degree == 1 and records[0].cod == 1


@pytest.mark.parametrize("name", CORPUS + ["torus_t"])
def test_faithful_linear_characters_have_cod_order(name):
    g, tbl = corpus_table(name)
    for r in codegrees(tbl)[0]:
        if r.degree == 1 and r.kernel_size == 1:
            assert r.cod == g.order


def test_kernel_detection_is_exact():
    # in C12 the faithful characters have |chi(g)| = 1 = chi(1) everywhere but trivial kernel
    _, tbl = corpus_table("C12")
    assert sum(1 for k in kernel_classes(tbl) if k == [0]) == 4


def test_non_subgroup_class_union_is_rejected():
    _, tbl = corpus_table("S4")
    # identity together with the transpositions is not a subgroup
    t = next(j for j in range(tbl.r) if tbl.element_orders[j] == 2 and tbl.class_sizes[j] == 6)
    assert not kernel_is_normal_subgroup(tbl, [0, t])


@pytest.mark.parametrize("name", ABELIAN + ["torus_t"])
def test_moreto_no_violations(name):
    _, tbl = corpus_table(name)
    rep = moreto_check(tbl)
    assert not rep.negative_answer and rep.violations == []


def test_moreto_witnesses_are_valid():
    _, tbl = corpus_table("SL23")
    for v in moreto_check(tbl).verdicts:
        assert pi_set(v.cod) <= pi_set(v.witness_order)


def test_moreto_stable_under_class_order():
    _, tbl = corpus_table("S4")
    a = moreto_check(tbl)
    b = moreto_check(tbl)
    assert a == b


@pytest.mark.parametrize("name", CORPUS + ["torus_t"])
def test_qian(name):
    assert qian_property_test(corpus_table(name)[1]) == (True, [])


def test_fully_ramified_check_s4_fails_coprimality():
    g, tbl = corpus_table("S4")
    cert = verify_theorem23(g, fitting_subgroup(g), center(g), tbl)
    assert cert.z_cyclic and cert.chief_factor and not cert.coprime
    assert not cert.hypotheses_hold
    assert cert.witnesses == []


def test_fully_ramified_check_d8_is_inapplicable():
    g, tbl = corpus_table("D8")
    cert = verify_theorem23(g, fitting_subgroup(g), center(g), tbl)
    assert cert.nilpotent and not cert.applicable


def test_fully_ramified_witnesses_sl23():
    g, tbl = corpus_table("SL23")
    cert = verify_theorem23(g, fitting_subgroup(g), center(g), tbl)
    assert cert.applicable and cert.hypotheses_hold
    assert cert.expected_cod == 12
    # the three faithful degree-2 characters agree on Q8 and vanish off its center
    assert [w.degree for w in cert.witnesses] == [2, 2, 2]
    assert {w.cod for w in cert.witnesses} == {12}
    assert verify_theorem22_consequence(tbl, cert)


def test_fully_ramified_check_torus_is_inapplicable(torus):
    _, tbl = corpus_table("torus_t")
    cert = verify_theorem23(torus, fitting_subgroup(torus), center(torus), tbl)
    # the numbered conditions hold but F(T) is abelian with |F:Z| = 11 not a square
    assert cert.z_cyclic and cert.chief_factor and cert.coprime
    assert not cert.center_of_fitting_is_center and not cert.applicable
    assert cert.witnesses == []


@pytest.mark.parametrize("name", ["D8", "Q8"])
def test_all_primes_divide_cod_extraspecial_faithful(name):
    _, tbl = corpus_table(name)
    records = codegrees(tbl)[0]
    faithful = [r.index for r in records if r.kernel_size == 1]
    assert [records[i].cod for i in faithful] == [4]
    assert verify_theorem22_consequence(tbl, faithful, records)


def test_all_primes_divide_cod_faithful_linear_c6():
    _, tbl = corpus_table("C6")
    records = codegrees(tbl)[0]
    faithful = [r.index for r in records if r.kernel_size == 1]
    assert {records[i].cod for i in faithful} == {6}
    assert verify_theorem22_consequence(tbl, faithful, records)
    assert not verify_theorem22_consequence(tbl, [], records)
