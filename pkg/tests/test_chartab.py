import json
import math

import numpy as np
import pytest

from codegree_lab.chartab import (
    CharacterTable,
    character_table,
    class_matrix,
    split_eigenspaces,
)
from codegree_lab.constructors import build_corpus_group, build_torus_T
from codegree_lab.errors import ConsistencyError
from codegree_lab.fields import prime_field_with_root
from codegree_lab.groups import CyclicGroup

from conftest import CORPUS, corpus_table
from oracles import GOLDEN, GOLDEN_GROUPS, brute_force_table


def _rows_as_sorted_tuples(dense):
    return sorted(tuple(map(tuple, row)) for row in dense)


@pytest.mark.parametrize("name", ["S3", "D8", "SL23"])
def test_class_matrix_brute_force(name):
    g = build_corpus_group(name)
    cd = g.classes
    e = g.elements
    cls = cd.class_of(e)
    for i in range(cd.r):
        m = class_matrix(cd, i).entries
        ref = np.zeros_like(m)
        for x in cd.members(i).tolist():
            for y in e.tolist():
                k = np.nonzero(cd.representatives == g.mul1(x, y))[0]
                if k.size:
                    ref[cls[np.searchsorted(e, y)], k[0]] += 1
        assert np.array_equal(m, ref)


def test_s3_transposition_class_coefficient():
    g = build_corpus_group("S3")
    cd = g.classes
    i = next(j for j in range(cd.r) if cd.element_orders[j] == 2)
    # x y = 1 with x, y transpositions: three choices of x
    assert class_matrix(cd, i).entries[i, 0] == 3


def test_class_matrix_threads_agree():
    g = build_corpus_group("SL23")
    for i in range(g.classes.r):
        a = class_matrix(g.classes, i, threads=1).entries
        b = class_matrix(g.classes, i, threads=3, chunk=8).entries
        assert np.array_equal(a, b)


@pytest.mark.parametrize("n", range(1, 13))
def test_cyclic_tables_match_dual_group(n):
    g = CyclicGroup(n)
    tbl = character_table(g)
    e = tbl.exponent
    assert e == n
    reps = g.classes.representatives
    ref = np.zeros((n, n, e), dtype=np.int64)
    for k in range(n):
        for j, x in enumerate(reps.tolist()):
            ref[k, j, (k * x) % n] = 1
    assert _rows_as_sorted_tuples(tbl.dense().tolist()) == _rows_as_sorted_tuples(ref.tolist())


def golden_dense(name, group, tbl):
    data = json.loads(GOLDEN.read_text())[name]
    assert data["order"] == group.order and data["exponent"] == tbl.exponent
    cd = group.classes
    out = np.zeros((len(data["rows"]), cd.r, tbl.exponent), dtype=np.int64)
    for a, row in enumerate(data["rows"]):
        assert len(row) == cd.r
        for key, vec in row.items():
            j = int(cd.class_of([int(key)])[0])
            for k, m in vec.items():
                out[a, j, int(k)] = m
    return out


@pytest.mark.parametrize("name", GOLDEN_GROUPS)
def test_golden_tables(name):
    g, tbl = corpus_table(name)
    assert _rows_as_sorted_tuples(tbl.dense().tolist()) == _rows_as_sorted_tuples(golden_dense(name, g, tbl).tolist())


@pytest.mark.parametrize("name", ["S3", "Q8", "SL23"])
def test_oracle_reproduces_frozen_golden(name):
    g = build_corpus_group(name)
    live = brute_force_table(g, seed=7)
    frozen = json.loads(GOLDEN.read_text())[name]
    as_json = [{str(k): {str(a): b for a, b in v.items()} for k, v in row.items()} for row in live["rows"]]
    key = lambda r: json.dumps(r, sort_keys=True)
    assert sorted(map(key, as_json)) == sorted(map(key, frozen["rows"]))


def test_known_degrees():
    expected = {
        "S3": [1, 1, 2], "D8": [1, 1, 1, 1, 2], "Q8": [1, 1, 1, 1, 2], "A4": [1, 1, 1, 3],
        "S4": [1, 1, 2, 3, 3], "SL23": [1, 1, 1, 2, 2, 2, 3], "extraspecial_p_small": [1] * 9 + [3, 3],
    }
    for name, degs in expected.items():
        assert corpus_table(name)[1].degrees == degs
    assert corpus_table("torus_t")[1].degrees == [1] * 15 + [5] * 6


@pytest.mark.parametrize("name", ["S4", "SL23", "torus_t"])
def test_split_methods_agree(name):
    g = build_torus_T() if name == "torus_t" else build_corpus_group(name)
    a = character_table(g, method="charpoly")
    b = character_table(g, method="scan")
    assert np.array_equal(a.dense(), b.dense())


def test_split_eigenspaces_on_c3():
    g = CyclicGroup(3)
    cd = g.classes
    ctx = prime_field_with_root(3, 4)
    mats = {i: class_matrix(cd, i).entries for i in range(3)}
    vecs, used = split_eigenspaces(mats, [1, 2], 3, ctx)
    assert used == [1]
    assert len(vecs) == 3 and (vecs[:, 0] == 1).all()


@pytest.mark.parametrize("name", CORPUS + ["torus_t"])
def test_numeric_orthogonality(name):
    g, tbl = corpus_table(name)
    x = tbl.complex_table()
    w = tbl.class_sizes
    assert np.allclose((x * w) @ x.conj().T, g.order * np.eye(tbl.r), atol=1e-8)
    assert np.allclose(x.conj().T @ x, np.diag(g.order / w), atol=1e-8)


def _corrupted(tbl, a, j, new):
    rows = [list(r) for r in tbl.characters]
    rows[a][j] = new
    return CharacterTable(tbl.group_order, tbl.class_sizes, tbl.element_orders, tbl.power_map,
                          tbl.inverse_class, tbl.exponent, tbl.ell, tbl.z, rows)


def test_verify_rejects_corruption():
    _, tbl = corpus_table("S4")
    v = tbl.characters[2][1]
    # same degree, shifted root of unity
    bad = _corrupted(tbl, 2, 1, type(v).from_dict(tbl.exponent, {k + 1: m for k, m in v.terms}))
    with pytest.raises(ConsistencyError):
        bad.verify()
    tbl.verify()


def test_prime_bound_used(paper_table):
    assert paper_table.exponent == 660
    assert paper_table.ell == 1321 > 2 * math.sqrt(337920)
