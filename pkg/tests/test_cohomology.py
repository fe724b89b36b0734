from math import comb

import pytest

from nilcohom import cohomology as co
from nilcohom.model import instantiate
from nilcohom.parser import parse_binding, parse_complex_structure


def build(template, binding=""):
    return instantiate(parse_complex_structure(template), parse_binding(binding))


@pytest.fixture(scope="module")
def torus():
    return build("(0,0,0)")


@pytest.fixture(scope="module")
def iwasawa():
    return build("(0,0,w12)")


@pytest.fixture(scope="module")
def h8():
    return build("(0,0,w1~1)")


def test_component_matrix_examples(torus, iwasawa, h8):
    assert co.del_matrix(torus, 1, 1).is_zero()
    assert co.delbar_matrix(torus, 2, 1).is_zero()
    assert co.delbar_matrix(iwasawa, 1, 0).is_zero()
    assert co.exact_rank(co.del_matrix(iwasawa, 1, 0)) == 1
    assert co.del_matrix(h8, 1, 0).is_zero()
    assert co.exact_rank(co.delbar_matrix(h8, 1, 0)) == 1


def test_deldelbar_on_torus_and_scalars(torus, iwasawa):
    assert co.deldelbar_matrix(torus, 1, 1).is_zero()
    assert co.deldelbar_matrix(iwasawa, 0, 0).is_zero()


def test_matrix_identities(iwasawa, h8):
    assert co.differential_identities_ok(iwasawa)
    assert co.differential_identities_ok(h8)


def test_dolbeault_examples(torus, iwasawa, tables):
    for p in range(4):
        for q in range(4):
            assert co.hodge_dolbeault(torus, p, q) == comb(3, p) * comb(3, q)
    assert co.hodge_dolbeault(iwasawa, 0, 1) == 2
    for table in (tables["00"], tables["08"], tables["12"], tables["12_8D"]):
        assert table.h_dolbeault[0][0] == 1


def test_bott_chern_examples(torus, iwasawa, h8):
    assert co.hodge_bc(torus, 1, 1) == 9
    assert co.hodge_bc(iwasawa, 1, 1) == 4
    assert co.hodge_bc(iwasawa, 2, 0) == 3
    assert co.hodge_bc(iwasawa, 2, 2) == 8
    assert co.hodge_bc(h8, 1, 1) == 6
    assert co.hodge_bc(h8, 2, 1) == 7


def test_aeppli_examples(torus, iwasawa, tables):
    assert co.hodge_aeppli(torus, 1, 1) == 9
    assert co.hodge_aeppli(iwasawa, 1, 1) == 8
    for cid in ("00", "08", "12", "13", "23", "12_8D"):
        table = tables[cid]
        assert table.h_aeppli[table.n][table.n] == 1


def test_a_and_f_vanish_on_torus(torus):
    for p in range(4):
        for q in range(4):
            assert co.a_dim(torus, p, q) == 0
            assert co.f_dim(torus, p, q) == 0


def test_betti_examples(torus, iwasawa):
    assert [co.betti(torus, k) for k in range(7)] == [1, 6, 15, 20, 15, 6, 1]
    assert [co.betti(iwasawa, k) for k in (1, 2, 3)] == [4, 8, 10]
    assert co.betti(iwasawa, 0) == 1


def test_delta_examples(torus, iwasawa):
    assert [co.delta(torus, k) for k in range(7)] == [0] * 7
    assert [co.delta(iwasawa, k) for k in (1, 2, 3)] == [2, 6, 8]
    assert co.delta(iwasawa, 0) == 0


def test_full_table_spot_values(tables):
    t20b = tables["20b"]
    assert t20b.h_bc[2][0] == 2 and t20b.delta[2] == 9
    t11 = tables["11"]
    assert t11.h_bc[1][0] == 1 and t11.delta[1:4] == [2, 2, 4]
    t12_8d = tables["12_8D"]
    assert t12_8d.delta[1:5] == [0, 2, 8, 12]


def test_lemma_status(tables):
    torus = co.ddbar_lemma_status(tables["00"])
    assert torus.satisfied and torus.parity_sufficient
    iwa = co.ddbar_lemma_status(tables["08"])
    assert not iwa.satisfied and iwa.witness == 1
    h8 = co.ddbar_lemma_status(tables["12"])
    assert not h8.satisfied and h8.witness == 2


def test_delta_degree_symmetry(tables):
    # delta is symmetric about the middle degree: delta[k] == delta[2n-k]
    for table in tables.values():
        for k in range(2 * table.n + 1):
            assert table.delta[k] == table.delta[2 * table.n - k]


def test_bidegree_out_of_range():
    with pytest.raises(ValueError):
        co.del_matrix(build("(0,0,0)"), 4, 0)
