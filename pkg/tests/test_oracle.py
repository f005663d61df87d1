from fractions import Fraction

import pytest

from tamestrata import corpus, oracle, strata, translate
from tamestrata.errors import NotNested, TooLarge
from tamestrata.oracle import LatticeHandle, Subspace


@pytest.fixture(scope="module")
def desk():
    return corpus.desk_tower_5()


@pytest.fixture(scope="module")
def order(desk):
    return strata.make_order(desk, 4)


@pytest.fixture(scope="module")
def model(order):
    return oracle.model_build(order)


@pytest.fixture(scope="module")
def desk_seq(desk, order):
    w = desk.k.gen()
    beta = desk.series(0, [(-1, w), (Fraction(-1, 2), 1)])
    return strata.build_defining_sequence(
        order, strata.decompose_split_form(order, beta))


def test_subspace_rref_ops():
    s = Subspace(5, 4, [[1, 2, 0, 0], [0, 0, 1, 1]])
    assert s.dim == 2
    assert s.contains([2, 4, 3, 3])
    assert not s.contains([1, 0, 0, 0])
    t = Subspace(5, 4, [[1, 0, 0, 0]])
    assert s.sum(t).dim == 3
    assert s.intersect(t).dim == 0
    assert s.sum(t).contains_space(s)


def test_model_build_too_large(desk):
    with pytest.raises(TooLarge):
        oracle.model_build(strata.make_order(desk, 12))


def test_matrix_valuations(desk, model):
    w = desk.k.gen()
    assert oracle.oracle_nu(model, desk.monomial(1, Fraction(-1, 2))) == -1
    assert oracle.oracle_nu(model, desk.monomial(w, -1)) == -2
    assert oracle.oracle_nu(model, desk.pi_F().at_level(0)) == 2
    assert oracle.oracle_nu(model, desk.monomial(w, 0)) == 0


def test_field_relation_reproduced(desk, model):
    # s^e * zeta = t must hold between the generator matrices
    s_mat = model.elt_to_matrix(desk.monomial(1, Fraction(1, 2)))
    t_mat = model.elt_to_matrix(desk.pi_F().at_level(0))
    lhs = s_mat.mul(s_mat)
    assert lhs.sub(t_mat).entries == {}


def test_oracle_k0_matches_closed_form(desk, order, model):
    w = desk.k.gen()
    beta = desk.series(0, [(-1, w), (Fraction(-1, 2), 1)])
    for x in (beta, desk.monomial(w, Fraction(-1, 2)),
              (desk.pi_F() ** -1).at_level(0)):
        assert oracle.oracle_k0(model, x) == strata.k0_closed(order, x)


def test_oracle_hj_desk(model, desk_seq):
    hj = oracle.oracle_hj(model, desk_seq)
    quot = hj["quotient"]
    # h = B_0 + Q_1 + P^2 and j = B_0 + Q_1 + P, computed independently
    b0 = quot.order_level(0, 0)
    q1 = quot.order_level(1, 1)
    h_direct = b0.sum(q1)
    j_direct = b0.sum(q1).sum(quot.radical_power(1))
    assert hj["h"].space == h_direct
    assert hj["j"].space == j_direct
    assert j_direct.contains_space(hj["h"].space)


def test_oracle_index_multiplicative(model):
    quot = model.quotient_context(3)
    p0 = LatticeHandle(quot.radical_power(0), 3)
    p1 = LatticeHandle(quot.radical_power(1), 3)
    p2 = LatticeHandle(quot.radical_power(2), 3)
    i01 = oracle.oracle_index(model, p0, p1)
    i12 = oracle.oracle_index(model, p1, p2)
    i02 = oracle.oracle_index(model, p0, p2)
    assert i01 + i12 == i02
    assert i12 == 8                      # dim P/P^2 = N^2/e_A = 8 over F_5
    assert oracle.oracle_index(model, p1, p1) == 0
    with pytest.raises(NotNested):
        oracle.oracle_index(model, p2, p1)


def test_h_in_j_for_corpus(desk):
    for label, bk in corpus.datum_corpus():
        if bk.kind != "a" or bk.order.N > 4:
            continue
        model = oracle.model_build(bk.order)
        hj = oracle.oracle_hj(model, bk.seq)
        assert hj["j"].space.contains_space(hj["h"].space), label
        break


def test_table_lattice_matches_hj(model, desk_seq):
    tabs = translate.h_group_table(desk_seq)
    hj = oracle.oracle_hj(model, desk_seq)
    M = hj["h"].M
    quot = hj["quotient"]
    h_from_table = oracle.oracle_table_lattice(model, tabs["H1"].pairs(), M)
    j_from_table = oracle.oracle_table_lattice(model, tabs["J1"].pairs(), M)
    p1 = quot.radical_power(1)
    assert h_from_table.space == hj["h"].space.intersect(p1)
    assert j_from_table.space == hj["j"].space.intersect(p1)


def test_char_module_matches_closed_form(desk, order, model):
    w = desk.k.gen()
    c = desk.monomial(w, -1)
    for m in (1, 2, 3, 4):
        closed = translate.char_module_valuation(c, (1, m), order)
        assert oracle.oracle_char_module_min_ord(model, c, 1, m) == closed


def test_oracle_on_sextic_order():
    # N = 6 over the S_3 tower: nontrivial e_A = 3 and residue degree 2
    tower = corpus.desk_tower_2()
    order6 = strata.make_order(tower, 6)
    model6 = oracle.model_build(order6)
    w = tower.k.gen()
    assert oracle.oracle_nu(model6, tower.monomial(1, Fraction(-1, 3))) == -1
    assert oracle.oracle_nu(model6, tower.pi_F().at_level(0)) == 3
    data = [bk for _, bk in corpus.datum_corpus()
            if bk.kind == "a" and bk.order.tower is tower and bk.seq.s == 1]
    assert data
    bk = data[0]
    beta = bk.seq.entries[0].beta
    assert oracle.oracle_k0(model6, beta) == strata.k0_closed(bk.order, beta)
    yu = translate.bk_to_yu(bk)
    entries, verdicts = translate.ledger_indices(bk, yu, model6)
    assert verdicts["product_identity"] and verdicts["even_exponents"]
    assert verdicts["singles_match_oracle"]


def test_block_model_with_m0_two(desk):
    # N = 8: V is a free rank-2 module over E_0
    order8 = strata.make_order(desk, 8)
    assert order8.m == (2, 4, 8)
    model8 = oracle.model_build(order8)
    w = desk.k.gen()
    assert oracle.oracle_nu(model8, desk.monomial(1, Fraction(-1, 2))) == -1
    assert oracle.oracle_nu(model8, desk.monomial(w, -1)) == -2
    beta = desk.series(0, [(-1, w), (Fraction(-1, 2), 1)])
    assert oracle.oracle_k0(model8, beta) == strata.k0_closed(order8, beta) == -1
