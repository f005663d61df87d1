from fractions import Fraction

import pytest

from tamestrata import corpus, oracle, strata, translate
from tamestrata.errors import (
    BadLevel, DepthMismatch, NotMinimalSummand, OracleRequired,
)


@pytest.fixture(scope="module")
def desk():
    return corpus.desk_tower_5()


@pytest.fixture(scope="module")
def order(desk):
    return strata.make_order(desk, 4)


@pytest.fixture(scope="module")
def desk_bk(desk, order):
    w = desk.k.gen()
    beta = desk.series(0, [(-1, w), (Fraction(-1, 2), 1)])
    return translate.make_bk_datum(
        order, strata.decompose_split_form(order, beta))


@pytest.fixture(scope="module")
def model(order):
    return oracle.model_build(order)


def test_bk_to_yu_desk(desk_bk):
    yu = translate.bk_to_yu(desk_bk)
    assert yu.dims == (1, 2, 4)
    assert yu.depths == (Fraction(1, 2), Fraction(1), Fraction(1))
    assert yu.case == "B" and yu.d == 2
    assert yu.characters[-1][1] is None


def test_bk_to_yu_single_minimal(desk, order):
    w = desk.k.gen()
    bk = translate.make_bk_datum(order, [(0, desk.monomial(w, Fraction(-1, 2)))])
    yu = translate.bk_to_yu(bk)
    assert yu.dims == (1, 4)
    assert yu.depths == (Fraction(1, 2), Fraction(1, 2))
    assert yu.case == "B" and yu.d == 1


def test_bk_to_yu_case_A(desk, order):
    w = desk.k.gen()
    bk = translate.make_bk_datum(
        order, [(1, desk.monomial(w, -1)), (2, (desk.pi_F() ** -2).at_level(2))])
    yu = translate.bk_to_yu(bk)
    assert yu.case == "A"
    assert yu.dims == (2, 4)
    assert yu.depths == (Fraction(1), Fraction(2))
    assert yu.characters[-1][1] is not None       # folded top character


def test_type_b_round_trip(order):
    bk = translate.make_bk_datum_b(order)
    yu = translate.bk_to_yu(bk)
    assert yu.d == 0 and yu.dims == (4,) and yu.depths == (Fraction(0),)
    bk2 = translate.yu_to_bk(yu)
    assert bk2.kind == "b"
    assert translate.skeletons_agree(bk, bk2)


def test_yu_to_bk_depth_mismatch(desk_bk):
    yu = translate.bk_to_yu(desk_bk)
    bad = translate.YuDatumSkeleton(
        yu.point, yu.dims, (Fraction(1), Fraction(1, 2), Fraction(1, 2)),
        yu.characters, yu.case)
    with pytest.raises(DepthMismatch):
        translate.yu_to_bk(bad)


def test_yu_to_bk_ord_mismatch(desk_bk):
    yu = translate.bk_to_yu(desk_bk)
    chars = list(yu.characters)
    lvl, c, r = chars[0]
    chars[0] = (lvl, c, r + 1)
    bad = translate.YuDatumSkeleton(yu.point, yu.dims,
                                    (r + 1,) + yu.depths[1:], tuple(chars),
                                    yu.case)
    with pytest.raises(DepthMismatch):
        translate.yu_to_bk(bad)


def test_yu_to_bk_nonminimal_realizer(desk, order, desk_bk):
    yu = translate.bk_to_yu(desk_bk)
    chars = list(yu.characters)
    # replace the level-0 realizer by an element of E_1 (same depth)
    chars[0] = (0, desk.monomial(desk.k.gen(), Fraction(-1, 1)).at_level(0),
                Fraction(1))
    bad = translate.YuDatumSkeleton(yu.point, yu.dims,
                                    (Fraction(1),) + yu.depths[1:],
                                    tuple(chars), yu.case)
    with pytest.raises((NotMinimalSummand, DepthMismatch)):
        translate.yu_to_bk(bad)


def test_round_trips_on_corpus():
    for label, bk in corpus.datum_corpus():
        yu = translate.bk_to_yu(bk)
        bk2 = translate.yu_to_bk(yu)
        assert translate.skeletons_agree(bk, bk2), label
        yu2 = translate.bk_to_yu(bk2)
        assert translate.skeletons_agree(yu, yu2), label


def test_h_group_table_desk(desk_bk):
    tabs = translate.h_group_table(desk_bk.seq)
    assert tabs["H1"].pairs() == ((0, 1), (1, 1), (2, 2))
    assert tabs["J1"].pairs() == ((0, 1), (1, 1), (2, 1))
    assert tabs["J0"].pairs() == ((0, 0), (1, 1), (2, 1))


def test_h_table_single_minimal_n1(desk, order):
    w = desk.k.gen()
    bk = translate.make_bk_datum(order, [(0, desk.monomial(w, Fraction(-1, 2)))])
    tabs = translate.h_group_table(bk.seq)
    assert tabs["H1"].pairs() == tabs["J1"].pairs()     # [1/2]+1 = [(1+1)/2] = 1


def test_yu_group_table_desk(desk_bk):
    yu = translate.bk_to_yu(desk_bk)
    ytabs = translate.yu_group_table(yu)
    assert ytabs["Kd+"].pairs() == ((0, 1), (1, 1), (2, 2))
    assert ytabs["oKd"].pairs() == ((0, 0), (1, 1), (2, 1))
    assert ytabs["J2"].pairs() == ((1, 2), (2, 1))
    assert ytabs["J2+"].pairs() == ((1, 2), (2, 2))
    labels = [f[2] for f in ytabs["Kd+"].factors]
    assert labels == ["0+", "1/4+", "1/2+"]


def test_table_compare(desk_bk, model):
    yu = translate.bk_to_yu(desk_bk)
    tabs = translate.h_group_table(desk_bk.seq)
    ytabs = translate.yu_group_table(yu)
    assert translate.table_compare(tabs["H1"], ytabs["Kd+"])
    assert translate.table_compare(tabs["J0"], ytabs["oKd"])
    assert not translate.table_compare(tabs["J1"], ytabs["Kd+"])
    assert translate.table_compare(tabs["H1"], ytabs["Kd+"], model)
    assert not translate.table_compare(tabs["J1"], ytabs["Kd+"], model)


def test_char_factor_domains(desk_bk):
    cf0 = translate.char_factor(desk_bk, 0)
    assert [f[:2] for f in cf0.det_domain] == [(0, 1)]
    assert [f[:2] for f in cf0.psi_domain] == [(1, 1), (2, 2)]
    assert cf0.depth == Fraction(1, 2)
    cf1 = translate.char_factor(desk_bk, 1)
    assert [f[:2] for f in cf1.det_domain] == [(0, 1), (1, 1)]
    assert [f[:2] for f in cf1.psi_domain] == [(2, 2)]
    with pytest.raises(BadLevel):
        translate.char_factor(desk_bk, 5)


def test_char_factor_case_A_terminal(desk, order):
    w = desk.k.gen()
    bk = translate.make_bk_datum(
        order, [(1, desk.monomial(w, -1)), (2, (desk.pi_F() ** -2).at_level(2))])
    cf = translate.char_factor(bk, 1)
    assert cf.psi_domain == ()
    assert cf.det_domain == translate.h_group_table(bk.seq)["H1"].factors


def test_char_module_valuation(desk, order):
    w = desk.k.gen()
    c = desk.monomial(w, -1)
    assert translate.char_module_valuation(c, (1, 3), order) == 1
    assert translate.char_module_valuation(c, (1, 2), order) == 0
    assert translate.char_module_valuation(c, (1, 5), order) == 2


def test_single_index_log(order):
    assert translate.single_index_log(order, 1, 1, 2) == 4
    assert translate.single_index_log(order, 0, 1, 2) == 2
    assert translate.single_index_log(order, 2, 1, 2) == 8


def test_ledger_requires_oracle(desk_bk):
    yu = translate.bk_to_yu(desk_bk)
    with pytest.raises(OracleRequired):
        translate.ledger_indices(desk_bk, yu, None)


def test_ledger_verdicts(desk_bk, model):
    yu = translate.bk_to_yu(desk_bk)
    entries, verdicts = translate.ledger_indices(desk_bk, yu, model)
    names = {e.name: e.value for e in entries}
    assert names["[J1:H1]"] == 4
    assert names["[J^1:J^1+]"] == 0 and names["[J^2:J^2+]"] == 4
    assert verdicts == {"product_identity": True, "even_exponents": True,
                        "singles_match_oracle": True}


def test_deep_chain_tables_shape():
    # a d = 3 datum over the four-step tower
    deep = corpus.deep_tower_5()
    order = strata.make_order(deep, deep.level_degree(0))
    data = [bk for _, bk in corpus.datum_corpus()
            if bk.kind == "a" and bk.order.tower is deep and bk.seq.s == 2
            and bk.seq.case == "B"]
    assert data
    bk = data[0]
    yu = translate.bk_to_yu(bk)
    assert yu.d == 3 and len(yu.dims) == 4
    tabs = translate.h_group_table(bk.seq)
    ytabs = translate.yu_group_table(yu)
    assert len(tabs["H1"].factors) == 4
    assert translate.table_compare(tabs["H1"], ytabs["Kd+"])
    assert translate.table_compare(tabs["J0"], ytabs["oKd"])
    assert set(ytabs) == {"Kd+", "oKd", "J1", "J1+", "J2", "J2+", "J3", "J3+"}


def test_ledger_single_minimal_n1(desk, order, model):
    # n = 1: the two lattices coincide and [J1:H1] = 1
    w = desk.k.gen()
    bk = translate.make_bk_datum(order, [(0, desk.monomial(w, Fraction(-1, 2)))])
    yu = translate.bk_to_yu(bk)
    entries, verdicts = translate.ledger_indices(bk, yu, model)
    names = {e.name: e.value for e in entries}
    assert names["[J1:H1]"] == 0
    assert verdicts["product_identity"] and verdicts["even_exponents"]
