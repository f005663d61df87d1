import pytest

from tamestrata import ffq
from tamestrata.errors import (
    BadDegree, DivisionByZero, FieldMismatch, NotPrime, ReducibleModulus,
)


@pytest.fixture
def F25():
    return ffq.ff_make_field(5, 2, [2, 4, 1])   # x^2 - x - 3


def test_make_prime_field():
    F5 = ffq.ff_make_field(5, 1, [0, 1])
    assert F5.order == 5
    assert F5.elem(7) == F5.elem(2)


def test_make_field_validates_modulus(F25):
    w = F25.gen()
    assert w * w == w + 3
    with pytest.raises(ReducibleModulus):
        ffq.ff_make_field(5, 2, [4, 0, 1])      # x^2 - 1 = (x-1)(x+1)
    with pytest.raises(NotPrime):
        ffq.ff_make_field(6, 1, [0, 1])


def test_arith(F25):
    w = F25.gen()
    assert ffq.ff_arith("add", w, -w) == F25.zero()
    assert ffq.ff_arith("mul", w, w) == w + 3
    assert ffq.ff_arith("pow", w, 24) == F25.one()
    assert ffq.ff_arith("inv", w) * w == F25.one()
    with pytest.raises(DivisionByZero):
        ffq.ff_arith("inv", F25.zero())
    with pytest.raises(FieldMismatch):
        w + ffq.ff_make_field(3, 1).one()


def test_frobenius(F25):
    w = F25.gen()
    assert ffq.ff_frobenius(w, 1, 1) == w ** 5
    assert ffq.ff_frobenius(w, 1, 2) == w
    assert ffq.ff_frobenius(F25.elem(3), 1, 1) == F25.elem(3)
    with pytest.raises(BadDegree):
        ffq.ff_frobenius(w, 3, 1)


def test_generates(F25):
    w = F25.gen()
    assert ffq.ff_generates(w, 1)
    assert not ffq.ff_generates(F25.one(), 1)
    assert ffq.ff_generates(w * w, 1)           # w + 3: orbit size 2


@pytest.mark.parametrize("p,f", [(2, 2), (2, 3), (3, 2), (5, 2), (5, 1), (2, 4)])
def test_field_axioms_exhaustive(p, f):
    # p^f <= 625 throughout: full check of the homomorphism property
    field = ffq.FqField(p, f)
    elems = list(field.elements())
    assert len(elems) == p ** f
    one = field.one()
    for a in elems:
        if not a.is_zero():
            assert a ** (p ** f - 1) == one
            assert a.inverse() * a == one
    for a in elems[: p ** f]:
        fa = a.frobenius(1, 1)
        for b in elems:
            assert (a * b).frobenius(1, 1) == fa * b.frobenius(1, 1)
            assert (a + b).frobenius(1, 1) == fa + b.frobenius(1, 1)


def _min_poly_degree(a):
    # degree of the minimal polynomial of a over the base subfield,
    # by direct linear dependence of powers
    p, f = a.field.p, a.field.f
    vecs = [a.field.one()]
    while True:
        vecs.append(vecs[-1] * a)
        rows = [list(v.coeffs) for v in vecs]
        if _rank(rows, p) < len(rows):
            return len(vecs) - 1


def _rank(rows, p):
    rows = [list(r) for r in rows]
    rank = 0
    for col in range(len(rows[0])):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                c = rows[i][col]
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


@pytest.mark.parametrize("p,f", [(5, 2), (3, 3), (2, 4)])
def test_generates_matches_minimal_polynomial(p, f):
    # F_25, F_27, F_16: ff_generates agrees with minimal-polynomial degree
    field = ffq.FqField(p, f)
    for a in field.elements():
        if a.is_zero():
            continue
        assert ffq.ff_generates(a, 1) == (_min_poly_degree(a) == f)


def test_default_modulus_deterministic():
    assert ffq.default_modulus(5, 2) == ffq.default_modulus(5, 2)
    m = ffq.default_modulus(2, 11)      # p^f <= 3125 range
    f = ffq.FqField(2, 11, m)
    assert f.order == 2048
