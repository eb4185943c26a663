from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hallp1 import doubles as D
from hallp1.finitary import CohP1, Quiver, TorsionLocal, points_of_degree
from hallp1.hallhopf import passed

TL = TorsionLocal(2)
OBJS = TL.objects(2)
TAGS = [((0,), 1), ((0,), -1)]


@pytest.fixture(scope="module")
def bk():
    return CohP1(2)


@pytest.fixture(scope="module")
def w():
    return D.default_window(2)


def _keys(tags=TAGS, alphas=((0,), (1,))):
    return [(L, a, t, R) for L in OBJS for a in alphas for t in tags for R in OBJS]


@pytest.mark.parametrize("side", ["heis", "check"])
def test_embedding_into_literal_double(side):
    hd = D.HopfData(TL, modulus=2)
    rep = D.verify_embedding(hd, side, _keys()[::7], D.presentation_skip(TL, side))
    assert passed(rep) and rep["cases"]


def test_embedding_without_skip_sees_the_weyl_relation():
    hd = D.HopfData(TL, modulus=2)
    assert not passed(D.verify_embedding(hd, "heis", _keys()[::7]))


KEYS = _keys(tags=[((0,), 1)], alphas=((0,), (1,), (-1,)))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["heis", "check"]), st.lists(st.sampled_from(KEYS), min_size=3, max_size=3))
def test_double_product_associative(side, ks):
    a, b, c = [D.DoubleElem(TL, side, {k: 1}) for k in ks]
    assert (a * b) * c == a * (b * c)


def test_kashaev_embedding_and_control():
    hd = D.HopfData(TL, modulus=2)
    assert passed(D.kashaev_check(hd, D.kashaev_pairs(hd, 2)))
    bad = D.HopfData(TL, modulus=2, corrupt=(((0,), OBJS[2]), 2))
    assert not passed(D.kashaev_check(bad, D.kashaev_pairs(bad, 2)))


def test_boson_commutators(bk):
    x1 = points_of_degree(1, 2)[0]
    x2 = points_of_degree(2, 2)[0]
    assert [D.boson_commutator(bk, x1, d, d) for d in (1, 2, 3)] == [1, Fraction(3, 2), Fraction(7, 3)]
    assert D.boson_commutator(bk, x2, 1, 1) == 3
    assert D.boson_commutator(bk, x1, 1, 2) == 0


@pytest.mark.parametrize("Q", [Quiver.a2(2), Quiver.kronecker(2)])
def test_cross_formula_three_routes(Q):
    assert passed(D.verify_cross_formula(Q, (1, 1)))


@pytest.mark.parametrize("rel", D.THM65)
def test_double_relations(bk, w, rel):
    assert passed(D.verify_thm65(bk, rel, 2, w))


def test_inverse_orientation_recorded(bk, w):
    assert D.verify_thm65(bk, "6.5.4", 2, w)["orientation"] == "inverse"


@pytest.mark.parametrize("rel", D.THM67)
def test_generating_function_relations(bk, w, rel):
    rep = D.verify_thm67(bk, rel, 2, w)
    assert passed(rep)
    if rel == "6.7.5":
        assert rep["orientation"] == "flipped"


def test_printed_kappa_minus_fails(bk, w):
    assert not passed(D.verify_thm67(bk, "6.7.5", 2, w, printed_minus=True))


def test_commutator_of_constant_terms(bk, w):
    e, f = D.Eplus(bk, 0, w=w), D.Eminus(bk, 0, w=w)
    K = D.restricted_identify(D.d_cartan(bk, (1, 0), w=w))
    assert D.restricted_identify(e * f - f * e) == K


def test_json_shape(bk, w):
    js = D.Eplus(bk, 0, w=w).to_json()
    assert js["algebra"] == "heis"
    assert [f["side"] for f in js["terms"][0]["factors"]] == ["minus", "cartan", "plus"]
