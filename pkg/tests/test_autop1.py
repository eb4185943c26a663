from fractions import Fraction

import pytest

from hallp1 import autop1 as A
from hallp1.finitary import CohP1, coh
from hallp1.hallhopf import passed


@pytest.fixture(scope="module")
def bk():
    return CohP1(2)


def _points(bk):
    return [T for T in bk.torsion_objects(1) if T.torsion]


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_zeta_matches_euler_product(q):
    assert A.zeta_p1(q).expand(6, 0) == A.euler_product(q, 5)


def test_closed_point_counts():
    assert [A.closed_points(d, 2) for d in range(1, 6)] == [3, 1, 2, 3, 6]
    with pytest.raises(ValueError):
        A.closed_points(0, 2)


def test_zeta_functional_ratio_is_q_t_squared():
    r = A.zeta_functional_ratio(3)
    assert r.expand(4, 0) == [0, 0, 3, 0]


def test_hecke_on_lines_shifts_degree(bk):
    x = _points(bk)[0]
    f = A.AutFn(1, {coh((0,)): 1})
    assert A.hecke_apply(bk, x, f).values == {coh((1,)): 1}
    assert A.hecke_dual_apply(bk, x, f).values == {coh((-1,)): 1}


def test_hecke_operators_commute(bk):
    x, y = _points(bk)[:2]
    f = A.AutFn(2, {coh((0, 0)): 1, coh((1, -1)): 2})
    assert A.hecke_apply(bk, x, A.hecke_apply(bk, y, f)) == A.hecke_apply(bk, y, A.hecke_apply(bk, x, f))


def test_hecke_dual_is_adjoint(bk):
    x = _points(bk)[0]
    f = A.AutFn(2, {coh((0, 0)): 1, coh((1, -1)): 2})
    g = A.AutFn(2, {coh((1, 0)): 1, coh((2, -1)): 5, coh((0, 0)): 3})
    assert A.af_pair(bk, A.hecke_apply(bk, x, f), g) == A.af_pair(bk, f, A.hecke_dual_apply(bk, x, g))


def test_hecke_rejects_bundle_index(bk):
    with pytest.raises(ValueError):
        A.hecke_apply(bk, coh((0,)), A.AutFn(1, {coh((0,)): 1}))


def test_eisenstein_counts(bk):
    table, G = A.eisenstein_series(bk, coh((0, 0)), 12)
    assert table[0] == 3 and table[-1] == 6
    assert G.den_degree() <= 2
    with pytest.raises(ValueError):
        A.eisenstein_series(bk, coh((0,)))


def test_commutator_with_a(bk):
    rep = A.commutator_ad_check(bk)
    assert passed(rep)
    assert rep["printed_match"] is False


def test_constant_term(bk):
    assert passed(A.verify_constant_term(bk))


def test_printed_antipode_piece_differs(bk):
    for d in (1, 2):
        assert A.antipode_E_piece(bk, d, 0) != A.printed_antipode_E_piece(bk, d, 0)


def test_unknown_relation(bk):
    with pytest.raises(ValueError):
        A.verify_thm33(bk, "nope")


def test_pairings_orientation(bk):
    rep, orient = A.verify_pairings(bk, 1, 2)
    assert passed(rep) and orient == "reversed"


def test_positivity(bk):
    assert passed(A.positivity_probe(bk, 3))
    assert A.positivity_probe(bk, 0)["cases"] == []


def test_log_zeta_ratio_first_coefficient():
    # log zeta(x) has x-coefficient 1 + q, log zeta(qx) has q + q^2
    c = A.log_zeta_ratio(2, 1, 2, 1)
    assert c[1] == Fraction(1 + 2 - 2 - 4)
