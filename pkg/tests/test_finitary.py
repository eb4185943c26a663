from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hallp1.autop1 import closed_points
from hallp1.finitary import (INF, CohP1, Quiver, Tor, TorsionLocal, Window, aut_partition, coh, conjugate,
                             g_four, g_four_brute, gl_order, label_from_json, label_to_json, n_of,
                             partitions, point_degree, points_of_degree, quiver_hall_via_homs)


def test_partitions_and_conjugate():
    assert sorted(partitions(4)) == [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]
    assert len(list(partitions(6))) == 11
    for lam in partitions(6):
        assert conjugate(conjugate(lam)) == tuple(lam)
    assert n_of((2, 1)) == 1


def test_aut_orders():
    assert aut_partition((1,), 2) == 1
    assert aut_partition((1, 1), 2) == gl_order(2, 2) == 6
    assert aut_partition((2,), 3) == 6  # (k[t]/t^2)^* over F_3
    assert gl_order(3, 2) == 168


@pytest.mark.parametrize("q", [2, 3, 5])
def test_points_of_degree_match_closed_point_count(q):
    for d in (1, 2, 3):
        pts = points_of_degree(d, q)
        assert len(pts) == closed_points(d, q)
        assert all(point_degree(x) == d for x in pts)
    assert INF in points_of_degree(1, q)


def test_torsion_local_hall_polynomials():
    for q in (2, 3):
        tl = TorsionLocal(q)
        assert tl.hall(Tor((1,)), Tor((1,)), Tor((1, 1))) == q + 1
        assert tl.hall(Tor((1,)), Tor((1,)), Tor((2,))) == 1
        assert tl.hall(Tor((1,)), Tor((2,)), Tor((2, 1))) == q


@pytest.mark.parametrize("q", [2, 3])
def test_hall_numbers_count_submodules(q):
    # the Hall numbers of C add up to its number of submodules
    tl = TorsionLocal(q)
    from hallp1.finitary import local_submodules
    for lam in partitions(3):
        C = Tor(lam)
        total = sum(g for _, _, g in tl.subquotients(C))
        assert total == len(local_submodules(tl.p, tl.g, lam))


def test_line_bundle_product_split_case():
    bk = CohP1(2)
    assert bk.product(coh((1,)), coh((0,))) == {coh((1, 0)): 1}
    assert bk.product(coh((2,)), coh((-1,))) == {coh((2, -1)): 1}


def test_line_bundle_product_nonsplit():
    for q in (2, 3):
        bk = CohP1(q)
        out = bk.product(coh((0,)), coh((0,)))
        assert out == {coh((0, 0)): q + 1}
        out = bk.product(coh((-1,)), coh((1,)))
        # O(-1) in O(1)+O(-1) and in O(0)+O(0)
        assert set(out) == {coh((1, -1)), coh((0, 0))}


def test_count_line_subsheaves_brute_vs_product():
    bk = CohP1(2)
    V = coh((1, 0))
    for a in (-2, -1, 0):
        sat = bk.count_line_subsheaves(V, a, coh((1 - a,)))
        assert sat == bk.product(coh((a,)), coh((1 - a,))).get(V, 0)


def test_dualize():
    bk = CohP1(3)
    assert bk.dualize(coh((2, -1))) == coh((1, -2))
    with pytest.raises(ValueError):
        bk.dualize(coh((), [(INF, (1,))]))


def test_subquotients_agree_with_hall():
    bk = CohP1(2)
    w = Window(2, -2, 2, 2)
    for C in [coh((0, 0)), coh((1, -1), [(INF, (1,))]), coh((), [(INF, (2,))])]:
        for A, B, g in bk.subquotients(C, w):
            assert bk.hall(A, B, C) == g


def test_kronecker_basics():
    Q = Quiver.kronecker(2)
    assert Q.cartan() == [[2, -2], [-2, 2]]
    # three indecomposables of dim (1,1) over F_2 plus the semisimple one
    assert len(Q.objects_of_class((1, 1))) == 4


@pytest.mark.parametrize("Q", [Quiver.kronecker(2), Quiver.a2(2), Quiver.a2(3)])
def test_quiver_hall_two_routes(Q):
    objs = [o for n in range(3) for o in Q.objects(n)]
    objs = list(dict.fromkeys(objs))
    for A in objs:
        for B in objs:
            if sum(A.dims) + sum(B.dims) > 2:
                continue
            for C, g in Q.product(A, B).items():
                assert quiver_hall_via_homs(Q, A, B, C) == g


def test_g_four_brute_on_kronecker():
    Q = Quiver.kronecker(2)
    objs = [o for n in range(3) for o in Q.objects(n)]
    objs = list(dict.fromkeys(objs))
    small = [o for o in objs if sum(o.dims) <= 1]
    for A in objs:
        for B in objs:
            for M in small:
                for N in small:
                    assert g_four(Q, A, B, M, N) == g_four_brute(Q, A, B, M, N)


def test_label_json_roundtrip():
    bk = CohP1(3)
    x = points_of_degree(2, 3)[0]
    A = coh((1, -2), [(INF, (2,)), (x, (1,))])
    assert label_from_json(bk, label_to_json(bk, A)) == A
    tl = TorsionLocal(2)
    assert label_from_json(tl, label_to_json(tl, Tor((2, 1)))) == Tor((2, 1))


def test_unsupported_q_rejected():
    with pytest.raises(ValueError):
        CohP1(4)


def test_window_must_be_nonempty():
    with pytest.raises(ValueError):
        Window(2, 3, -3, 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3))
def test_line_products_preserve_class(a, b):
    bk = CohP1(2)
    for C in bk.product(coh((a,)), coh((b,))):
        assert bk.cls(C) == (2, a + b)
