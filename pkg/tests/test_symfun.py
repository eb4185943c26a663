from fractions import Fraction

import pytest

from hallp1.finitary import partitions
from hallp1.scalars import Scalar
from hallp1.symfun import (SymFn, b_factor, b_factor_from_aut, cauchy_check, elementary, green_macdonald_check,
                           hl_expand, kostka, macdonald_pair, power_sum)


def _t(q):
    return Scalar(Fraction(1, q), 0, q)


def test_hl_of_column_is_elementary():
    t = _t(2)
    assert hl_expand((1, 1), 3, t) == elementary((2,), 3)
    assert hl_expand((1, 1, 1), 3, t) == elementary((3,), 3)


def test_hl_of_row_at_t_zero_is_complete():
    # P_(2)(z; 0) = s_(2) = m_(2) + m_(1,1)
    P = hl_expand((2,), 2, Scalar(0, 0, 2))
    assert P.to_monomial().coeffs == {(2,): 1, (1, 1): 1}


def test_hl_stable_in_number_of_variables():
    t = _t(3)
    for mu in [(2,), (2, 1), (1, 1)]:
        small = hl_expand(mu, 3, t).to_monomial().coeffs
        big = hl_expand(mu, 4, t).to_monomial().coeffs
        assert {k: v for k, v in big.items() if len(k) <= 3} == small


def test_kostka_values():
    assert kostka((2, 1), (1, 1, 1)) == 2
    assert kostka((3,), (1, 1, 1)) == 1
    assert kostka((1, 1, 1), (2, 1)) == 0
    assert kostka((2, 2), (1, 1, 1, 1)) == 2


def test_basis_roundtrip():
    t = _t(2)
    f = hl_expand((2, 1), 3, t) + power_sum((1, 1, 1), 3)
    for basis in ("powerSum", "elementary", "hl"):
        assert f.to(basis, t) == f


def test_unknown_basis():
    with pytest.raises(ValueError):
        SymFn("schur", {}, 2)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_b_factor_two_routes(q):
    for n in range(1, 5):
        for mu in partitions(n):
            assert b_factor(tuple(mu), _t(q)) == b_factor_from_aut(tuple(mu), q)


def test_power_sum_norm():
    t = _t(2)
    p = power_sum((2,), 2, 2)
    assert macdonald_pair(p, p, t) == Fraction(2) / (1 - Fraction(1, 4))


def test_cauchy_identity_and_control():
    t = _t(2)
    assert cauchy_check(t, 3, 2)["status"] == "pass"
    assert cauchy_check(t, 3, 2, corrupt=True)["status"] == "fail"


@pytest.mark.parametrize("q", [2, 3])
def test_green_pairing_matches_macdonald(q):
    assert green_macdonald_check(q, 2)["status"] == "pass"
