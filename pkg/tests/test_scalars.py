from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hallp1.scalars import (LaurentPoly, RationalFn, RecurrenceError, Scalar, berlekamp_massey,
                            series_to_rational, vpow)

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
qs = st.sampled_from([2, 3, 5])


@st.composite
def scalars(draw, q=None):
    q = q or draw(qs)
    return Scalar(draw(fracs), draw(fracs), q)


@given(qs.flatmap(lambda q: st.tuples(scalars(q), scalars(q), scalars(q))))
def test_field_axioms(t):
    x, y, z = t
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x - x == Scalar(0, 0, x.q)


@given(scalars())
def test_inverse(x):
    if not x:
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == Scalar(1, 0, x.q)
        assert x / x == 1


@given(qs, st.integers(-8, 8), st.integers(-8, 8))
def test_vpow_is_a_character(q, m, n):
    assert vpow(m, q) * vpow(n, q) == vpow(m + n, q)
    assert vpow(2, q) == q


def test_perfect_square_folds_v():
    assert Scalar(0, 1, 4) == Scalar(2, 0, 4)
    assert Scalar(0, 1, 4).b == 0


def test_mixing_q_is_an_error():
    with pytest.raises(ValueError):
        Scalar(1, 1, 2) + Scalar(1, 1, 3)


def test_json_roundtrip():
    x = Scalar(Fraction(1, 2), Fraction(-3, 4), 3)
    assert Scalar.from_json(x.to_json(), 3) == x
    assert x.to_json() == {"a": "1/2", "b": "-3/4"}


def test_laurent_arithmetic():
    t = LaurentPoly.monomial(1)
    p = (1 - t) * (1 + t)
    assert p == 1 - t * t
    assert (t ** -1 * t) == LaurentPoly.const(1)
    assert p(Fraction(1, 2)) == Fraction(3, 4)
    assert p.low() == 0 and p.high() == 2


def test_rational_expansion_geometric():
    one = LaurentPoly.const(1)
    r = RationalFn(one, one - LaurentPoly.monomial(1, 2))
    assert r.expand(5, 0) == [1, 2, 4, 8, 16]


def test_rational_reduces():
    t = LaurentPoly.monomial(1)
    r = RationalFn((1 - t) * (1 + t), 1 - t)
    assert r.den_degree() == 0
    assert r == RationalFn(1 + t, LaurentPoly.const(1))


def test_bm_fibonacci():
    fib = [1, 1]
    while len(fib) < 12:
        fib.append(fib[-1] + fib[-2])
    L, C, _ = berlekamp_massey(fib)
    assert L == 2
    assert C == [1, -1, -1]


@settings(max_examples=40)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=2), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_series_to_rational_recovers(num, den_tail):
    t = LaurentPoly.monomial(1)
    den = 1 + den_tail[0] * t + den_tail[1] * t * t
    numer = LaurentPoly(dict(enumerate(num)))
    r = RationalFn(numer, den)
    terms = r.expand(12, 0)
    got = series_to_rational(terms, 3)
    assert got.expand(12, 0) == terms
    assert got == r or got.den_degree() < r.den_degree()


def test_series_to_rational_reports_break():
    terms = [1, 2, 4, 8, 16, 32, 64, 128, 256, 7]
    with pytest.raises(RecurrenceError) as e:
        series_to_rational(terms, 2)
    assert e.value.position == 9


def test_series_to_rational_needs_terms():
    with pytest.raises(RecurrenceError):
        series_to_rational([1, 1, 1], 4)
