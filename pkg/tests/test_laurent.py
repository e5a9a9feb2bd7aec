from __future__ import annotations

import pickle

import pytest

from src.laurent import LaurentPoly, loop_power


def test_zero_polynomial():
    zero = LaurentPoly()
    assert zero.is_zero()
    assert zero.span is None
    assert zero.to_text() == "0"
    assert LaurentPoly({3: 0}) == zero


def test_arithmetic():
    a = LaurentPoly({1: 1, -1: 1})
    assert a * a == LaurentPoly({2: 1, 0: 2, -2: 1})
    assert a - a == LaurentPoly()
    assert 2 * a == a + a
    assert a + 1 == LaurentPoly({1: 1, 0: 1, -1: 1})
    assert (a ** 3).span == 6


def test_loop_value_and_powers():
    d = LaurentPoly.loop_value()
    assert d == LaurentPoly({2: -1, -2: -1})
    assert loop_power(0) == 1
    assert loop_power(2) == d * d
    assert loop_power(70) == d ** 70


def test_degrees_reflect_shift():
    p = LaurentPoly({5: -1, -3: -1, -7: 1})
    assert (p.max_degree, p.min_degree, p.span) == (5, -7, 12)
    assert p.reflect() == LaurentPoly({-5: -1, 3: -1, 7: 1})
    assert p.shift(2).coefficient(7) == -1


def test_text_and_json():
    p = LaurentPoly({5: -1, -3: -1, -7: 1})
    assert p.to_text() == "-1*A^5 + -1*A^-3 + 1*A^-7"
    assert p.to_json() == [[-7, "1"], [-3, "-1"], [5, "-1"]]
    assert LaurentPoly.from_json(p.to_json()) == p


def test_big_coefficients_stay_exact():
    p = LaurentPoly({0: 1 << 80})
    assert (p * p).coefficient(0) == 1 << 160


def test_immutable_and_picklable():
    p = LaurentPoly({1: 2})
    with pytest.raises(AttributeError):
        p.foo = 1
    assert pickle.loads(pickle.dumps(p)) == p
    assert hash(p) == hash(LaurentPoly({1: 2}))
