import random
from fractions import Fraction

import pytest

from drindex.qseries import (
    BadConstantTerm, NonUnitConstantTerm, QSeries, derive_q, exp_series,
    geometric, log_series, to_jsonable,
)


def rand_series(rng, order, unit=False):
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(order + 1)]
    if unit:
        while coeffs[0] == 0:
            coeffs[0] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return QSeries(coeffs, order)


def test_difference_of_squares():
    one_plus = QSeries([1, 1], 2)
    one_minus = QSeries([1, -1], 2)
    assert one_plus * one_minus == QSeries([1, 0, -1], 2)


def test_geometric_telescopes():
    n = 12
    g = geometric(n)
    assert (QSeries([1, -1], n) * g).truncate(n - 1) == QSeries.one(n - 1)


def test_invert_geometric():
    assert QSeries([Fraction(1), Fraction(-1)], 8).invert() == geometric(8)


def test_invert_zero_constant_rejected():
    with pytest.raises(NonUnitConstantTerm):
        QSeries([0, 1], 4).invert()


def test_mul_invert_roundtrip_randomized():
    rng = random.Random(7)
    for _ in range(50):
        order = rng.randint(1, 20)
        a = rand_series(rng, order, unit=True)
        assert a * a.invert() == QSeries.one(order)


def test_ring_axioms_randomized():
    rng = random.Random(11)
    for _ in range(40):
        order = rng.randint(0, 20)
        a, b, c = (rand_series(rng, order) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)


def test_exp_definition():
    e = exp_series(QSeries([0, 1], 3))
    assert e == QSeries([1, 1, Fraction(1, 2), Fraction(1, 6)], 3)


def test_log_definition():
    l = log_series(QSeries([1, -1], 3))
    assert l == QSeries([0, -1, Fraction(-1, 2), Fraction(-1, 3)], 3)


def test_exp_log_roundtrip():
    u = QSeries([1, 5, 7], 6)
    assert exp_series(log_series(u)) == u
    a = QSeries([0, 2, Fraction(1, 3), -4], 6)
    assert log_series(exp_series(a)) == a


def test_exp_log_guards():
    with pytest.raises(BadConstantTerm):
        exp_series(QSeries([1, 1], 2))
    with pytest.raises(BadConstantTerm):
        log_series(QSeries([0, 1], 2))


def test_derive_monomial_and_constant():
    for n in range(5):
        assert derive_q(QSeries.monomial(1, n, 6)) == QSeries.monomial(n, n, 6)
    assert derive_q(QSeries.constant(9, 4)).is_zero()


def test_derive_leibniz_randomized():
    rng = random.Random(3)
    for _ in range(30):
        order = rng.randint(0, 20)
        a, b = rand_series(rng, order), rand_series(rng, order)
        assert derive_q(a * b) == derive_q(a) * b + a * derive_q(b)


def test_min_order_truncation():
    a = QSeries([1, 2, 3, 4], 3)
    b = QSeries([1, 1], 1)
    assert (a + b).order == 1
    assert (a * b).order == 1


def test_shift():
    a = QSeries([0, 0, 1, 5], 3)
    assert a.shift(-2) == QSeries([1, 5], 1)
    with pytest.raises(ValueError):
        QSeries([1, 0], 1).shift(-1)


def test_json_roundtrip_strings():
    doc = to_jsonable(QSeries([Fraction(-3, 7), Fraction(2)], 1))
    assert doc == {"truncation_order": 1,
                   "coefficients": [{"n": "-3", "d": "7"}, {"n": "2", "d": "1"}]}
