from fractions import Fraction

import pytest
import sympy

from drindex.modforms import (
    InsufficientOrder, ModularForm, NotInSpace, QuasiModularForm, bernoulli,
    delta, dim_modular, dim_modular_closed, echelon_basis, eisenstein,
    eisenstein_series, eta_inverse_power, modular_monomials, qm_reduce,
    quasimodular_monomials,
)
from drindex.qseries import QSeries, derive_q

E2 = QuasiModularForm.e2()
E4 = ModularForm.e4()
E6 = ModularForm.e6()


def colored_partition_series(colors, order):
    # independent oracle for prod (1-q^n)^(-colors): dynamic programming
    # over parts, each part size contributing a multiset of colored parts
    coeffs = [1] + [0] * order
    for size in range(1, order + 1):
        for _ in range(colors):
            for n in range(size, order + 1):
                coeffs[n] += coeffs[n - size]
    return coeffs


def test_bernoulli_against_sympy():
    for two_k in (2, 4, 6, 8, 10, 12, 20, 30):
        assert bernoulli(two_k) == Fraction(sympy.Rational(sympy.bernoulli(two_k)))
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_eisenstein_expansions_verbatim():
    assert eisenstein_series(2, 3) == QSeries([1, -24, -72, -96], 3)
    assert eisenstein_series(4, 3) == QSeries([1, 240, 2160, 6720], 3)
    assert eisenstein_series(6, 3) == QSeries([1, -504, -16632, -122976], 3)


def test_eisenstein_weight8_is_e4_squared():
    e8 = eisenstein(8)
    assert e8.is_modular()
    assert e8.as_modular() == E4 * E4
    assert eisenstein_series(8, 1) == QSeries([1, 480], 1)


def test_delta_expansion_and_relation():
    d = delta()
    assert d.expansion(3) == QSeries([0, 1, -24, 252], 3)
    assert d.expansion(3)[0] == 0
    lhs = d.scale(1728) + E6 * E6 - E4 * E4 * E4
    assert lhs.is_zero()


def test_eta_inverse_power_against_partition_oracle():
    for m in (1, 6, 8):
        got = eta_inverse_power(m, 10)
        want = colored_partition_series(m, 10)
        assert list(got.coeffs) == [Fraction(v) for v in want]
    assert eta_inverse_power(0, 5) == QSeries.one(5)
    assert eta_inverse_power(6, 1) == QSeries([1, 6], 1)
    assert eta_inverse_power(8, 3) == QSeries([1, 8, 44, 192], 3)


def test_qm_reduce_derivative_of_e4():
    de4 = qm_reduce(derive_q(eisenstein_series(4, 20)), 6)
    # (E2 E4 - E6)/3
    want = (E2 * E4 - QuasiModularForm.promote(E6)) / 3
    assert de4 == want


def test_qm_reduce_identity_and_failures():
    red = qm_reduce(eisenstein_series(4, 16), 4)
    assert red.is_modular() and red.as_modular() == E4
    with pytest.raises(NotInSpace):
        qm_reduce(QSeries([1, 1] + [0] * 18, 19), 4)
    with pytest.raises(InsufficientOrder):
        qm_reduce(QSeries([1, 240], 1), 4)


def test_ramanujan_derivative_identities():
    de2 = E2.derivative()
    assert de2 == (E2 * E2 - QuasiModularForm.promote(E4)) / 12
    de4 = QuasiModularForm.promote(E4).derivative()
    assert de4 == (E2 * E4 - QuasiModularForm.promote(E6)) / 3
    de6 = QuasiModularForm.promote(E6).derivative()
    assert de6 == (E2 * E6 - QuasiModularForm.promote(E4 * E4)) / 2
    dd = QuasiModularForm.promote(delta()).derivative()
    assert dd == E2 * delta()


def test_derivative_matches_series_derivative():
    for f in (QuasiModularForm.promote(E4), E2, QuasiModularForm.promote(delta()),
              E2 * E4, QuasiModularForm.promote(E4 * E6)):
        assert f.derivative().expansion(12) == derive_q(f.expansion(12))


def test_derivative_closure_weight_24():
    for w in range(0, 26, 2):
        for (a, b) in modular_monomials(w):
            f = ModularForm(w, {(a, b): Fraction(1)})
            out = qm_reduce(derive_q(f.expansion(len(quasimodular_monomials(w + 2)) + 12)), w + 2)
            assert out == f.derivative()


def test_dimension_formula_agreement():
    for w in range(0, 102, 2):
        assert dim_modular(w) == dim_modular_closed(w)


def test_weight_additivity_of_products():
    f = E4 * E6
    red = qm_reduce(f.expansion(len(quasimodular_monomials(10)) + 12), 10)
    assert red == f


def test_echelon_basis_728():
    basis = echelon_basis(12, 8)
    assert len(basis) == 2
    want0 = E4 ** 3 - delta().scale(728)
    assert basis[0] == want0
    assert basis[1] == delta()


def test_echelon_basis_740_and_one_dim():
    basis = echelon_basis(12, 20)
    assert basis[0] == E4 ** 3 - delta().scale(740)
    assert basis[1] == delta()
    assert echelon_basis(4, 8).elements == (E4,)
    assert echelon_basis(2, 8).is_empty


def test_echelon_triangularity_through_weight_26():
    for m in (6, 8, 20):
        for w in range(4, 28, 2):
            basis = echelon_basis(w, m)
            s = len(basis)
            eta = eta_inverse_power(m, s + 3)
            for i, phi in enumerate(basis):
                exp = eta * phi.expansion(s + 3)
                for n in range(s):
                    assert exp[n] == (1 if n == i else 0)


def test_j_cube_root_integrality():
    prod = eta_inverse_power(8, 20) * eisenstein_series(4, 20)
    for c in prod.coeffs:
        assert c.denominator == 1 and c > 0


def test_weight_mismatch_raises():
    from drindex.modforms import WeightError
    with pytest.raises(WeightError):
        E4 + E6
