from fractions import Fraction

import pytest

from drindex.family import (
    FiberSymbol, NotOneDimensional, SchExpression, UnsubstitutedP1,
    anomaly_relations, combo_add, combo_at_base_zero, combo_mul_base,
    combo_scale, fiber_integrate, index_chern_series, integrate_polynomial,
    proportionality_constants, rank_symbol, surviving_degrees,
    twisted_index_chern, verify_index_lift_identity,
)
from drindex.modforms import eisenstein_series, eta_inverse_power
from drindex.qseries import QSeries
from drindex.sympoly import GradedPolynomial

P = GradedPolynomial.base()
p1, p2, p3, p4 = (GradedPolynomial.p(i) for i in range(1, 5))

I_P2 = FiberSymbol((1,), 0)
I_P3 = FiberSymbol((0, 1), 0)


def test_integrate_kills_low_degrees():
    # P^n alone integrates to zero for every n
    for n in range(4):
        assert integrate_polynomial(P ** n * 2, 8) == ({} if n >= 0 else None)
    assert integrate_polynomial(p2, 8) == {I_P2: Fraction(1)}
    assert integrate_polynomial(P * p2, 8) == {FiberSymbol((1,), 1): Fraction(1)}
    # degree below the fiber dimension dies even with P factors
    assert integrate_polynomial(P ** 3 * p2, 6) == {FiberSymbol((1,), 3): Fraction(1)}
    assert integrate_polynomial(p2, 12) == {}


def test_integrate_rejects_p1():
    with pytest.raises(UnsubstitutedP1):
        integrate_polynomial(p1 * p2, 8)
    out = integrate_polynomial(p1 * p2, 8, substitute_p1=True)
    assert out == {FiberSymbol((1,), 1): Fraction(-1)}


def test_untwisted_symbols():
    assert rank_symbol(8) == {I_P2: Fraction(-1, 1440)}
    assert twisted_index_chern(8, 1, 0) == {I_P2: Fraction(-31, 180)}


def test_twisted_symbol_degree2_values():
    got = twisted_index_chern(8, 1, 2)
    assert got == {I_P3: Fraction(62, 7560), FiberSymbol((1,), 1): Fraction(13, 7560)}
    base = twisted_index_chern(8, 0, 2)
    assert base == {I_P3: Fraction(-16, 967680), FiberSymbol((1,), 1): Fraction(-44, 967680)}


def test_proportionality_table_m8():
    assert proportionality_constants(8, 0, 2) == [1, 248, 4124]
    assert proportionality_constants(8, 2, 2) == [1, -496, -20620]
    with pytest.raises(NotOneDimensional):
        proportionality_constants(8, 8, 1)


def test_proportionality_table_m6():
    assert proportionality_constants(6, 1, 1) == [1, 246]


def test_weight12_two_term_combination():
    # ch_8 classes for n >= 2 are combinations of the n = 0, 1 classes with
    # the echelon-basis expansion coefficients 196732 and -16
    base0 = combo_at_base_zero(twisted_index_chern(8, 0, 8))
    base1 = combo_at_base_zero(twisted_index_chern(8, 1, 8))
    got = combo_at_base_zero(twisted_index_chern(8, 2, 8))
    want = combo_add(combo_scale(base0, Fraction(196732)),
                     combo_scale(base1, Fraction(-16)))
    assert got == want


def test_anomaly_m6_and_m10():
    rels = anomaly_relations(6, n_max=1)
    assert rels[0]["alpha"] == [1, 246]
    rels10 = anomaly_relations(10, n_max=1)
    assert rels10[0]["alpha"] == [1, -494]


def test_anomaly_m20():
    rels = anomaly_relations(20)
    assert rels[0]["coefficients"] == (196870, -4)


def test_anomaly_rejects_other_dims():
    with pytest.raises(ValueError):
        anomaly_relations(8)


def test_p1_nonzero_relations():
    # the four displayed relations with p1(X) terms, in the free module
    q = 4
    nu0 = rank_symbol(8)
    ch2 = twisted_index_chern(8, 0, 2, q)
    ch4 = twisted_index_chern(8, 0, 4, q)
    ch2_v1 = twisted_index_chern(8, 1, 2, q)
    ch2_v2 = twisted_index_chern(8, 2, 2, q)
    ch4_v1 = twisted_index_chern(8, 1, 4, q)
    ch4_v2 = twisted_index_chern(8, 2, 4, q)
    want21 = combo_add(combo_scale(ch2, Fraction(-496)),
                       combo_mul_base(combo_scale(nu0, Fraction(30)), 1))
    assert ch2_v1 == want21
    want22 = combo_add(combo_scale(ch2, Fraction(-20620)),
                       combo_mul_base(combo_scale(nu0, Fraction(780)), 1))
    assert ch2_v2 == want22
    want41 = combo_add(combo_add(
        combo_scale(ch4, Fraction(488)),
        combo_mul_base(combo_scale(ch2, Fraction(-42)), 1)),
        combo_mul_base(combo_scale(nu0, Fraction(3, 2)), 2))
    assert ch4_v1 == want41
    want42 = combo_add(combo_add(
        combo_scale(ch4, Fraction(65804)),
        combo_mul_base(combo_scale(ch2, Fraction(-3108)), 1)),
        combo_mul_base(combo_scale(nu0, Fraction(66)), 2))
    assert ch4_v2 == want42


def test_sch_series_low_terms():
    sch = index_chern_series(8, 4, 4)
    # degree 0: -E4/1440 on I[p2]
    deg0 = sch.degree_component(0)
    assert deg0.series(I_P2) == eisenstein_series(4, 4).scale(Fraction(-1, 1440))
    # degree 4: ch2·E6 plus the D E4 correction from the G2 factor
    e6 = eisenstein_series(6, 4)
    want_p3 = e6.scale(Fraction(-1, 60480))
    assert sch.degree_component(4).series(I_P3) == want_p3


def test_sch_parity_and_sum_identity():
    sch = index_chern_series(8, 12, 4)
    assert sch.parity_ok()
    assert sch.degrees() == [0, 4, 8, 12]
    full = index_chern_series(8, 12, 4, normalized=False)
    for n in range(5):
        want = {}
        for j in surviving_degrees(8, 12):
            want = combo_add(want, twisted_index_chern(8, n, j, 4))
        assert full.coefficient(n) == want


def test_sch_q0_is_untwisted_index():
    sch = index_chern_series(8, 8, 3, normalized=False)
    got = {s: c for s, c in sch.coefficient(0).items() if s.degree(8) == 0}
    assert got == rank_symbol(8)


def test_surviving_degrees():
    assert surviving_degrees(8, 20) == [0, 2, 4, 6, 8, 10]
    assert surviving_degrees(6, 14) == [1, 3, 5, 7]


def test_verify_identity_small():
    rep = verify_index_lift_identity(8, 12, 5, check_internals=True)
    assert rep.equal and rep.first_mismatch is None
    rep6 = verify_index_lift_identity(6, 10, 5, check_internals=True)
    assert rep6.equal


def test_verify_report_json_shape():
    rep = verify_index_lift_identity(8, 8, 3, check_internals=False)
    doc = rep.to_jsonable()
    assert doc["status"] == "equal"
    assert set(doc) == {"claim", "status", "lhs", "rhs", "first_mismatch"}


def test_display_renders_pochhammer_structure():
    rep = verify_index_lift_identity(8, 12, 5, check_internals=False)
    text = rep.displays["lift_expansion"]
    assert "nu0*(E4 + 1/4*D[E4]*(P/2) + 1/40*D^2[E4]*(P/2)^2 + 1/720*D^3[E4]*(P/2)^3)" in text
    assert "ch2*(E6 + 1/6*D[E6]*(P/2) + 1/84*D^2[E6]*(P/2)^2)" in text
    assert "ch4*(E8 + 1/8*D[E8]*(P/2))" in text
    assert "ch6*(E10)" in text


def test_schexpression_mismatch_reporting():
    a = SchExpression(8, 8, 2, {I_P2: QSeries([Fraction(1), Fraction(2)], 2)})
    b = SchExpression(8, 8, 2, {I_P2: QSeries([Fraction(1), Fraction(3)], 2)})
    mism = a.first_mismatch(b)
    assert mism == {"degree": 0, "q_power": 1, "symbol": "I[p2]",
                    "lhs": "2", "rhs": "3"}
    assert a != b
    assert a == a
