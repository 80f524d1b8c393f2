from fractions import Fraction

import pytest

from drindex.e8 import (
    ModularMismatch, basic_character, bundle_character, e8_theta,
    theta_sum_expansion, verify_e8_identity,
)
from drindex.modforms import (
    ModularForm, QuasiModularForm, delta, eisenstein, eisenstein_series,
    eta_inverse_power,
)
from drindex.sympoly import GradedPolynomial


def e8_lattice_counts(n_max):
    """Count E8 lattice vectors of norm 2n by direct enumeration.

    The lattice is the set of vectors in Z^8 union (Z + 1/2)^8 whose
    coordinate sum is even; vectors are built coordinate by coordinate with
    the running norm pruned against the target.
    """
    counts = [0] * (n_max + 1)
    max_norm4 = 8 * n_max  # four times the squared length

    def walk(slot, norm4, total, halves):
        # coordinates are stored doubled: even for Z, odd for Z + 1/2;
        # membership asks the sum of true coordinates to be even, i.e. the
        # doubled total to vanish mod 4
        if slot == 8:
            if total % 4 == 0 and norm4 % 8 == 0:
                counts[norm4 // 8] += 1
            return
        c = 1 if halves else 0
        while c * c + norm4 <= max_norm4:
            for v in ({c, -c} if c else {0}):
                walk(slot + 1, norm4 + c * c, total + v, halves)
            c += 2
        return

    walk(0, 0, 0, False)
    walk(0, 0, 0, True)
    return counts


def test_theta_nullwert_against_lattice_enumeration():
    got = e8_theta(0, 3).at_z_zero()
    want = e8_lattice_counts(3)
    assert [int(c) for c in got.coeffs] == want
    assert want[1] == 240


def test_theta_nullwert_is_weight4_eisenstein():
    assert e8_theta(0, 10).at_z_zero() == eisenstein_series(4, 10)


def test_theta_u_exponents_collapse():
    th = e8_theta(2, 3)
    for i, p in enumerate(th.u_series.coeffs):
        if i % 8:
            assert p.is_zero() or p == 0


def test_theta_rejects_wide_windows():
    with pytest.raises(ValueError):
        e8_theta(8, 2)


def test_basic_character_dims():
    char = basic_character(3)
    assert char.dims == (1, 248, 4124, 34752)
    convolved = eta_inverse_power(8, 3) * eisenstein_series(4, 3)
    assert list(char.character.coeffs) == list(convolved.coeffs)


def test_theta_sum_expansion_h_parts():
    exp = theta_sum_expansion(6, 4)
    e4 = QuasiModularForm.promote(ModularForm.e4())
    assert exp.h_parts[0] == e4
    assert exp.h_parts[1] == eisenstein(6).scale(Fraction(-1, 12))
    assert exp.h_parts[2] == eisenstein(8).scale(Fraction(1, 288))
    assert exp.h_parts[3] == eisenstein(10).scale(Fraction(-1, 10368))


def test_theta_sum_expansion_ck_parts():
    exp = theta_sum_expansion(6, 4)
    e4 = QuasiModularForm.promote(ModularForm.e4())
    assert exp.ck_parts[0] == e4
    assert exp.ck_parts[1] == e4.derivative() / 4
    assert exp.ck_parts[2] == e4.derivative().derivative() / 40
    assert exp.ck_parts[3] == e4.derivative_n(3) / 720


def test_h_parts_are_modular():
    exp = theta_sum_expansion(4, 2)
    for p in exp.h_parts:
        assert p.is_modular()
    assert not exp.ck_parts[1].is_modular()


def test_bundle_character_constants():
    b = bundle_character(12, 3)
    P = GradedPolynomial.base()
    assert b[0] == GradedPolynomial.constant(1)
    q1 = b[1]
    assert q1.homogeneous_part(0) == GradedPolynomial.constant(248)
    assert q1.homogeneous_part(4) == P.scale(30)
    assert q1.homogeneous_part(8) == (P * P).scale(Fraction(3, 2))
    # rank tower: the coefficients of E4 times the eta prefactor
    ranks = [b[n].constant_term() for n in range(4)]
    assert ranks == [1, 248, 4124, 34752]


def test_bundle_character_window():
    with pytest.raises(ValueError):
        bundle_character(16, 2)


def test_e8_identity_holds():
    rep = verify_e8_identity(12, 6)
    assert rep.equal and rep.first_mismatch is None
    rep14 = verify_e8_identity(14, 6)
    assert rep14.equal


def test_e8_identity_negative_control():
    rep = verify_e8_identity(12, 6, impose_hypothesis=False)
    assert not rep.equal
    # the first mismatch sits in a symbol carried by the degree-4 component
    assert rep.first_mismatch["degree"] == 4
    assert rep.first_mismatch["symbol"] in ("I[p3]", "P*I[p2]")


def test_character_json():
    doc = basic_character(2).to_jsonable()
    assert doc["dims"] == ["1", "248", "4124"]
