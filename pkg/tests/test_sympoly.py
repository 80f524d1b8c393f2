import random
from fractions import Fraction

import pytest

from drindex.qseries import QSeries
from drindex.sympoly import (
    BadLeadingTerm, GradedPolynomial, SymmetricContext,
    chern_character_components, elementary_from_power_sums, evaluate_at_z_one,
    exp_poly_qseries, expand_symmetric_product, power_sums_from_elementary,
    symbol_power_sums,
)

P = GradedPolynomial.base()
p1, p2, p3, p4 = (GradedPolynomial.p(i) for i in range(1, 5))


def elementary_values(ys):
    # e_k of the squared root values, computed directly
    from itertools import combinations
    sq = [y * y for y in ys]
    out = []
    for k in range(1, len(ys) + 1):
        out.append(sum((  # noqa: C401
            _prod(c) for c in combinations(sq, k)), Fraction(0)))
    return out


def _prod(xs):
    out = Fraction(1)
    for x in xs:
        out *= x
    return out


def test_grading_and_arithmetic():
    assert (P * p2).max_degree() == 4 + 8
    assert (p1 + p1).terms == p1.scale(2).terms
    assert (p1 * p1 - p1 ** 2).is_zero()
    q = p1 * p2 + P
    assert q.homogeneous_part(4) == P
    assert q.truncate_degree(4) == P
    assert q.substitute_p1_with_negative_base() == p2 * (-P) + P


def test_two_variable_newton_identity():
    s = power_sums_from_elementary([p1, p2], 2)
    assert s[0] == p1
    assert s[1] == p1 ** 2 - p2.scale(2)
    e = elementary_from_power_sums(s, 2)
    assert e[0] == p1 and e[1] == p2


def test_newton_zero_case():
    zeros = [GradedPolynomial() for _ in range(4)]
    assert all(e.is_zero() for e in elementary_from_power_sums(zeros, 4))


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_newton_roundtrip(r):
    count = 6  # degree 24 in the p-grading
    s = symbol_power_sums(count, r)
    e = elementary_from_power_sums(s, count)
    for i in range(count):
        if i < r:
            assert e[i] == GradedPolynomial.p(i + 1)
        else:
            assert e[i].is_zero()


def test_newton_numeric_oracle():
    # roundtrip checked against direct substitution at rational points
    rng = random.Random(5)
    for _ in range(10):
        ys = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)]
        evals = elementary_values(ys)
        s = symbol_power_sums(5, 4)
        for n in range(1, 6):
            direct = sum(y ** (2 * n) for y in ys)
            assert s[n - 1].evaluate(Fraction(0), evals) == direct


def test_expand_two_factor():
    f2 = QSeries([Fraction(3), Fraction(1)], 4)
    kernel = [QSeries.one(4), QSeries.zero(4), f2]
    out = expand_symmetric_product(kernel, SymmetricContext(2, 8))
    assert out[0] == QSeries.constant(GradedPolynomial.constant(1), 4)
    assert out[1].is_zero()
    assert out[2] == f2.map(lambda c: p1.scale(c))
    assert out[4] == (f2 * f2).map(lambda c: p2.scale(c))


def test_expand_degree8_shape():
    f2 = QSeries([Fraction(2)], 2)
    f4 = QSeries([Fraction(5)], 2)
    kernel = [QSeries.one(2), QSeries.zero(2), f2, QSeries.zero(2), f4]
    out = expand_symmetric_product(kernel, SymmetricContext(4, 8))
    want = p1 ** 2 * Fraction(5) + p2 * (Fraction(4) - Fraction(10))
    assert out[4][0] == want


def test_expand_identity_kernel():
    out = expand_symmetric_product([Fraction(1), 0, Fraction(0)], SymmetricContext(3, 8))
    assert out[0] == GradedPolynomial.constant(1)
    assert all(e.is_zero() for e in out[1:])


def test_expand_rejects_bad_leading_term():
    with pytest.raises(BadLeadingTerm):
        expand_symmetric_product([Fraction(2), 0, Fraction(1)], SymmetricContext(2, 4))
    with pytest.raises(BadLeadingTerm):
        expand_symmetric_product([Fraction(1), Fraction(1)], SymmetricContext(2, 4))


def _z_mul(a, b, z_order):
    out = []
    for n in range(z_order + 1):
        acc = None
        for i in range(n + 1):
            if i < len(a) and n - i < len(b):
                term = a[i] * b[n - i]
                acc = term if acc is None else acc + term
        out.append(acc)
    return out


def test_expand_is_multiplicative():
    rng = random.Random(9)
    for _ in range(5):
        ctx = SymmetricContext(2, 12)

        def rand_kernel():
            coeffs = [QSeries.one(3), QSeries.zero(3)]
            for _ in range(2):
                coeffs.append(QSeries([Fraction(rng.randint(-4, 4)) for _ in range(4)], 3))
                coeffs.append(QSeries.zero(3))
            return coeffs[:5]

        f, g = rand_kernel(), rand_kernel()
        fg = _z_mul(f, g, 4)
        lhs = expand_symmetric_product(fg, ctx)
        rhs = _z_mul(expand_symmetric_product(f, ctx),
                     expand_symmetric_product(g, ctx), 4)
        for a, b in zip(lhs, rhs):
            assert a == b


def test_expand_specialization_oracle():
    # substituting rational roots reproduces the direct product
    rng = random.Random(21)
    kernel = [Fraction(1), 0, Fraction(1, 2), 0, Fraction(-1, 3), 0, Fraction(2)]
    ctx = SymmetricContext(3, 24)
    out = expand_symmetric_product(kernel, ctx)
    for _ in range(20):
        ys = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(3)]
        evals = elementary_values(ys)
        direct = [Fraction(1)]
        for n in range(1, len(kernel)):
            acc = Fraction(0)
            direct.append(acc)
        # direct product of polynomials F(z y_i) in z
        polys = []
        for y in ys:
            polys.append([kernel[j] * y ** j for j in range(len(kernel))])
        prod = [Fraction(1)] + [Fraction(0)] * (len(kernel) - 1)
        for poly in polys:
            new = [Fraction(0)] * len(prod)
            for i, a in enumerate(prod):
                for j, b in enumerate(poly):
                    if i + j < len(new):
                        new[i + j] += a * b
            prod = new
        for n in range(len(kernel)):
            got = out[n].evaluate(Fraction(0), evals) if n < len(out) else Fraction(0)
            assert got == prod[n]


def test_chern_character_components():
    zero = GradedPolynomial()
    c2 = p2
    ch = chern_character_components([zero, c2], 2, 8)
    assert ch[0] == GradedPolynomial.constant(8)
    assert ch[1].is_zero()
    assert ch[2] == -c2
    ch0 = chern_character_components([zero, zero, zero], 3, 5)
    assert all(c.is_zero() for c in ch0[1:])
    c1 = P
    ch1 = chern_character_components([c1], 2, 1)
    assert ch1[1] == c1
    assert ch1[2] == (c1 * c1) / 2


def test_exp_poly_qseries_exact():
    # exp((p1/2) q^0 + p1 q) splits as exp(p1/2)·exp(p1 q); degree cap 8 kills p1^3
    x = QSeries([p1.scale(Fraction(1, 2)), p1], 2)
    out = exp_poly_qseries(x, 8)
    half = GradedPolynomial.constant(1) + p1.scale(Fraction(1, 2)) + (p1 ** 2).scale(Fraction(1, 8))
    assert out[0] == half
    assert out[1] == half.mul_capped(p1, 8)
    assert out[2] == half.mul_capped((p1 * p1).scale(Fraction(1, 2)), 8)


def test_evaluate_at_z_one():
    entries = [GradedPolynomial.constant(1), GradedPolynomial(), p1, p2]
    total = evaluate_at_z_one(entries, cap=4)
    assert total == GradedPolynomial.constant(1) + p1
