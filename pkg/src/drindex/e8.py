"""The E8 theta function, the basic-representation character, and the
identification of the fiber-dimension-8 index character with the character
of the associated level-one bundle.

The theta function of the E8 root lattice is assembled from the four
classical theta products over eight variables.  Everything stays symmetric
and even, so the z-data is carried by the elementary symmetric polynomials
e_i of the squared variables (stored in the fiber slots of
:class:`GradedPolynomial`; each e_i carries z-degree 2i).  The all-odd
product of plain theta factors is O(z^8) and is therefore absent from every
expansion used here; requesting z_order >= 8 is refused rather than
silently truncated.

The base variable is u = q^(1/8).  Individual products carry u-powers in
steps of 4, but the assembled sum collapses to honest q-powers, and the
conversion enforces that.
"""

from fractions import Fraction
from functools import lru_cache

from .charclasses import FractionalResidue, theta_kernel, u_to_q
from .family import (
    FiberSymbol, SchExpression, VerificationReport, combo_render,
    index_chern_series, rank_symbol, split_base_series, twisted_index_chern,
)
from .jacobi import pochhammer
from .modforms import (
    ModularForm, QuasiModularForm, REDUCTION_MARGIN, eisenstein,
    eisenstein_unnormalized_series, eta_inverse_power, qm_reduce,
    quasimodular_monomials,
)
from .qseries import QSeries
from .sympoly import (
    GradedPolynomial, SymmetricContext, chern_character_components,
    evaluate_at_z_one, exp_poly_qseries, expand_symmetric_product,
)


class ModularMismatch(ValueError):
    """A theta coefficient failed its one-dimensional membership test."""


RANK = 8
ADJOINT_DIM = 248
DYNKIN_INDEX = 60  # the adjoint representation's second Chern calibration
# character of the adjoint bundle over the classifying space: 248 + 60u + 6u^2
CHAR_U_COEFFS = (Fraction(248), Fraction(60), Fraction(6))


class ThetaE8Expansion:
    """The lattice theta function as a q-series of e_i polynomials."""

    __slots__ = ("z_order", "q_order", "u_series", "q_series")

    def __init__(self, z_order, q_order, u_series, q_series):
        self.z_order = z_order
        self.q_order = q_order
        self.u_series = u_series
        self.q_series = q_series

    def at_z_zero(self):
        """The Nullwert: a plain q-series (the weight-4 Eisenstein series)."""
        return self.q_series.map(lambda p: p.constant_term())

    def slice(self, key):
        """The q-series multiplying a given e-monomial key."""
        return self.q_series.map(lambda p: p.terms.get(key, Fraction(0)))

    def keys(self):
        out = set()
        for p in self.q_series.coeffs:
            out.update(p.terms)
        return sorted(out)


def _stripped_ratio(kind, z_order, q_order):
    """theta_kind(z)/theta_kind(0) as a z-series over u with constant 1."""
    kernel = theta_kernel(kind, z_order, q_order)
    coeffs = list(kernel.z_coeffs)
    if kind == 2:
        coeffs = [c.shift(-1) for c in coeffs]
    inv = coeffs[0].invert()
    return [c * inv for c in coeffs], kernel.z_coeffs[0] if kind != 2 else coeffs[0]


@lru_cache(maxsize=None)
def e8_theta(z_order, q_order):
    """Half the sum of the three even eight-fold theta products (the all-odd
    product only contributes from z^8 on, hence the z_order < 8 limit)."""
    if z_order >= 8:
        raise ValueError("the all-odd theta product enters at z^8; "
                         "expansions are supported for z_order <= 7")
    u_order = 8 * q_order + 7
    total = None
    for kind in (2, 3, 4):
        ratio, zero_part = _stripped_ratio(kind, z_order, q_order)
        entries = expand_symmetric_product(ratio, SymmetricContext(RANK, 2 * z_order))
        spread = evaluate_at_z_one(entries)
        if kind == 2:
            # zero_part was stripped of one u factor per variable
            prefactor = (zero_part ** 8).shift(8).truncate(u_order)
        else:
            prefactor = zero_part ** 8
        part = spread * prefactor
        total = part if total is None else total + part
    total = total.scale(Fraction(1, 2))
    q_series = _u_series_to_q(total)
    return ThetaE8Expansion(z_order, q_order, total, q_series.truncate(q_order))


def _u_series_to_q(series):
    for i, p in enumerate(series.coeffs):
        if i % 8 and not (p == 0 or (isinstance(p, GradedPolynomial) and p.is_zero())):
            raise FractionalResidue("u^%d survives the theta assembly" % i)
    coeffs = []
    for k in range(series.order // 8 + 1):
        p = series.coeffs[8 * k]
        coeffs.append(p if isinstance(p, GradedPolynomial)
                      else GradedPolynomial.constant(p) if p != 0 else GradedPolynomial())
    return QSeries(coeffs, series.order // 8)


class E8CharacterData:
    """Level-one character data: the z = 0 character series and the dims."""

    __slots__ = ("character", "dims")

    def __init__(self, character, dims):
        self.character = character
        self.dims = tuple(dims)

    def to_jsonable(self):
        return {"dims": [str(d) for d in self.dims],
                "character": [str(c) for c in self.character.coeffs]}


def basic_character(q_order):
    """The graded dimensions of the basic representation: the normalized
    theta Nullwert times the eta prefactor, starting 1, 248, 4124, ..."""
    nullwert = e8_theta(0, q_order).at_z_zero()
    char = eta_inverse_power(RANK, q_order) * nullwert
    dims = []
    for c in char.coeffs:
        c = Fraction(c)
        if c.denominator != 1 or c < 0:
            raise ModularMismatch("character dimension %s is not a natural number" % c)
        dims.append(int(c))
    if dims[0] != 1 or dims[1] != ADJOINT_DIM:
        raise ModularMismatch("character head %s is wrong" % dims[:2])
    return E8CharacterData(char, dims)


class ThetaSumExpansion:
    """Both normal forms of the even theta sum, with membership certificates.

    h_parts[i]:  the modular coefficient of (e1/2)^i after multiplying the
                 G2 compensator, i.e. (-1)^i/(12^i i!) E_{4+2i};
    ck_parts[i]: the quasimodular coefficient of (e1/2)^i of the bare sum,
                 i.e. D^i E4 / (i! (4)_i).
    """

    __slots__ = ("h_parts", "ck_parts", "z_order", "q_order")

    def __init__(self, h_parts, ck_parts, z_order, q_order):
        self.h_parts = tuple(h_parts)
        self.ck_parts = tuple(ck_parts)
        self.z_order = z_order
        self.q_order = q_order

    def to_jsonable(self):
        return {"h_parts": [p.to_jsonable() for p in self.h_parts],
                "ck_parts": [p.to_jsonable() for p in self.ck_parts]}


def _pure_e1_slices(theta, q_order):
    """Split the theta sum by e1-power; every mixed e-monomial must vanish."""
    slices = {}
    for key in theta.keys():
        if any(key[i] for i in range(2, len(key))) or (key and key[0]):
            if not theta.slice(key).is_zero():
                raise ModularMismatch("coefficient of %s fails to vanish" % (key,))
            continue
        k = key[1] if len(key) > 1 else 0
        slices[k] = theta.slice(key)
    return slices


@lru_cache(maxsize=None)
def theta_sum_expansion(z_order=6, q_order=None):
    """Expand the even theta sum in powers of e1/2 and certify both normal
    forms against the one-dimensional weight spaces."""
    if z_order > 6:
        raise ValueError("the expansion window closes at z^6")
    n_parts = z_order // 2 + 1
    if q_order is None:
        q_order = 0
    need = max(q_order,
               len(quasimodular_monomials(4 + 2 * (n_parts - 1))) + REDUCTION_MARGIN)
    theta = e8_theta(z_order, need)
    slices = _pure_e1_slices(theta, need)

    # bare sum: Cohen-Kuznetsov shape over E4
    ck_parts = []
    deriv = QuasiModularForm.promote(ModularForm.e4())
    for i in range(n_parts):
        got = qm_reduce(slices.get(i, QSeries.zero(need)).scale(Fraction(2 ** i)),
                        4 + 2 * i)
        want = deriv / (_fact(i) * pochhammer(4, i))
        if got != want:
            raise ModularMismatch("bare theta coefficient %d is not the lift term" % i)
        ck_parts.append(got)
        deriv = deriv.derivative()

    # compensated form: multiply e^{G2 e1} and reduce each slice
    g2 = eisenstein_unnormalized_series(2, need)
    e1 = GradedPolynomial.p(1)
    compensator = exp_poly_qseries(g2.map(lambda c: e1.scale(c)), 2 * z_order)
    poly_series = theta.q_series * compensator
    poly_series = poly_series.map(lambda p: p.truncate_degree(2 * z_order))
    h_theta = ThetaE8Expansion(z_order, need, None, poly_series)
    h_slices = _pure_e1_slices(h_theta, need)
    h_parts = []
    for i in range(n_parts):
        got = qm_reduce(h_slices.get(i, QSeries.zero(need)).scale(Fraction(2 ** i)),
                        4 + 2 * i)
        if not got.is_modular():
            raise ModularMismatch("compensated coefficient %d kept an E2 part" % i)
        want = eisenstein(4 + 2 * i).scale(
            Fraction((-1) ** i, 12 ** i * _fact(i)))
        if got != want:
            raise ModularMismatch("compensated coefficient %d is off" % i)
        h_parts.append(got)
    return ThetaSumExpansion(h_parts, ck_parts, z_order, q_order or need)


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def bundle_character(degree_cap, q_order):
    """ch of the level-one associated bundle over the base, as a q-series of
    P-polynomials: the eta prefactor times the theta sum with e1 = P.

    The q^1 coefficient is pinned by the classifying-space calibration
    (Dynkin index 60, adjoint character 248 + 60u + 6u^2 at u = P/2).
    """
    if degree_cap > 14:
        raise ValueError("the expansion window limits the degree to 14")
    z_order = min(6, 2 * (degree_cap // 4))
    exp = theta_sum_expansion(z_order, q_order)
    eta = eta_inverse_power(RANK, q_order)
    coeffs = [GradedPolynomial() for _ in range(q_order + 1)]
    for i, part in enumerate(exp.ck_parts):
        series = (part.expansion(q_order) * eta).scale(Fraction(1, 2 ** i))
        pk = GradedPolynomial.base() ** i
        for n in range(q_order + 1):
            coeffs[n] = coeffs[n] + pk.scale(series[n])
    out = QSeries(coeffs, q_order).map(lambda p: p.truncate_degree(degree_cap))
    _calibrate_bundle_character(out, degree_cap)
    return out


def _calibrate_bundle_character(series, degree_cap):
    if series[0] != GradedPolynomial.constant(1):
        raise ModularMismatch("the character must start with the trivial bundle")
    if series.order < 1:
        return
    q1 = series[1]
    P = GradedPolynomial.base()
    cap = min(8, degree_cap)
    # route 1: the classifying-space character table at u = P/2
    want = GradedPolynomial()
    for k, c in enumerate(CHAR_U_COEFFS):
        want = want + (P.scale(Fraction(1, 2)) ** k).scale(c)
    if q1.truncate_degree(cap) != want.truncate_degree(cap):
        raise ModularMismatch("q^1 coefficient disagrees with the character table")
    # route 2: ch_2 from the second Chern class via the Dynkin index
    if cap >= 4:
        c2 = P.scale(Fraction(-DYNKIN_INDEX, 2))
        ch = chern_character_components([GradedPolynomial(), c2], 2, ADJOINT_DIM)
        if q1.homogeneous_part(4) != ch[2]:
            raise ModularMismatch("q^1 degree-4 part disagrees with the Chern route")


# ---------------------------------------------------------------------------
# The identification theorem
# ---------------------------------------------------------------------------

def _vanishing_rules(q_order):
    """Rewrite rules generated by ch_2 = ch_4 = ch_6 = 0 for the untwisted
    operator, closed under multiplication by P."""
    rules = {}
    for j in (2, 4, 6):
        relation = twisted_index_chern(8, 0, j, q_order)
        relation = {s: c for s, c in relation.items()}
        pivot = max((s for s in relation if s.base_power == 0),
                    key=lambda s: (s.fiber_degree(), len(s.mu), s.mu))
        c = relation[pivot]
        rest = {s: -v / c for s, v in relation.items() if s != pivot}
        rules[pivot.mu] = rest
    # normalize: no rule's image may mention another pivot
    changed = True
    while changed:
        changed = False
        for mu, rest in list(rules.items()):
            new = {}
            for s, v in rest.items():
                rule = rules.get(s.mu)
                if rule is None:
                    new[s] = new.get(s, Fraction(0)) + v
                else:
                    changed = True
                    for s2, v2 in rule.items():
                        s3 = s2.mul_base(s.base_power)
                        new[s3] = new.get(s3, Fraction(0)) + v * v2
            rules[mu] = {s: v for s, v in new.items() if v != 0}
    return rules


def _reduce_combo_symbol(sym, rules):
    rule = rules.get(sym.mu)
    if rule is None:
        return {sym: Fraction(1)}
    return {s.mul_base(sym.base_power): v for s, v in rule.items()}


def reduce_expression(sch, rules):
    """Rewrite an expression modulo the vanishing hypotheses."""
    data = {}
    for sym, series in sch.data.items():
        for s2, c in _reduce_combo_symbol(sym, rules).items():
            extra = series.scale(c)
            data[s2] = data[s2] + extra if s2 in data else extra
    return SchExpression(sch.fiber_dim, sch.degree_cap, sch.q_order, data)


def verify_e8_identity(degree_cap, q_order, impose_hypothesis=True):
    """Compare the full index character of an 8-dimensional fiber against the
    rank symbol tensored with the level-one bundle character.

    With the hypothesis imposed, the degree-4, 8 and 12 components of the
    untwisted index are set to zero (as a module over P-powers) and the two
    sides must agree exactly; without it, the comparison reports its first
    mismatch, which sits in a ch_2-bearing symbol.
    """
    if degree_cap > 14:
        raise ValueError("the identification window closes at degree 14")
    lhs = index_chern_series(8, degree_cap, q_order, normalized=False)
    nu0 = rank_symbol(8)
    bundle = bundle_character(degree_cap, q_order)
    rhs = SchExpression(8, degree_cap, q_order)
    for k, series in split_base_series(bundle).items():
        for s, c in nu0.items():
            rhs = rhs.add_combo({s.mul_base(k): c}, series)
    notes = []
    if impose_hypothesis:
        rules = _vanishing_rules(q_order)
        lhs = reduce_expression(lhs, rules)
        rhs = reduce_expression(rhs, rules)
        notes.append("imposed ch2 = ch4 = ch6 = 0 for the untwisted operator")
    mism = lhs.first_mismatch(rhs)
    return VerificationReport(
        claim="e8-character-identification[degrees<=%d, q<=%d, hypothesis=%s]"
              % (degree_cap, q_order, impose_hypothesis),
        equal=mism is None,
        first_mismatch=mism,
        lhs=lhs.render(), rhs=rhs.render(),
        displays={"rank_symbol": combo_render(nu0)},
        notes=notes)
