"""Elliptic characteristic-class kernels and the twisted Chern character tower.

Everything here is a double expansion: z tracks the formal Chern root and q
(or its eighth root u, for the classical theta products) tracks the modular
parameter.  The central objects are

* the inverse Weierstrass-sigma kernel z/sigma = exp(sum_{n>=2} 2/(2n)! G_2n z^2n),
* the four classical theta products over the base u = q^(1/8),
* the A-roof class, both from its root expansion and from the closed
  degree-16 table,
* the product kernel over the fiber roots (the integrand of the Witten
  genus), and
* the tower A-roof(V)·ch(V_n) generated by the symmetric powers of the
  complexified vertical bundle.

Fractional exponents never enter a q-series: theta data lives over u, and
conversion to q fails loudly unless every u-exponent is divisible by 8.
"""

from fractions import Fraction
from functools import lru_cache

from .modforms import eisenstein_unnormalized_series, eta_inverse_power
from .qseries import QSeries, exp_series
from .sympoly import (
    GradedPolynomial, SymmetricContext, evaluate_at_z_one, exp_poly_qseries,
    expand_symmetric_product, symbol_power_sums,
)


class FractionalResidue(ValueError):
    """A u-series carried exponents not divisible by 8."""


class KernelSeries:
    """A z-expansion whose coefficients are exact series in q or u."""

    __slots__ = ("name", "base", "z_coeffs", "parity")

    def __init__(self, name, base, z_coeffs, parity):
        self.name = name
        self.base = base  # 'q' or 'u'
        self.z_coeffs = tuple(z_coeffs)
        self.parity = parity
        if parity in ("even", "odd"):
            bad = 1 if parity == "even" else 0
            for j in range(bad, len(z_coeffs), 2):
                if not z_coeffs[j].is_zero():
                    raise ValueError("%s kernel has a z^%d term" % (parity, j))

    @property
    def z_order(self):
        return len(self.z_coeffs) - 1

    def entry(self, j):
        return self.z_coeffs[j]

    def __iter__(self):
        return iter(self.z_coeffs)


# ---------------------------------------------------------------------------
# The sigma kernel
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def sigma_inverse_kernel(z_order, q_order):
    """z/sigma(z, q) as an even kernel with constant term 1.

    The exponent sum starts at n = 2, so the z^2 coefficient vanishes and the
    z^4 coefficient is 2 G_4/4! = E4/2880.
    """
    lz = [QSeries.zero(q_order) for _ in range(z_order + 1)]
    for n in range(2, z_order // 2 + 1):
        scale = Fraction(2, _factorial(2 * n))
        lz[2 * n] = eisenstein_unnormalized_series(2 * n, q_order).scale(scale)
    coeffs = _z_exp(lz, q_order)
    return KernelSeries("sigma_inverse", "q", coeffs, "even")


def _z_exp(lz, q_order):
    out = exp_series(QSeries(lz, len(lz) - 1))
    coeffs = list(out.coeffs)
    coeffs[0] = QSeries.one(q_order)
    return coeffs


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def sigma_kernel(z_order, q_order):
    """sigma(z, q)/z, the reciprocal of the inverse kernel (z-series inversion)."""
    inv = sigma_inverse_kernel(z_order, q_order)
    coeffs = _z_invert(inv.z_coeffs, q_order)
    return KernelSeries("sigma_over_z", "q", coeffs, "even")


def _z_invert(coeffs, q_order):
    n = len(coeffs) - 1
    a = list(coeffs)
    b = [QSeries.one(q_order)]
    for k in range(1, n + 1):
        acc = QSeries.zero(q_order)
        for i in range(1, k + 1):
            acc = acc + a[i] * b[k - i]
        b.append(acc.scale(Fraction(-1)))
    return b


# ---------------------------------------------------------------------------
# Theta kernels over u = q^(1/8)
# ---------------------------------------------------------------------------

def _z_mul(a, b, z_order):
    out = []
    for k in range(z_order + 1):
        acc = None
        for i in range(k + 1):
            if i < len(a) and k - i < len(b):
                if a[i].is_zero():
                    continue
                term = a[i] * b[k - i]
                acc = term if acc is None else acc + term
        out.append(acc if acc is not None else a[0].scale(0))
    return out


def _cosh_pair(sign, power, u_order, z_order):
    """(1 + sign u^power e^z)(1 + sign u^power e^-z) as a z-series over u.

    Equals (1 + sign u^power)^2 + sign u^power (e^z + e^-z - 2); only even
    z-powers appear.
    """
    out = []
    for j in range(z_order + 1):
        if j % 2:
            out.append(QSeries.zero(u_order))
        elif j == 0:
            coeffs = [Fraction(0)] * (u_order + 1)
            coeffs[0] = Fraction(1)
            if power <= u_order:
                coeffs[power] += 2 * sign
            if 2 * power <= u_order:
                coeffs[2 * power] += Fraction(1)
            out.append(QSeries(coeffs, u_order))
        else:
            c = Fraction(2 * sign, _factorial(j))
            out.append(QSeries.monomial(c, power, u_order))
    return out


@lru_cache(maxsize=None)
def theta_kernel(kind, z_order, q_order):
    """The four classical theta products, expanded in z over u = q^(1/8).

    kind 1:  2 u sinh(z/2) prod (1-q^n e^z)(1-q^n e^-z)(1-q^n)
    kind 2:  2 u cosh(z/2) prod (1+q^n e^z)(1+q^n e^-z)(1-q^n)
    kind 3:  prod (1+q^(n-1/2) e^z)(1+q^(n-1/2) e^-z)(1-q^n)
    kind 4:  the same with minus signs on the half-integer factors
    """
    u_order = 8 * q_order + 7
    if kind in (1, 2):
        sign = -1 if kind == 1 else 1
        hyper = []
        for j in range(z_order + 1):
            if (j % 2 == 0) == (kind == 1):
                hyper.append(QSeries.zero(u_order))
            else:
                c = Fraction(2, 2 ** j * _factorial(j))
                hyper.append(QSeries.monomial(c, 1, u_order))
        acc = hyper
        n = 1
        while 8 * n <= u_order:
            acc = _z_mul(acc, _cosh_pair(sign, 8 * n, u_order, z_order), z_order)
            acc = [c * _one_minus_power(8 * n, u_order) for c in acc]
            n += 1
        parity = "odd" if kind == 1 else "even"
        return KernelSeries("theta%d" % kind, "u", acc, parity)
    if kind in (3, 4):
        sign = 1 if kind == 3 else -1
        acc = [QSeries.one(u_order) if j == 0 else QSeries.zero(u_order)
               for j in range(z_order + 1)]
        n = 1
        while 8 * n - 4 <= u_order:
            acc = _z_mul(acc, _cosh_pair(sign, 8 * n - 4, u_order, z_order), z_order)
            if 8 * n <= u_order:
                acc = [c * _one_minus_power(8 * n, u_order) for c in acc]
            n += 1
        return KernelSeries("theta%d" % kind, "u", acc, "even")
    raise ValueError("theta kind must be 1..4")


@lru_cache(maxsize=None)
def _one_minus_power(power, u_order):
    coeffs = [Fraction(0)] * (u_order + 1)
    coeffs[0] = Fraction(1)
    if power <= u_order:
        coeffs[power] = Fraction(-1)
    return QSeries(coeffs, u_order)


def u_to_q(series):
    """Collapse a u-series to a q-series; every exponent must be 0 mod 8."""
    for i, c in enumerate(series.coeffs):
        if i % 8 and c != 0:
            raise FractionalResidue("u^%d survives with coefficient %s" % (i, c))
    return QSeries([series.coeffs[8 * k] for k in range(series.order // 8 + 1)],
                   series.order // 8)


def theta_zero_derivative(q_order):
    """d theta/dz at z = 0, as a u-series: u prod (1-u^8n)^3."""
    theta = theta_kernel(1, 1, q_order)
    return theta.entry(1)


def eta_cubed_u(q_order):
    """eta^3 = q^(1/8) prod (1-q^n)^3 written over u."""
    u_order = 8 * q_order + 7
    prod = QSeries.one(u_order)
    n = 1
    while 8 * n <= u_order:
        prod = prod * _one_minus_power(8 * n, u_order) ** 3
        n += 1
    return prod.shift(1).truncate(u_order)


# ---------------------------------------------------------------------------
# The A-roof class
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def a_hat_class(m, degree_cap):
    """A-roof of a rank-m bundle from the root expansion of (x/2)/sinh(x/2)."""
    z_order = degree_cap // 2
    sinh_ratio = [Fraction(0)] * (z_order + 1)
    for k in range(0, z_order // 2 + 1):
        sinh_ratio[2 * k] = Fraction(1, 4 ** k * _factorial(2 * k + 1))
    kernel = QSeries(sinh_ratio, z_order).invert()
    entries = expand_symmetric_product(list(kernel.coeffs),
                                       SymmetricContext(m // 2, degree_cap))
    return evaluate_at_z_one(entries, cap=degree_cap)


def a_hat_closed_form(degree):
    """The classical closed-form A-roof coefficients through degree 16."""
    p = GradedPolynomial.p
    table = {
        0: GradedPolynomial.constant(1),
        4: p(1).scale(Fraction(-1, 24)),
        8: (p(1) ** 2 * 7 - p(2) * 4) / 5760,
        12: (p(1) ** 3 * (-31) + p(1) * p(2) * 44 - p(3) * 16) / 967680,
        16: (p(1) ** 4 * 381 - p(1) ** 2 * p(2) * 904 + p(2) ** 2 * 208
             + p(1) * p(3) * 512 - p(4) * 192) / 464486400,
    }
    if degree not in table:
        raise ValueError("closed form tabulated through degree 16 only")
    return table[degree]


# ---------------------------------------------------------------------------
# The Witten kernel and the twisted tower
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def witten_kernel(m, z_order, q_order, degree_cap):
    """prod_i (z y_i)/sigma(z y_i, q) over the m/2 fiber roots.

    Returned as a list over z-exponents of q-series with polynomial
    coefficients; the z^2n entry is homogeneous of symbol degree 4n and
    modular weight 2n.  No G2 factor is included here.
    """
    kernel = sigma_inverse_kernel(z_order, q_order)
    cap = min(degree_cap, 2 * z_order)
    return tuple(expand_symmetric_product(list(kernel.z_coeffs),
                                          SymmetricContext(m // 2, cap)))


class ClassTower:
    """The q-tower of A-roof(V)·ch(V_n) for the symmetric-power bundles V_n."""

    __slots__ = ("fiber_dim", "degree_cap", "q_order", "entries", "a_hat",
                 "_a_hat_inverse")

    def __init__(self, fiber_dim, degree_cap, q_order, entries, a_hat):
        self.fiber_dim = fiber_dim
        self.degree_cap = degree_cap
        self.q_order = q_order
        self.entries = tuple(entries)
        self.a_hat = a_hat
        self._a_hat_inverse = a_hat.invert_unipotent(degree_cap)

    def entry(self, n):
        """A-roof(V) · ch(V_n) as a graded polynomial."""
        return self.entries[n]

    def chern_character(self, n):
        """ch(V_n), recovered by dividing out the A-roof class."""
        return self.entries[n].mul_capped(self._a_hat_inverse, self.degree_cap)

    def rank(self, n):
        return self.chern_character(n).constant_term()

    def degree_part(self, n, degree):
        return self.entries[n].homogeneous_part(degree)

    def rank_series(self):
        return eta_inverse_power(self.fiber_dim, self.q_order)


@lru_cache(maxsize=None)
def twisted_chern_tower(m, n_max, degree_cap, q_order=None):
    """Expand A-roof(V)·ch(tensor_j S_{q^j} V_C) and split it by q-power.

    The product equals the eta-power prefactor times the Witten kernel at
    z = 1 times e^{G2 p1}, which is how it is computed; the q^0 entry is the
    A-roof class and the degree-0 row is the rank series of the tower.
    """
    if q_order is None:
        q_order = n_max
    if n_max > q_order:
        raise ValueError("tower needs q_order >= n_max")
    psi = witten_kernel(m, degree_cap // 2, q_order, degree_cap)
    psi_at_one = evaluate_at_z_one(psi, cap=degree_cap)
    g2p1 = eisenstein_unnormalized_series(2, q_order).map(
        lambda c: GradedPolynomial.p(1).scale(c))
    series = psi_at_one * exp_poly_qseries(g2p1, degree_cap)
    series = series.map(lambda p: p.truncate_degree(degree_cap))
    series = eta_inverse_power(m, q_order) * series
    a_hat = a_hat_class(m, degree_cap)
    return ClassTower(m, degree_cap, q_order, list(series.coeffs[: n_max + 1]), a_hat)


def chern_v_complexified_closed(m, degree_cap):
    """ch of the complexified fiber bundle: m + sum_k 2/(2k)! s_k."""
    out = GradedPolynomial.constant(m)
    sums = symbol_power_sums(degree_cap // 4, m // 2)
    for k in range(1, degree_cap // 4 + 1):
        out = out + sums[k - 1].scale(Fraction(2, _factorial(2 * k)))
    return out


def chern_v_direct(m, degree_cap, q_order):
    """ch(tensor_j S_{q^j} V_C) by direct symmetric expansion of the
    generating series, an independent route to the tower's quotient.

    The per-root kernel is prod_j [(1-q^j e^z)(1-q^j e^-z)/(1-q^j)^2]^(-1);
    the stripped-off scalar (1-q^j)^(-2) factors recombine into the rank
    series.
    """
    z_order = degree_cap // 2
    factors = None
    for j in range(1, q_order + 1):
        qj = QSeries.monomial(Fraction(1), j, q_order)
        denom = (QSeries.one(q_order) - qj) ** 2
        cj = qj * denom.invert()
        coeffs = [QSeries.one(q_order) if i == 0 else QSeries.zero(q_order)
                  for i in range(z_order + 1)]
        for i in range(2, z_order + 1, 2):
            coeffs[i] = cj.scale(Fraction(-2, _factorial(i)))
        factors = coeffs if factors is None else _z_mul(factors, coeffs, z_order)
    kernel = _z_invert(factors, q_order)
    entries = expand_symmetric_product(kernel, SymmetricContext(m // 2, degree_cap))
    total = evaluate_at_z_one(entries, cap=degree_cap)
    return eta_inverse_power(m, q_order) * total
