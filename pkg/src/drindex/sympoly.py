"""Graded polynomials in Pontryagin-type symbols, with symmetric-function tools.

A :class:`GradedPolynomial` lives in Q[P, p_1, ..., p_r] where the base-class
symbol P has degree 4 and p_i has degree 4i.  Exponent keys are tuples
(eP, e1, e2, ...) with trailing zeros stripped.  The same container doubles
as the ring of elementary symmetric polynomials e_i in squared variables
(the e8 module reads the p_i slots as e_i; there each symbol carries half
the listed degree).

The expansion of a symmetric product prod_i F(z y_i) is done the standard
way: take log F, replace the n-th z^2n coefficient by itself times the n-th
power sum of the squared roots, convert power sums to elementary symmetric
polynomials through the Newton identities, and exponentiate.
"""

import math
from fractions import Fraction
from functools import lru_cache

from .qseries import QSeries, exp_series, log_series


class BadLeadingTerm(ValueError):
    """Symmetric expansion needs an even kernel with constant term 1."""


def _strip(key):
    key = tuple(key)
    while key and key[-1] == 0:
        key = key[:-1]
    return key


def _key_degree(key):
    deg = 4 * key[0] if key else 0
    for i in range(1, len(key)):
        deg += 4 * i * key[i]
    return deg


def _check_coeff(c):
    if isinstance(c, QSeries):
        raise TypeError("series cannot be a polynomial coefficient")
    return c


class GradedPolynomial:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for key, c in terms.items():
                if c != 0:
                    cleaned[_strip(key)] = c
        self.terms = cleaned

    # -- constructors ----------------------------------------------------

    @classmethod
    def constant(cls, c):
        return cls({(): Fraction(c) if isinstance(c, int) else _check_coeff(c)})

    @classmethod
    def base(cls):
        """The base-class symbol P."""
        return cls({(1,): Fraction(1)})

    @classmethod
    def p(cls, i):
        """The fiber symbol p_i (degree 4i)."""
        key = (0,) * i + (1,)
        return cls({key: Fraction(1)})

    # -- structure -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def max_degree(self):
        return max((_key_degree(k) for k in self.terms), default=0)

    def homogeneous_part(self, degree):
        return GradedPolynomial({k: v for k, v in self.terms.items()
                                 if _key_degree(k) == degree})

    def degrees(self):
        return sorted({_key_degree(k) for k in self.terms})

    def truncate_degree(self, cap):
        return GradedPolynomial({k: v for k, v in self.terms.items()
                                 if _key_degree(k) <= cap})

    def __repr__(self):
        return "GradedPolynomial(%s)" % render_poly(self)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __eq__(self, other):
        if isinstance(other, GradedPolynomial):
            return self.terms == other.terms
        if isinstance(other, QSeries):
            return NotImplemented
        if other == 0:
            return self.is_zero()
        return self.terms == {(): other}

    def __ne__(self, other):
        return not self.__eq__(other)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, GradedPolynomial):
            other = GradedPolynomial.constant(_check_coeff(other))
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return GradedPolynomial(terms)

    __radd__ = __add__

    def __neg__(self):
        return GradedPolynomial({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GradedPolynomial):
            other = GradedPolynomial.constant(_check_coeff(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GradedPolynomial):
            return self.scale(other)
        terms = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                n = max(len(k1), len(k2))
                key = tuple((k1[i] if i < len(k1) else 0) + (k2[i] if i < len(k2) else 0)
                            for i in range(n))
                terms[key] = terms.get(key, 0) + c1 * c2
        return GradedPolynomial(terms)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        _check_coeff(c)
        return GradedPolynomial({k: c * v for k, v in self.terms.items()})

    def __truediv__(self, c):
        if isinstance(c, int):
            c = Fraction(c)
        return GradedPolynomial({k: v / c for k, v in self.terms.items()})

    def __pow__(self, n):
        result = GradedPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_capped(self, other, cap):
        return (self * other).truncate_degree(cap)

    def invert_unipotent(self, cap):
        """Inverse of (unit constant + nilpotent), truncated at total degree cap."""
        c0 = self.constant_term()
        if c0 == 0:
            raise ArithmeticError("polynomial has no constant term")
        inv_c0 = Fraction(1) / (Fraction(c0) if isinstance(c0, int) else c0)
        nil = self - c0
        out = GradedPolynomial.constant(inv_c0)
        power = GradedPolynomial.constant(1)
        sign = inv_c0
        while True:
            power = power.mul_capped(nil, cap)
            if power.is_zero():
                break
            sign = -sign * inv_c0
            out = out + power.scale(sign)
        return out

    def exp_capped(self, cap):
        """exp of a polynomial with zero constant term, truncated by degree."""
        if self.constant_term() != 0:
            raise BadLeadingTerm("exp needs zero constant term")
        out = GradedPolynomial.constant(1)
        power = GradedPolynomial.constant(1)
        fact = 1
        k = 0
        while True:
            k += 1
            power = power.mul_capped(self, cap)
            if power.is_zero():
                break
            fact *= k
            out = out + power / fact
        return out

    # -- substitutions -----------------------------------------------------

    def substitute_p1(self, value):
        """Replace the fiber symbol p_1 by an arbitrary polynomial."""
        out = GradedPolynomial()
        for key, c in self.terms.items():
            e1 = key[1] if len(key) > 1 else 0
            rest_key = _strip((key[0], 0) + key[2:]) if len(key) > 1 else key
            rest = GradedPolynomial({rest_key: c})
            out = out + (rest * value ** e1 if e1 else rest)
        return out

    def substitute_p1_with_negative_base(self):
        """p_1 -> -P, the string-family relation between fiber and base classes."""
        out = {}
        for key, c in self.terms.items():
            e1 = key[1] if len(key) > 1 else 0
            eP = (key[0] if key else 0) + e1
            new = _strip((eP, 0) + key[2:]) if len(key) > 1 else key
            val = c if e1 % 2 == 0 else -c
            out[new] = out.get(new, 0) + val
        return GradedPolynomial(out)

    def evaluate(self, base_value, p_values):
        """Numeric specialization: P -> base_value, p_i -> p_values[i-1]."""
        total = Fraction(0)
        for key, c in self.terms.items():
            v = c
            if key:
                v = v * base_value ** key[0]
            for i in range(1, len(key)):
                v = v * p_values[i - 1] ** key[i]
            total += v
        return total


def render_poly(poly, base_name="P", fiber_name="p"):
    if poly.is_zero():
        return "0"
    bits = []
    for key in sorted(poly.terms, key=lambda k: (_key_degree(k), k)):
        c = poly.terms[key]
        names = []
        if key and key[0]:
            names.append(base_name if key[0] == 1 else "%s^%d" % (base_name, key[0]))
        for i in range(1, len(key)):
            if key[i]:
                sym = "%s%d" % (fiber_name, i)
                names.append(sym if key[i] == 1 else "%s^%d" % (sym, key[i]))
        names = "*".join(names) if names else "1"
        bits.append("%s*%s" % (c, names))
    return " + ".join(bits).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Newton identities
# ---------------------------------------------------------------------------

def power_sums_from_elementary(elementary, count, num_roots=None):
    """s_1..s_count from e_1..e_k via Newton (e_i = 0 past the given list)."""
    e = [GradedPolynomial.constant(1)] + [
        x if isinstance(x, GradedPolynomial) else GradedPolynomial.constant(x)
        for x in elementary]
    while len(e) <= count:
        e.append(GradedPolynomial())
    s = [None]
    for k in range(1, count + 1):
        acc = e[k].scale(Fraction((-1) ** (k - 1) * k))
        for i in range(1, k):
            acc = acc + e[i].scale(Fraction((-1) ** (i - 1))) * s[k - i]
        s.append(acc)
    return s[1:]


def elementary_from_power_sums(power_sums, count):
    """e_1..e_count from the power sums s_1..s_count (inverse direction)."""
    s = [None] + list(power_sums[:count])
    e = [GradedPolynomial.constant(1)]
    for k in range(1, count + 1):
        acc = GradedPolynomial()
        for i in range(1, k + 1):
            acc = acc + e[k - i].scale(Fraction((-1) ** (i - 1))) * s[i]
        e.append(acc / k)
    return e[1:]


@lru_cache(maxsize=None)
def symbol_power_sums(count, num_symbols):
    """s_1..s_count of the squared roots, in the symbols p_1..p_r themselves."""
    elem = [GradedPolynomial.p(i) for i in range(1, num_symbols + 1)]
    return tuple(power_sums_from_elementary(elem, count))


# ---------------------------------------------------------------------------
# Symmetric product expansion
# ---------------------------------------------------------------------------

class SymmetricContext:
    """How many formal roots to expand over, and the degree cap for outputs."""

    __slots__ = ("num_roots", "degree_cap")

    def __init__(self, num_roots, degree_cap):
        self.num_roots = num_roots
        self.degree_cap = degree_cap


def expand_symmetric_product(z_coeffs, ctx):
    """Expand prod_{i=1..r} F(z y_i) in the symbols p_k = e_k(y_1^2,...,y_r^2).

    ``z_coeffs`` lists the coefficients of the even kernel F by z-exponent;
    odd slots must vanish and the constant slot must be 1.  Coefficients are
    either plain rationals or q-series of rationals (all of one kind).  The
    result lists, per z-exponent, the matching object tensored with graded
    polynomials; the z^2n entry is homogeneous of symbol degree 4n, and
    entries above ctx.degree_cap are dropped.
    """
    series_mode = any(isinstance(c, QSeries) for c in z_coeffs)
    q_order = min((c.order for c in z_coeffs if isinstance(c, QSeries)), default=0)
    # the kernel is taken as exact through its given z-range (zero beyond);
    # the output runs to the degree cap
    z_order = ctx.degree_cap // 2

    def lift_scalar(x):
        return QSeries.constant(x, q_order) if series_mode and not isinstance(x, QSeries) else x

    padded = list(z_coeffs) + [0] * max(0, z_order + 1 - len(z_coeffs))
    f = QSeries([lift_scalar(c) for c in padded[: z_order + 1]], z_order)
    if f.coeffs[0] != 1:
        raise BadLeadingTerm("kernel constant term must be 1")
    lf = log_series(f)
    n_max = z_order // 2
    sums = symbol_power_sums(n_max, ctx.num_roots) if n_max else ()

    lifted = []
    for j in range(z_order + 1):
        c = lf.coeffs[j]
        if j == 0 or j % 2 == 1:
            if c != 0:
                raise BadLeadingTerm("kernel must be even in z")
            lifted.append(_tensor(lift_scalar(0), GradedPolynomial()))
        else:
            lifted.append(_tensor(c, sums[j // 2 - 1]))
    out = exp_series(QSeries(lifted, z_order))
    return [_normalize_entry(e, ctx.degree_cap, series_mode, q_order) for e in out.coeffs]


def _tensor(c, poly):
    """c ⊗ poly: scale a scalar or a whole q-series by a polynomial."""
    if isinstance(c, QSeries):
        return c.map(lambda x: poly.scale(x) if not isinstance(x, GradedPolynomial)
                     else poly * x)
    if isinstance(c, GradedPolynomial):
        return poly * c
    return poly.scale(c)


def _normalize_entry(entry, cap, series_mode, q_order):
    if isinstance(entry, QSeries):
        return entry.map(lambda p: _as_poly(p).truncate_degree(cap))
    entry = _as_poly(entry).truncate_degree(cap)
    if series_mode:
        return QSeries.constant(entry, q_order)
    return entry


def _as_poly(p):
    if isinstance(p, GradedPolynomial):
        return p
    return GradedPolynomial.constant(p) if p != 0 else GradedPolynomial()


def evaluate_at_z_one(entries, cap=None):
    """Sum the z-coefficients (specialize z = 1), optionally re-capping degree."""
    total = None
    for e in entries:
        total = e if total is None else total + e
    if cap is not None:
        if isinstance(total, QSeries):
            total = total.map(lambda p: p.truncate_degree(cap))
        else:
            total = total.truncate_degree(cap)
    return total


def exp_poly_qseries(x, cap):
    """exp of a q-series with polynomial coefficients, truncated by degree.

    The q^0 coefficient may be a nonzero polynomial but must have no scalar
    constant term (it is nilpotent under the degree cap).
    """
    c0 = x.coeffs[0]
    c0 = c0 if isinstance(c0, GradedPolynomial) else _as_poly(c0)
    head = c0.exp_capped(cap)
    tail = x - QSeries.constant(c0, x.order)
    out = exp_series(tail.map(lambda p: _as_poly(p)))
    return out.map(lambda p: _as_poly(p).mul_capped(head, cap))


# ---------------------------------------------------------------------------
# Chern characters from Chern classes
# ---------------------------------------------------------------------------

def chern_character_components(chern_classes, max_component, rank):
    """ch_0..ch_max from the Chern classes: ch_0 = rank, ch_j = s_j / j!

    with s_j the power sums of the Chern roots, computed by Newton from
    e_i = c_i.
    """
    s = power_sums_from_elementary(list(chern_classes), max_component)
    out = [GradedPolynomial.constant(rank)]
    for j in range(1, max_component + 1):
        out.append(s[j - 1] / math.factorial(j))
    return out
