"""Level-1 modular and quasimodular forms over Q with exact q-expansions.

The ring of modular forms is the polynomial ring on the weight 4 and 6
Eisenstein series; quasimodular forms adjoin the weight 2 series.  A
:class:`ModularForm` stores a weight and a monomial map (a, b) -> coeff for
the products ``E4^a E6^b`` with 4a + 6b equal to the weight; a
:class:`QuasiModularForm` stores one modular part for each power of E2.
Coefficients are normally Fractions but may be any commutative Q-algebra
element (graded polynomials appear in the family computations).

Differentiation q·d/dq is closed on quasimodular forms by the classical
derivative identities

    D E2 = (E2^2 - E4)/12,   D E4 = (E2 E4 - E6)/3,   D E6 = (E2 E6 - E4^2)/2,

so derivatives are computed symbolically, never through expansions.
"""

from fractions import Fraction
from functools import lru_cache

from .linsolve import solve_exact
from .qseries import QSeries

# margin of extra q-coefficients a reduction must match beyond the space dimension
REDUCTION_MARGIN = 10


class WeightError(ValueError):
    """Operands of incompatible weight."""


class NotInSpace(ValueError):
    """A q-expansion admits no exact (quasi)modular representation at the given weight."""


class InsufficientOrder(ValueError):
    """Not enough q-coefficients to certify a reduction."""


# ---------------------------------------------------------------------------
# Bernoulli numbers and Eisenstein q-expansions
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n):
    """The n-th Bernoulli number, from the defining recurrence."""
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    # sum_{j<n} C(n+1, j) B_j + (n+1) B_n = 0
    acc = Fraction(0)
    binom = 1
    for j in range(n):
        acc += binom * bernoulli(j)
        binom = binom * (n + 1 - j) // (j + 1)
    return -acc / (n + 1)


def divisor_power_sum(n, k):
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            if d * d != n:
                total += (n // d) ** k
        d += 1
    return total


@lru_cache(maxsize=None)
def eisenstein_series(two_k, order):
    """q-expansion of the normalized weight-2k Eisenstein series."""
    if two_k < 2 or two_k % 2:
        raise ValueError("even weight >= 2 required")
    factor = Fraction(-4 * (two_k // 2)) / bernoulli(two_k)
    coeffs = [Fraction(1)]
    for n in range(1, order + 1):
        coeffs.append(factor * divisor_power_sum(n, two_k - 1))
    return QSeries(coeffs, order)


def eisenstein_unnormalized_series(two_k, order):
    """G_{2k} = -(B_{2k}/4k)·E_{2k} as a q-expansion."""
    scale = -bernoulli(two_k) / (2 * two_k)
    return eisenstein_series(two_k, order).scale(scale)


@lru_cache(maxsize=None)
def euler_product(order):
    """prod_{n>=1} (1 - q^n), by the pentagonal number theorem."""
    coeffs = [Fraction(0)] * (order + 1)
    coeffs[0] = Fraction(1)
    k = 1
    while True:
        p1 = k * (3 * k - 1) // 2
        p2 = k * (3 * k + 1) // 2
        if p1 > order and p2 > order:
            break
        sign = Fraction(-1) if k % 2 else Fraction(1)
        if p1 <= order:
            coeffs[p1] += sign
        if p2 <= order:
            coeffs[p2] += sign
        k += 1
    return QSeries(coeffs, order)


@lru_cache(maxsize=None)
def eta_inverse_power(m, order):
    """prod_{n>=1} (1 - q^n)^(-m); the eta-quotient prefactor in normalized form."""
    if m == 0:
        return QSeries.one(order)
    return euler_product(order).invert() ** m


# ---------------------------------------------------------------------------
# Modular forms as polynomials in E4, E6
# ---------------------------------------------------------------------------

def _clean(terms):
    return {k: v for k, v in terms.items() if v != 0}


class ModularForm:
    """An element of the weight-graded polynomial ring on E4 and E6."""

    __slots__ = ("weight", "terms")

    def __init__(self, weight, terms):
        terms = _clean(terms)
        for (a, b) in terms:
            if 4 * a + 6 * b != weight:
                raise WeightError("monomial E4^%d E6^%d has weight %d, not %d"
                                  % (a, b, 4 * a + 6 * b, weight))
        self.weight = weight
        self.terms = terms

    @classmethod
    def zero(cls, weight=0):
        return cls(weight, {})

    @classmethod
    def constant(cls, c):
        return cls(0, {(0, 0): c})

    @classmethod
    def e4(cls):
        return cls(4, {(1, 0): Fraction(1)})

    @classmethod
    def e6(cls):
        return cls(6, {(0, 1): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return "ModularForm(weight=%d, %s)" % (self.weight, _render_mf(self))

    def __eq__(self, other):
        if isinstance(other, QuasiModularForm):
            return other == self
        if isinstance(other, ModularForm):
            if self.is_zero() or other.is_zero():
                return self.is_zero() and other.is_zero()
            return self.weight == other.weight and self.terms == other.terms
        # scalar comparison
        if other == 0:
            return self.is_zero()
        return self.weight == 0 and self.terms.get((0, 0), 0) == other

    def __ne__(self, other):
        return not self.__eq__(other)

    def __add__(self, other):
        if isinstance(other, QuasiModularForm):
            return QuasiModularForm.promote(self) + other
        if not isinstance(other, ModularForm):
            other = ModularForm.constant(other) if other != 0 else ModularForm.zero(self.weight)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.weight != other.weight:
            raise WeightError("cannot add weights %d and %d" % (self.weight, other.weight))
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return ModularForm(self.weight, terms)

    __radd__ = __add__

    def __neg__(self):
        return ModularForm(self.weight, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, (ModularForm, QuasiModularForm)) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QuasiModularForm):
            return QuasiModularForm.promote(self) * other
        if not isinstance(other, ModularForm):
            return self.scale(other)
        terms = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                terms[k] = terms.get(k, 0) + c1 * c2
        return ModularForm(self.weight + other.weight, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        return ModularForm(self.weight, {k: c * v for k, v in self.terms.items()})

    def __truediv__(self, c):
        if isinstance(c, int):
            c = Fraction(c)
        return self.scale(1 / c) if isinstance(c, Fraction) else ModularForm(
            self.weight, {k: v / c for k, v in self.terms.items()})

    def __pow__(self, n):
        result = ModularForm.constant(Fraction(1))
        for _ in range(n):
            result = result * self
        return result

    def expansion(self, order):
        out = QSeries.zero(order)
        for (a, b), c in self.terms.items():
            out = out + _monomial_expansion(a, b, order).scale(c)
        return out

    def derivative(self):
        """q d/dq, valued in quasimodular forms of weight + 2."""
        return QuasiModularForm.promote(self).derivative()

    def to_jsonable(self):
        monos = [{"a": a, "b": b, "coeff": _coeff_json(c)}
                 for (a, b), c in sorted(self.terms.items(), reverse=True)]
        return {"weight": self.weight, "monomials": monos}


@lru_cache(maxsize=None)
def _monomial_expansion(a, b, order):
    out = QSeries.one(order)
    if a:
        out = out * eisenstein_series(4, order) ** a
    if b:
        out = out * eisenstein_series(6, order) ** b
    return out


def _coeff_json(c):
    if isinstance(c, int):
        c = Fraction(c)
    if isinstance(c, Fraction):
        return {"n": str(c.numerator), "d": str(c.denominator)}
    return str(c)


class QuasiModularForm:
    """An element of the quasimodular ring, graded by total weight.

    parts[i] is the modular form (weight = total weight - 2i) multiplying E2^i.
    """

    __slots__ = ("weight", "parts")

    def __init__(self, weight, parts):
        parts = list(parts)
        while parts and parts[-1].is_zero():
            parts.pop()
        for i, p in enumerate(parts):
            if not p.is_zero() and p.weight != weight - 2 * i:
                raise WeightError("E2^%d part has weight %d, expected %d"
                                  % (i, p.weight, weight - 2 * i))
        self.weight = weight
        self.parts = tuple(parts)

    @classmethod
    def promote(cls, f):
        if isinstance(f, QuasiModularForm):
            return f
        if isinstance(f, ModularForm):
            return cls(f.weight, [f])
        if f == 0:
            return cls.zero()
        return cls(0, [ModularForm.constant(f)])

    @classmethod
    def zero(cls, weight=0):
        return cls(weight, [])

    @classmethod
    def e2(cls):
        return cls(2, [ModularForm.zero(2), ModularForm.constant(Fraction(1))])

    def is_zero(self):
        return not self.parts

    def is_modular(self):
        return len(self.parts) <= 1

    def e2_degree(self):
        return len(self.parts) - 1 if self.parts else -1

    def part(self, i):
        if i < len(self.parts):
            return self.parts[i]
        return ModularForm.zero(max(self.weight - 2 * i, 0))

    def as_modular(self):
        if not self.is_modular():
            raise WeightError("form has a nonzero E2 part")
        return self.parts[0] if self.parts else ModularForm.zero(self.weight)

    def __repr__(self):
        return "QuasiModularForm(weight=%d, %s)" % (self.weight, render_form(self))

    def __eq__(self, other):
        other = QuasiModularForm.promote(other)
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.weight == other.weight and len(self.parts) == len(other.parts) and all(
            p == q for p, q in zip(self.parts, other.parts))

    def __ne__(self, other):
        return not self.__eq__(other)

    def __add__(self, other):
        other = QuasiModularForm.promote(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.weight != other.weight:
            raise WeightError("cannot add weights %d and %d" % (self.weight, other.weight))
        n = max(len(self.parts), len(other.parts))
        return QuasiModularForm(self.weight, [self.part(i) + other.part(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return QuasiModularForm(self.weight, [-p for p in self.parts])

    def __sub__(self, other):
        return self + (-QuasiModularForm.promote(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (ModularForm, QuasiModularForm)):
            other = QuasiModularForm.promote(other)
            parts = [ModularForm.zero(self.weight + other.weight - 2 * k)
                     for k in range(len(self.parts) + len(other.parts) - 1)] if (
                self.parts and other.parts) else []
            for i, p in enumerate(self.parts):
                for j, q in enumerate(other.parts):
                    parts[i + j] = parts[i + j] + p * q
            return QuasiModularForm(self.weight + other.weight, parts)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        return QuasiModularForm(self.weight, [p.scale(c) for p in self.parts])

    def __truediv__(self, c):
        return QuasiModularForm(self.weight, [p / c for p in self.parts])

    def __pow__(self, n):
        result = QuasiModularForm.promote(Fraction(1))
        for _ in range(n):
            result = result * self
        return result

    def expansion(self, order):
        out = QSeries.zero(order)
        e2 = eisenstein_series(2, order)
        for i, p in enumerate(self.parts):
            out = out + (e2 ** i) * p.expansion(order)
        return out

    def derivative(self):
        """q d/dq via the Ramanujan identities; exact, weight goes up by 2."""
        w = self.weight
        out = QuasiModularForm.zero(w + 2)
        for i, p in enumerate(self.parts):
            # D(E2^i) f = i E2^(i-1) DE2 f
            if i and not p.is_zero():
                out = out + _shift_e2(_de2().scale(i) * QuasiModularForm.promote(p), i - 1)
            # E2^i D(f)
            df = _mf_derivative(p)
            if not df.is_zero():
                out = out + _shift_e2(df, i)
        return out

    def derivative_n(self, n):
        f = self
        for _ in range(n):
            f = f.derivative()
        return f

    def to_jsonable(self):
        return {"weight": self.weight,
                "e2_parts": [p.to_jsonable() for p in self.parts]}


def _shift_e2(f, k):
    """Multiply a quasimodular form by E2^k."""
    if f.is_zero() or k == 0:
        return QuasiModularForm(f.weight + 2 * k, f.parts) if not f.is_zero() else f
    parts = [ModularForm.zero(0)] * k + list(f.parts)
    return QuasiModularForm(f.weight + 2 * k, parts)


@lru_cache(maxsize=None)
def _de2():
    # DE2 = (E2^2 - E4)/12
    return QuasiModularForm(4, [ModularForm.e4().scale(Fraction(-1, 12)),
                                ModularForm.zero(2),
                                ModularForm.constant(Fraction(1, 12))])


def _mf_derivative(p):
    # DE4 = (E2 E4 - E6)/3, DE6 = (E2 E6 - E4^2)/2 extended by the Leibniz rule
    out = QuasiModularForm.zero(p.weight + 2)
    for (a, b), c in p.terms.items():
        if a:
            rest = ModularForm(p.weight - 4, {(a - 1, b): c * a})
            out = out + QuasiModularForm(
                p.weight + 2,
                [rest * ModularForm.e6().scale(Fraction(-1, 3)),
                 rest * ModularForm.e4().scale(Fraction(1, 3))])
        if b:
            rest = ModularForm(p.weight - 6, {(a, b - 1): c * b})
            out = out + QuasiModularForm(
                p.weight + 2,
                [rest * (ModularForm.e4() ** 2).scale(Fraction(-1, 2)),
                 rest * ModularForm.e6().scale(Fraction(1, 2))])
    return out


# ---------------------------------------------------------------------------
# Distinguished forms and spaces
# ---------------------------------------------------------------------------

def eisenstein(two_k, order=None):
    """The normalized Eisenstein series as a quasimodular form.

    Weight 2 gives the E2 generator; weights >= 4 land in the modular
    subring, expressed in the E4/E6 monomial basis by exact reduction.
    """
    if two_k == 2:
        return QuasiModularForm.e2()
    if two_k == 4:
        return QuasiModularForm.promote(ModularForm.e4())
    if two_k == 6:
        return QuasiModularForm.promote(ModularForm.e6())
    need = len(quasimodular_monomials(two_k)) + REDUCTION_MARGIN
    if order is not None:
        need = max(need, order)
    return qm_reduce(eisenstein_series(two_k, need), two_k)


def delta(order=None):
    """The discriminant cusp form (E4^3 - E6^2)/1728 of weight 12."""
    return ModularForm(12, {(3, 0): Fraction(1, 1728), (0, 2): Fraction(-1, 1728)})


def dim_modular(weight):
    """dim of the weight-k space, counted from the E4/E6 monomial basis."""
    return len(modular_monomials(weight))


def dim_modular_closed(weight):
    """The classical closed dimension formula for even weight >= 0."""
    if weight < 0 or weight % 2:
        return 0
    if weight % 12 == 2:
        return weight // 12
    return weight // 12 + 1


@lru_cache(maxsize=None)
def modular_monomials(weight):
    """Exponent pairs (a, b) with 4a + 6b = weight, descending in a."""
    if weight < 0 or weight % 2:
        return ()
    out = []
    for a in range(weight // 4, -1, -1):
        rem = weight - 4 * a
        if rem % 6 == 0:
            out.append((a, rem // 6))
    return tuple(out)


@lru_cache(maxsize=None)
def quasimodular_monomials(weight):
    """Exponent triples (i, a, b) with 2i + 4a + 6b = weight; E2-free first."""
    out = []
    for i in range(weight // 2 + 1):
        for (a, b) in modular_monomials(weight - 2 * i):
            out.append((i, a, b))
    return tuple(out)


def qm_reduce(series, weight):
    """Express a rational q-expansion in the quasimodular monomial basis.

    The expansion must pin down strictly more coefficients than the space
    dimension (margin REDUCTION_MARGIN); the residual has to vanish through
    the full truncation order, else NotInSpace is raised.
    """
    monos = quasimodular_monomials(weight)
    if series.order < len(monos) + REDUCTION_MARGIN:
        raise InsufficientOrder("need order >= %d, have %d"
                                % (len(monos) + REDUCTION_MARGIN, series.order))
    order = series.order
    cols = [_qm_monomial_expansion(m, order) for m in monos]
    rows = [[col[n] for col in cols] for n in range(order + 1)]
    sol = solve_exact(rows, list(series.coeffs))
    if sol is None:
        raise NotInSpace("no weight-%d quasimodular form matches" % weight)
    parts = {}
    for (i, a, b), c in zip(monos, sol):
        if c != 0:
            parts.setdefault(i, {})[(a, b)] = c
    max_i = max(parts) if parts else -1
    part_list = [ModularForm(weight - 2 * i, parts.get(i, {})) for i in range(max_i + 1)]
    return QuasiModularForm(weight, part_list)


@lru_cache(maxsize=None)
def _qm_monomial_expansion(mono, order):
    i, a, b = mono
    return (eisenstein_series(2, order) ** i) * _monomial_expansion(a, b, order)


def modular_reduce(series, weight):
    """Like qm_reduce but requires the result to be honestly modular."""
    f = qm_reduce(series, weight)
    if not f.is_modular():
        raise NotInSpace("expansion is quasimodular but not modular")
    return f.as_modular()


class SpaceBasis:
    """An ordered basis of a weight-k space, echelonized against an eta power."""

    __slots__ = ("weight", "fiber_dim", "elements")

    def __init__(self, weight, fiber_dim, elements):
        self.weight = weight
        self.fiber_dim = fiber_dim
        self.elements = tuple(elements)

    def __len__(self):
        return len(self.elements)

    @property
    def is_empty(self):
        return not self.elements

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def to_jsonable(self):
        return {"weight": self.weight, "fiber_dim": self.fiber_dim,
                "empty": self.is_empty,
                "elements": [f.to_jsonable() for f in self.elements]}


@lru_cache(maxsize=None)
def echelon_basis(weight, fiber_dim):
    """The basis phi_0..phi_{s-1} with (1-q^n)-product correction:

    eta_inverse_power(fiber_dim) * phi_i = q^i + O(q^s),  s = dim of the space.

    Solved by exact Gaussian elimination in the monomial basis.
    """
    monos = modular_monomials(weight)
    s = len(monos)
    if s == 0:
        return SpaceBasis(weight, fiber_dim, ())
    order = s + 4
    eta = eta_inverse_power(fiber_dim, order)
    cols = [eta * _monomial_expansion(a, b, order) for (a, b) in monos]
    rows = [[col[n] for col in cols] for n in range(s)]
    elements = []
    for i in range(s):
        rhs = [Fraction(1) if n == i else Fraction(0) for n in range(s)]
        sol = solve_exact(rows, rhs)
        terms = {monos[j]: sol[j] for j in range(s)}
        elements.append(ModularForm(weight, terms))
    return SpaceBasis(weight, fiber_dim, elements)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _render_coeff(c):
    if isinstance(c, int):
        c = Fraction(c)
    return str(c)


def _render_mf(f):
    if f.is_zero():
        return "0"
    bits = []
    for (a, b) in sorted(f.terms, reverse=True):
        c = f.terms[(a, b)]
        name = "*".join((["E4^%d" % a if a > 1 else "E4"] if a else [])
                        + (["E6^%d" % b if b > 1 else "E6"] if b else []))
        if not name:
            name = "1"
        bits.append("%s*%s" % (_render_coeff(c), name))
    return " + ".join(bits).replace("+ -", "- ")


def render_form(f):
    """Canonical text for a (quasi)modular form."""
    if isinstance(f, ModularForm):
        return _render_mf(f)
    if f.is_zero():
        return "0"
    bits = []
    for i, p in enumerate(f.parts):
        if p.is_zero():
            continue
        head = "" if i == 0 else ("E2*" if i == 1 else "E2^%d*" % i)
        bits.append("%s(%s)" % (head, _render_mf(p)))
    return " + ".join(bits)
