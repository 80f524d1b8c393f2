"""Truncated power series in one formal variable over an exact coefficient ring.

The coefficient ring is duck-typed: any commutative ring whose elements
support ``+``, ``-``, ``*`` and decidable ``==`` works, provided the Python
ints 0 and 1 act as the additive and multiplicative identities under
promotion.  ``Fraction`` coefficients give ordinary q-series; series whose
coefficients are themselves :class:`QSeries` or graded polynomials are used
for double expansions in (z, q).

Binary operations truncate to the minimum of the two truncation orders, and
equality is coefficient-wise up to the common order.  No coefficient is ever
approximated.
"""

from fractions import Fraction


class NonUnitConstantTerm(ArithmeticError):
    """Inversion was attempted on a series whose constant term is not a unit."""


class BadConstantTerm(ArithmeticError):
    """exp needs constant term 0; log needs constant term 1."""


def _is_scalar(x):
    return not isinstance(x, QSeries)


class QSeries:
    """A power series known exactly through ``x**order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order=None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if len(coeffs) < order + 1:
            coeffs.extend([0] * (order + 1 - len(coeffs)))
        elif len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        self.coeffs = tuple(coeffs)
        self.order = order

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c, order):
        return cls([c], order)

    @classmethod
    def one(cls, order):
        return cls([1], order)

    @classmethod
    def zero(cls, order):
        return cls([], order)

    @classmethod
    def monomial(cls, c, n, order):
        coeffs = [0] * (order + 1)
        if n <= order:
            coeffs[n] = c
        return cls(coeffs, order)

    # -- basic protocol ------------------------------------------------

    def __getitem__(self, n):
        if not 0 <= n <= self.order:
            raise IndexError("coefficient q^%d beyond truncation order %d" % (n, self.order))
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:6])
        if self.order > 5:
            shown += ", ..."
        return "QSeries([%s]; order=%d)" % (shown, self.order)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def valuation(self):
        """Index of the first nonzero coefficient, or order+1 for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.order + 1

    def __eq__(self, other):
        if _is_scalar(other):
            other = QSeries.constant(other, self.order)
        n = min(self.order, other.order)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n + 1))

    def __ne__(self, other):
        return not self.__eq__(other)

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        if _is_scalar(other):
            coeffs = list(self.coeffs)
            coeffs[0] = coeffs[0] + other
            return QSeries(coeffs, self.order)
        n = min(self.order, other.order)
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if _is_scalar(other):
            return self.__add__(-other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return self.__neg__().__add__(other)

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        support = [i for i in range(min(len(a), n + 1)) if a[i] != 0]
        out = []
        for k in range(n + 1):
            acc = None
            for i in support:
                if i > k:
                    break
                term = a[i] * b[k - i]
                acc = term if acc is None else acc + term
            out.append(acc if acc is not None else 0 * b[0])
        return QSeries(out, n)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply every coefficient by c (which may live in the coefficient ring)."""
        return QSeries([c * x for x in self.coeffs], self.order)

    def map(self, f):
        """Apply f to every coefficient."""
        return QSeries([f(x) for x in self.coeffs], self.order)

    def __truediv__(self, c):
        # scalar division only; series inversion is spelled invert()
        if isinstance(c, QSeries):
            raise TypeError("use invert() for series division")
        if isinstance(c, int):
            c = Fraction(c)
        return self.scale(1 / c) if isinstance(c, Fraction) else self.map(lambda x: x / c)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("integer powers only")
        if n < 0:
            return self.invert() ** (-n)
        result = QSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def truncate(self, order):
        if order >= self.order:
            return self
        return QSeries(self.coeffs[: order + 1], order)

    def shift(self, k):
        """Multiply by x**k (k may be negative if the low coefficients vanish)."""
        if k >= 0:
            return QSeries([0] * k + list(self.coeffs), self.order + k)
        if any(c != 0 for c in self.coeffs[:-k]):
            raise ValueError("negative shift would drop nonzero coefficients")
        return QSeries(self.coeffs[-k:], self.order + k)

    # -- analytic-style operations (still exact) ------------------------

    def invert(self):
        """Multiplicative inverse; requires the constant term to be a unit."""
        c0 = self.coeffs[0]
        if isinstance(c0, (int, Fraction)):
            if c0 == 0:
                raise NonUnitConstantTerm("constant term is zero")
            inv0 = Fraction(1) / c0
        elif c0 == 1:
            inv0 = 1
        else:
            raise NonUnitConstantTerm("constant term %r is not a recognised unit" % (c0,))
        a = self.coeffs
        b = [inv0]
        for n in range(1, self.order + 1):
            acc = a[1] * b[n - 1]
            for i in range(2, n + 1):
                acc = acc + a[i] * b[n - i]
            b.append(-(inv0 * acc) if inv0 != 1 else -acc)
        return QSeries(b, self.order)

    def derive(self):
        """The operator x·d/dx: coefficient of x^n picks up a factor n."""
        return QSeries([i * c for i, c in enumerate(self.coeffs)], self.order)


def derive_q(a):
    """q·d/dq acting on a q-series."""
    return a.derive()


def exp_series(a):
    """exp of a series with constant term 0 (else BadConstantTerm)."""
    if a.coeffs[0] != 0:
        raise BadConstantTerm("exp needs constant term 0")
    n = a.order
    b = [1]
    for k in range(1, n + 1):
        acc = 1 * a.coeffs[k] * k
        for i in range(1, k):
            acc = acc + i * a.coeffs[i] * b[k - i]
        b.append(_int_div(acc, k))
    return QSeries(b, n)


def log_series(u):
    """log of a series with constant term 1 (else BadConstantTerm)."""
    if u.coeffs[0] != 1:
        raise BadConstantTerm("log needs constant term 1")
    n = u.order
    a = [0]
    for k in range(1, n + 1):
        acc = k * u.coeffs[k]
        for i in range(1, k):
            acc = acc - i * a[i] * u.coeffs[k - i]
        a.append(_int_div(acc, k))
    return QSeries(a, n)


def _int_div(x, k):
    if isinstance(x, int):
        return Fraction(x, k)
    if isinstance(x, Fraction):
        return x / k
    return x / k


def geometric(order):
    """1/(1-q) = 1 + q + q^2 + ... as an exact series."""
    return QSeries([Fraction(1)] * (order + 1), order)


def to_jsonable(series):
    """JSON form of a rational series: numerators/denominators as strings."""
    coeffs = []
    for c in series.coeffs:
        c = Fraction(c)
        coeffs.append({"n": str(c.numerator), "d": str(c.denominator)})
    return {"truncation_order": series.order, "coefficients": coeffs}
