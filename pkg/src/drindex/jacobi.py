"""Jacobi-like forms: weight/index-graded z-power series with quasimodular entries.

A form of weight k and index lam is stored through its z-coefficient list;
the entry at z^j is a quasimodular form of weight k + j, so entries of the
wrong weight parity vanish identically and each form is purely even or
purely odd in z.  The index may be a rational or a graded polynomial (the
family computations use index -p1/2).

Every such form is a z-graded combination of lifts of honestly modular
forms: the lift of f of weight k with index lam has z^2n entry
lam^n D^n f / (n! (k)_n), and the inverse direction recovers the modular
sequence through an alternating Pochhammer sum.  Both directions are exact
symbolic operations on the quasimodular representation; no q-expansions are
involved.
"""

from fractions import Fraction

from .linsolve import solve_exact
from .modforms import (
    ModularForm, QuasiModularForm, WeightError, dim_modular,
    modular_monomials, _monomial_expansion,
)


class NotModularResidue(ValueError):
    """A decomposition produced an entry with surviving E2 dependence."""


def pochhammer(k, n):
    """Rising factorial k (k+1) ... (k+n-1)."""
    out = 1
    for i in range(n):
        out *= k + i
    return out


def _promote_form(f):
    if isinstance(f, QuasiModularForm):
        return f
    if isinstance(f, ModularForm):
        return QuasiModularForm.promote(f)
    return QuasiModularForm.promote(f)


class JacobiLikeForm:
    __slots__ = ("weight", "index", "coeffs", "parity")

    def __init__(self, weight, index, coeffs):
        coeffs = [_promote_form(c) for c in coeffs]
        parity = "even" if weight % 2 == 0 else "odd"
        for j, c in enumerate(coeffs):
            if c.is_zero():
                continue
            if (weight + j) % 2:
                raise WeightError("entry at z^%d would carry odd weight %d"
                                  % (j, weight + j))
            if c.weight != weight + j:
                raise WeightError("entry at z^%d has weight %d, expected %d"
                                  % (j, c.weight, weight + j))
        self.weight = weight
        self.index = index
        self.coeffs = tuple(coeffs)
        self.parity = parity

    @property
    def z_order(self):
        return len(self.coeffs) - 1

    def entry(self, j):
        if 0 <= j <= self.z_order:
            return self.coeffs[j]
        return QuasiModularForm.zero(self.weight + j)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, JacobiLikeForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        if self.weight != other.weight or not _index_eq(self.index, other.index):
            return False
        n = max(self.z_order, other.z_order)
        return all(self.entry(j) == other.entry(j) for j in range(n + 1))

    def __ne__(self, other):
        return not self.__eq__(other)

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.weight != other.weight or not _index_eq(self.index, other.index):
            raise WeightError("can only add forms of one weight and index")
        n = max(self.z_order, other.z_order)
        return JacobiLikeForm(self.weight, self.index,
                              [self.entry(j) + other.entry(j) for j in range(n + 1)])

    def __repr__(self):
        return "JacobiLikeForm(weight=%d, parity=%s, z_order=%d)" % (
            self.weight, self.parity, self.z_order)

    def to_jsonable(self):
        return {"weight": self.weight,
                "index": str(self.index),
                "parity": self.parity,
                "coefficients": [c.to_jsonable() for c in self.coeffs]}


def _index_eq(a, b):
    try:
        return a == b
    except TypeError:
        return False


def ck_lift(f, lam=Fraction(1), z_order=16):
    """The canonical index-lam lift of a modular form f of weight k >= 1:

        z^2n entry = lam^n D^n f / (n! (k)_n).

    A weight-0 form must be constant and lifts to itself.
    """
    f = _as_modular(f)
    k = f.weight
    if f.is_zero():
        return JacobiLikeForm(k, lam, [QuasiModularForm.zero(k)])
    if k == 0:
        return JacobiLikeForm(0, lam, [QuasiModularForm.promote(f)])
    if k < 0:
        raise WeightError("no lifts below weight 0")
    coeffs = [QuasiModularForm.zero(k + j) for j in range(z_order + 1)]
    deriv = QuasiModularForm.promote(f)
    fact = 1
    lam_pow = 1
    for n in range(0, z_order // 2 + 1):
        if n:
            fact *= n
            lam_pow = lam_pow * lam
        denom = fact * pochhammer(k, n)
        coeffs[2 * n] = deriv.scale(lam_pow) / denom
        if 2 * n + 2 <= z_order:
            deriv = deriv.derivative()
    return JacobiLikeForm(k, lam, coeffs)


def _as_modular(f):
    if isinstance(f, QuasiModularForm):
        return f.as_modular()
    if isinstance(f, ModularForm):
        return f
    if f == 0:
        return ModularForm.zero()
    return ModularForm.constant(f)


def modular_sequence(form):
    """Invert the lift decomposition: the modular forms xi_n with

        F = sum_n z^n · (index-lam lift of xi_n),

        xi_n = sum_j (-lam)^j (k+n-j-2)!/(j! (k+n-2)!) D^j chi_{n-2j}.

    The factorial ratio is evaluated as a Pochhammer quotient, so any k with
    k + n >= 2 on the nonzero entries is allowed.  Entries whose E2 part
    fails to cancel raise NotModularResidue.
    """
    k = form.weight
    lam = form.index
    out = []
    for n in range(form.z_order + 1):
        chi_terms = [form.entry(n - 2 * j) for j in range((n // 2) + 1)]
        if all(c.is_zero() for c in chi_terms):
            out.append(ModularForm.zero(k + n if (k + n) % 2 == 0 else 0))
            continue
        if k + n < 2:
            raise WeightError("decomposition undefined at weight %d, slot %d" % (k, n))
        acc = QuasiModularForm.zero(k + n)
        for j in range((n // 2) + 1):
            chi = chi_terms[j]
            if chi.is_zero():
                continue
            base = k + n - j - 1
            denom = _factorial(j) * pochhammer(base, j)
            if denom == 0:
                raise WeightError("Pochhammer quotient undefined at slot %d" % n)
            term = chi.derivative_n(j).scale(_neg_pow(lam, j)) / denom
            acc = acc + term
        if not acc.is_modular():
            raise NotModularResidue("entry at slot %d keeps an E2 part" % n)
        out.append(acc.as_modular())
    return out


def _neg_pow(lam, j):
    if j == 0:
        return Fraction(1)
    out = -lam
    for _ in range(j - 1):
        out = out * (-lam)
    return out


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def assemble(xi, weight, lam=Fraction(1), z_order=16):
    """Rebuild the form sum_n z^n · (lift of xi_n) from its modular sequence."""
    coeffs = [QuasiModularForm.zero(weight + j) for j in range(z_order + 1)]
    for n, f in enumerate(xi):
        if n > z_order:
            break
        f = _as_modular(f)
        if f.is_zero():
            continue
        lifted = ck_lift(f, lam, z_order - n)
        for j, c in enumerate(lifted.coeffs):
            if not c.is_zero():
                coeffs[n + j] = coeffs[n + j] + c
    return JacobiLikeForm(weight, lam, coeffs)


def parity_shift(form):
    """Multiplication by z: an even form of weight k becomes odd of weight k-1."""
    if form.parity != "even":
        raise WeightError("parity shift applies to even forms only")
    coeffs = [QuasiModularForm.zero(form.weight - 1)] + list(form.coeffs)
    return JacobiLikeForm(form.weight - 1, form.index, coeffs)


def natural_lift_layers(phi, z_order=16):
    """The modular layer sequence f_0, f_2, ... of the distinguished lift.

    f_0 = phi, and each f_{2l} is the unique weight k+2l form making the
    accumulated z^2l entry vanish to order q^dim(M^{k+2l}).  Uniqueness is a
    dimension count: the first s coefficients of a weight-w form are free
    exactly once, s = dim M^w.
    """
    phi = _as_modular(phi)
    k = phi.weight
    if phi.is_zero():
        return [ModularForm.zero(k)] + [
            ModularForm.zero(k + 2 * l) for l in range(1, z_order // 2 + 1)]
    if k < 4:
        raise WeightError("natural lifts need weight >= 4 (or the zero form)")
    layers = [phi]
    for l in range(1, z_order // 2 + 1):
        w = k + 2 * l
        partial = QuasiModularForm.zero(w)
        for n in range(l):
            denom = _factorial(l - n) * pochhammer(k + 2 * n, l - n)
            partial = partial + QuasiModularForm.promote(layers[n]).derivative_n(l - n) / denom
        s = dim_modular(w)
        monos = modular_monomials(w)
        series = partial.expansion(max(s, 1))
        if s == 0:
            layers.append(ModularForm.zero(w))
            continue
        rows = []
        cols = [_monomial_expansion(a, b, s) for (a, b) in monos]
        for n in range(s):
            rows.append([col[n] for col in cols])
        rhs = [-series[n] for n in range(s)]
        sol = solve_exact(rows, rhs)
        layers.append(ModularForm(w, {monos[j]: sol[j] for j in range(s)}))
    return layers


def natural_lift(phi, z_order=16):
    """The unique index-1 lift of phi whose z^2l entry has q-valuation

    at least dim M^(k+2l) for every l > 0."""
    phi = _as_modular(phi)
    layers = natural_lift_layers(phi, z_order)
    xi = [ModularForm.zero(0)] * (z_order + 1)
    for l, f in enumerate(layers):
        if 2 * l <= z_order:
            xi[2 * l] = f
    return assemble(xi, phi.weight, Fraction(1), z_order)
