"""Exact q-expansions: Eisenstein series, the discriminant, eta powers.

Everything is a truncated power series with Fraction coefficients, so all
the classical integrality statements can be checked on the nose.
"""

from drindex import (
    delta, eisenstein, eisenstein_series, eta_inverse_power, qm_reduce,
)
from drindex.qseries import derive_q

order = 8

print("E2 :", list(eisenstein_series(2, order).coeffs))
print("E4 :", list(eisenstein_series(4, order).coeffs))
print("E6 :", list(eisenstein_series(6, order).coeffs))
print("Delta:", list(delta().expansion(order).coeffs))

# Weight 8 is one-dimensional, so the divisor-sum series must be E4^2.
e8 = eisenstein(8)
print("\nE8 as a polynomial in E4, E6:", e8)

# The eta-corrected weight-4 series is the cube root of the j-invariant;
# its coefficients are famous positive integers (1, 248, 4124, ...).
j13 = eta_inverse_power(8, order) * eisenstein_series(4, order)
print("\nE4 / eta^8 (normalized):", [int(c) for c in j13.coeffs])

# Quasimodular reduction: the q-derivative of E4 lands back in the ring.
de4 = qm_reduce(derive_q(eisenstein_series(4, 20)), 6)
print("\nD(E4) reduces to:", de4)
print("which is the classical (E2*E4 - E6)/3.")
