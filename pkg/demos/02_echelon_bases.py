"""Echelon bases against an eta-power denominator.

For each even weight w and fiber dimension m there is a basis phi_i of the
weight-w space such that the normalized series phi_i / eta^m starts q^i and
has no other coefficients below q^s (s the dimension).  These bases control
which twisted index classes determine all the others.
"""

from drindex import echelon_basis, eta_inverse_power
from drindex.modforms import render_form

for weight, m in [(12, 8), (12, 20), (4, 8), (16, 8)]:
    basis = echelon_basis(weight, m)
    print("weight %d, fiber dimension %d (dim %d):" % (weight, m, len(basis)))
    eta = eta_inverse_power(m, len(basis) + 3)
    for i, phi in enumerate(basis):
        normalized = eta * phi.expansion(len(basis) + 3)
        print("  phi_%d = %s" % (i, render_form(phi)))
        print("        normalized expansion: %s" % list(normalized.coeffs))
    print()

# The two famous corrections: 728 for eight-dimensional fibers, 740 for
# twenty-dimensional ones; their normalized q^2 coefficients 196732 and
# 196870 are exactly the proportionality constants of the text.
