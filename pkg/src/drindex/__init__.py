"""Exact q-expansion engine for Dirac-Ramond family index identities.

Truncated rational power series, level-1 (quasi)modular forms, graded
Pontryagin polynomials, Jacobi-like form lifts, elliptic characteristic
class kernels, the free-symbol family index, and the E8 level-one
character comparison.  Everything is exact; nothing is floated.
"""

from .qseries import (
    BadConstantTerm, NonUnitConstantTerm, QSeries, derive_q, exp_series,
    log_series,
)
from .modforms import (
    InsufficientOrder, ModularForm, NotInSpace, QuasiModularForm, SpaceBasis,
    WeightError, bernoulli, delta, dim_modular, echelon_basis, eisenstein,
    eisenstein_series, eisenstein_unnormalized_series, eta_inverse_power,
    qm_reduce,
)
from .sympoly import (
    BadLeadingTerm, GradedPolynomial, SymmetricContext,
    chern_character_components, elementary_from_power_sums,
    expand_symmetric_product, power_sums_from_elementary,
)
from .jacobi import (
    JacobiLikeForm, NotModularResidue, assemble, ck_lift, modular_sequence,
    natural_lift, parity_shift, pochhammer,
)
from .charclasses import (
    ClassTower, FractionalResidue, KernelSeries, a_hat_class,
    a_hat_closed_form, chern_v_direct, sigma_inverse_kernel, theta_kernel,
    twisted_chern_tower, u_to_q, witten_kernel,
)
from .family import (
    FiberSymbol, NotOneDimensional, SchExpression, UnsubstitutedP1,
    VerificationReport, anomaly_relations, fiber_integrate, index_chern_series,
    proportionality_constants, rank_symbol, twisted_index_chern,
    verify_index_lift_identity,
)
from .e8 import (
    E8CharacterData, ModularMismatch, ThetaE8Expansion, basic_character,
    bundle_character, e8_theta, theta_sum_expansion, verify_e8_identity,
)
from .dsl import ParseError, parse_expression, to_text
from .cli import evaluate, main, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
