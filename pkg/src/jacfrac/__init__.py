"""Jacobi-expansion fractional integrals on (0, pi) and on rank-one
compact symmetric spaces, with desk-scale verification suites.

The layers build on each other: special functions and quadrature, the
trigonometric Jacobi system, the Poisson kernel in series and closed
form, the fractional integral with its sharp kernel bound, weighted
two-index inequalities, and the sphere/ball mixed-norm operators.
"""

__version__ = "0.1.0"

from .expansion import (CoefficientVector, ParamPair, apply_operator_stencil,
                        eigenvalue, expand, measure_density, norm_const,
                        synthesize, trig_jacobi, trig_jacobi_all)
from .fractional import (BoundReport, FracParams, KernelProfile, frac_kernel,
                         frac_integral_semigroup, frac_integral_spectral,
                         kernel_apply_weights, lemma_estimate_check,
                         sharp_bound_rhs, verify_sharp_bound)
from .poisson import (TruncationError, gegenbauer_generating_check, pi_rule,
                      poisson_closed_form, poisson_series,
                      poisson_series_profile, product_formula_check, z_coord)
from .spaces import (BallFunction, MixedNormParams, SphereFunction,
                     ball_mixed_norm, ball_rule, ball_weight, circular_harmonic,
                     geodesic_coords, harmonic_count, lambda_operator_check,
                     mixed_norm, projective_restrict, psi_ball, psi_radial,
                     radial_rule, sphere_frac_laplacian, theorem1_ratio,
                     theorem2_ratio)
from .special import (QuadratureError, QuadratureRule, adaptive_quad,
                      gauss_jacobi_rule, gegenbauer, jacobi_poly, log_gamma,
                      mu_rule)
from .weights import (ApEstimate, ExponentBox, Interval, TwoWeightResult,
                      Weight, ap_constant_estimate, i_sigma, interval_moment,
                      peso_v, peso_w, theorem14_ratio, two_weight_condition,
                      weight_eval, weight_integral, weighted_lp_lq_ratio)
