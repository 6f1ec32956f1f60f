"""Trigonometric Jacobi system on (0, pi).

Measure density, orthonormal basis, eigenvalues, quadrature
expansion/synthesis, and a finite-difference stencil for the underlying
second-order differential operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .special import QuadratureRule, jacobi_poly, jacobi_poly_all, log_gamma, mu_rule

THETA_MARGIN = 1e-6  # grids stay this far from 0 and pi


@dataclass(frozen=True)
class ParamPair:
    """Jacobi type parameters with the regime flags used downstream.

    ``basic`` (alpha, beta > -1) is required everywhere; ``theorem13``
    (alpha >= -1/2 and beta > -1/2) is the regime of the sharp kernel
    bound and of the fractional-integral kernel machinery.
    """

    alpha: float
    beta: float

    @property
    def basic(self) -> bool:
        return self.alpha > -1.0 and self.beta > -1.0

    @property
    def theorem13(self) -> bool:
        return self.alpha >= -0.5 and self.beta > -0.5

    @property
    def first_eigenvalue_shift(self) -> float:
        return 0.5 * (self.alpha + self.beta + 1.0)

    def require_basic(self):
        if not self.basic:
            raise ValueError(f"parameters out of range (need alpha, beta > -1): {self}")


def _check_theta_open(theta) -> np.ndarray:
    th = np.asarray(theta, dtype=float)
    if np.any(th <= 0.0) or np.any(th >= math.pi):
        raise ValueError("theta must lie strictly inside (0, pi)")
    return th


def measure_density(theta, pp: ParamPair):
    """Density of d mu_{alpha,beta}: (sin t/2)^(2a+1) (cos t/2)^(2b+1)."""
    pp.require_basic()
    th = _check_theta_open(theta)
    return (np.sin(th / 2.0) ** (2.0 * pp.alpha + 1.0)
            * np.cos(th / 2.0) ** (2.0 * pp.beta + 1.0))


def norm_const(n: int, pp: ParamPair) -> float:
    """Normalizing factor d_n making d_n * P_n(cos t) a unit vector.

    Evaluated as exp of a log-gamma combination.  The n = 0 case is
    rewritten so the limit alpha + beta + 1 -> 0 stays finite.
    """
    pp.require_basic()
    if n < 0:
        raise ValueError("degree must be nonnegative")
    a, b = pp.alpha, pp.beta
    if n == 0:
        lg = log_gamma(a + b + 2.0) - log_gamma(a + 1.0) - log_gamma(b + 1.0)
        return math.exp(0.5 * lg)
    lg = (math.log(2.0 * n + a + b + 1.0) - math.log(n + a + b + 1.0)
          + log_gamma(n + a + b + 2.0) + log_gamma(n + 1.0)
          - log_gamma(n + a + 1.0) - log_gamma(n + b + 1.0))
    return math.exp(0.5 * lg)


def trig_jacobi(n: int, pp: ParamPair, theta):
    """Orthonormal trigonometric Jacobi polynomial at theta in (0, pi)."""
    th = _check_theta_open(theta)
    return norm_const(n, pp) * jacobi_poly(n, pp.alpha, pp.beta, np.cos(th))


def trig_jacobi_all(nmax: int, pp: ParamPair, theta):
    """All orthonormal polynomials of degree 0..nmax at theta, axis 0."""
    th = _check_theta_open(theta)
    vals = jacobi_poly_all(nmax, pp.alpha, pp.beta, np.cos(th))
    d = np.array([norm_const(n, pp) for n in range(nmax + 1)])
    return vals * d.reshape((-1,) + (1,) * (vals.ndim - 1))


def eigenvalue(n: int, pp: ParamPair) -> float:
    """Eigenvalue (n + (alpha+beta+1)/2)^2 of the differential operator."""
    pp.require_basic()
    return (n + pp.first_eigenvalue_shift) ** 2


@dataclass(frozen=True)
class CoefficientVector:
    """Finite coefficient sequence c_0..c_N against a fixed ParamPair."""

    pp: ParamPair
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def l2_norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))


def default_rule(pp: ParamPair, n_nodes: int = 128) -> QuadratureRule:
    """Gauss rule on (0, pi) against d mu for this parameter pair."""
    return mu_rule(n_nodes, pp.alpha, pp.beta)


def expand(f, pp: ParamPair, trunc: int, rule: QuadratureRule | None = None) -> CoefficientVector:
    """Fourier-Jacobi coefficients c_n = int f P_n dmu for n = 0..trunc.

    The supplied rule must integrate the products f * P_n exactly enough;
    at minimum its polynomial exactness must be >= 2 * trunc.
    """
    pp.require_basic()
    if rule is None:
        rule = default_rule(pp, max(128, 2 * trunc + 2))
    if rule.exactness < 2 * trunc:
        raise ValueError(
            f"quadrature exactness {rule.exactness} insufficient for truncation {trunc}")
    fv = np.asarray(f(rule.nodes), dtype=float)
    basis = trig_jacobi_all(trunc, pp, rule.nodes)
    coeffs = basis @ (rule.weights * fv)
    return CoefficientVector(pp, coeffs)


def synthesize(cv: CoefficientVector, theta):
    """Pointwise sum of the finite expansion at theta in (0, pi)."""
    basis = trig_jacobi_all(cv.truncation, cv.pp, theta)
    return np.tensordot(cv.coeffs, basis, axes=1)


def apply_operator_stencil(f, pp: ParamPair, theta: float, h: float) -> float:
    """Second-order central-difference action of the Jacobi operator.

    -f'' - [(a-b+(a+b+1) cos t)/sin t] f' + ((a+b+1)/2)^2 f, with both
    derivatives replaced by symmetric differences of step h.  The full
    stencil must stay inside (0, pi).
    """
    pp.require_basic()
    if h <= 0.0:
        raise ValueError("step must be positive")
    if not (0.0 < theta - h and theta + h < math.pi):
        raise ValueError("stencil leaves (0, pi)")
    a, b = pp.alpha, pp.beta
    fm, f0, fp = f(theta - h), f(theta), f(theta + h)
    d2 = (fp - 2.0 * f0 + fm) / (h * h)
    d1 = (fp - fm) / (2.0 * h)
    coef = (a - b + (a + b + 1.0) * math.cos(theta)) / math.sin(theta)
    return -d2 - coef * d1 + pp.first_eigenvalue_shift ** 2 * f0
