"""Jacobi-Poisson kernel: spectral series and closed double-integral form.

Also carries the product formula and the Gegenbauer generating-function
identity that tie the two forms together.
"""

from __future__ import annotations

import math

import numpy as np

from .expansion import ParamPair, trig_jacobi_all
from .special import QuadratureRule, gauss_jacobi_rule, gegenbauer, log_gamma

SERIES_TAIL_TOL = 1e-14
SERIES_MIN_T = 0.05


class TruncationError(RuntimeError):
    """Series truncation cannot meet the tail tolerance."""


def z_coord(u, v, theta, phi):
    """u sin(t/2) sin(p/2) + v cos(t/2) cos(p/2); lies in [-1, 1]."""
    return (u * math.sin(theta / 2.0) * math.sin(phi / 2.0)
            + v * math.cos(theta / 2.0) * math.cos(phi / 2.0))


def pi_rule(gamma: float, n: int = 64) -> QuadratureRule:
    """Quadrature for the normalized measure c_g (1-u^2)^(g-1/2) du.

    Total mass is 1.  The limit gamma = -1/2 is the two-atom rule with
    nodes -1, 1 and weights 1/2 each.
    """
    if gamma < -0.5:
        raise ValueError(f"pi_rule requires gamma >= -1/2, got {gamma}")
    if gamma == -0.5:
        return QuadratureRule(np.array([-1.0, 1.0]), np.array([0.5, 0.5]),
                              exactness=1, descriptor="pi(-1/2) atoms")
    base = gauss_jacobi_rule(n, gamma - 0.5, gamma - 0.5)
    logc = log_gamma(gamma + 1.0) - 0.5 * math.log(math.pi) - log_gamma(gamma + 0.5)
    return QuadratureRule(base.nodes, base.weights * math.exp(logc),
                          base.exactness, f"pi({gamma})")


def _series_trunc(t: float, requested: int | None) -> int:
    if t <= 0.0:
        raise ValueError("semigroup time must be positive")
    if t < SERIES_MIN_T:
        raise TruncationError(
            f"series truncation insufficient for t = {t} < {SERIES_MIN_T}; "
            "use the closed form")
    need = int(math.ceil(-math.log(SERIES_TAIL_TOL) / t))
    if requested is None:
        return need
    if math.exp(-t * requested) >= SERIES_TAIL_TOL:
        raise TruncationError(
            f"truncation N = {requested} leaves tail exp(-tN) >= {SERIES_TAIL_TOL} at t = {t}")
    return requested


def poisson_series(t: float, theta: float, phi: float, pp: ParamPair,
                   trunc: int | None = None) -> float:
    """Spectral form: sum of exp(-t |n + (a+b+1)/2|) P_n(theta) P_n(phi).

    The truncation must satisfy exp(-t N) < 1e-14; with trunc=None it is
    chosen automatically.  Refuses t < 0.05, where the closed form is
    the authoritative evaluation path.
    """
    pp.require_basic()
    n = _series_trunc(t, trunc)
    shift = pp.first_eigenvalue_shift
    bt = trig_jacobi_all(n, pp, np.array([theta, phi]))
    degrees = np.arange(n + 1, dtype=float)
    damping = np.exp(-t * np.abs(degrees + shift))
    return float(np.sum(damping * bt[:, 0] * bt[:, 1]))


class ClosedFormKernel:
    """Closed-form Poisson kernel for fixed (theta, phi, params).

    Precomputes the tensor quadrature in (u, v) once so the kernel can be
    evaluated cheaply on whole batches of times t; this is what the
    fractional-integral kernel machinery drives.
    """

    def __init__(self, theta: float, phi: float, pp: ParamPair, n_uv: int = 64):
        if not (pp.alpha >= -0.5 and pp.beta >= -0.5):
            raise ValueError(
                f"closed form requires alpha, beta >= -1/2, got {pp}")
        if not (0.0 < theta < math.pi and 0.0 < phi < math.pi):
            raise ValueError("theta, phi must lie in (0, pi)")
        ru = pi_rule(pp.alpha, n_uv)
        rv = pi_rule(pp.beta, n_uv)
        u = ru.nodes[:, None]
        v = rv.nodes[None, :]
        self._one_minus_z = np.maximum(1.0 - z_coord(u, v, theta, phi), 0.0)
        self._w = ru.weights[:, None] * rv.weights[None, :]
        self._logw = np.log(self._w)
        self._power = pp.alpha + pp.beta + 2.0
        self._logpref = (log_gamma(pp.alpha + pp.beta + 2.0)
                         - log_gamma(pp.alpha + 1.0) - log_gamma(pp.beta + 1.0))
        self._pref = math.exp(self._logpref) if self._logpref < 700.0 else math.inf
        self._shift = pp.first_eigenvalue_shift

    def log_at(self, t):
        """log of the kernel for a scalar or 1-d array of times t > 0."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        e = np.exp(-0.5 * t)
        denom = ((1.0 - e) ** 2)[:, None, None] \
            + 2.0 * e[:, None, None] * self._one_minus_z
        expo = self._logw[None, :, :] - self._power * np.log(denom)
        m = expo.max(axis=(-2, -1))
        s = np.log(np.sum(np.exp(expo - m[:, None, None]), axis=(-2, -1))) + m
        with np.errstate(divide="ignore"):
            log_t_factor = np.log1p(-np.exp(-t))
        return self._logpref - self._shift * t + log_t_factor + s

    def at(self, t):
        """Kernel values; direct power sums with a log-space fallback
        when the integrand over- or underflows."""
        scalar = np.ndim(t) == 0
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if np.isfinite(self._pref):
            e = np.exp(-0.5 * t)
            denom = ((1.0 - e) ** 2)[:, None, None] \
                + 2.0 * e[:, None, None] * self._one_minus_z
            with np.errstate(over="raise", divide="raise"):
                try:
                    sums = np.einsum("ij,tij->t", self._w, denom ** -self._power)
                    out = self._pref * np.exp(-self._shift * t) * -np.expm1(-t) * sums
                    return float(out[0]) if scalar else out
                except FloatingPointError:
                    pass
        out = np.exp(self.log_at(t))
        return float(out[0]) if scalar else out


def poisson_closed_form(t: float, theta: float, phi: float, pp: ParamPair,
                        n_uv: int | None = None) -> float:
    """Closed form of the kernel as a double quadrature against the
    product of the two normalized (1-u^2)-type measures.

    Valid for alpha, beta >= -1/2 (atoms at the -1/2 ends).  Strictly
    positive for every admissible input.  With n_uv=None the per-axis
    node count doubles from 64 until two consecutive evaluations agree
    to 1e-11 relative (near-diagonal points at small t concentrate the
    integrand and need the extra resolution).
    """
    if n_uv is not None:
        return float(ClosedFormKernel(theta, phi, pp, n_uv).at(float(t)))
    prev = float(ClosedFormKernel(theta, phi, pp, 64).at(float(t)))
    n = 128
    while True:
        cur = float(ClosedFormKernel(theta, phi, pp, n).at(float(t)))
        if abs(cur - prev) <= 1e-11 * abs(cur) or n >= 2048:
            return cur
        prev, n = cur, 2 * n


def poisson_series_profile(t: float, theta: float, pp: ParamPair, phis,
                           trunc: int | None = None) -> np.ndarray:
    """Series kernel P_t(theta, phi) over an array of phi values.

    One recurrence pass over all phi at once; used by mass-identity and
    semigroup checks where the kernel is integrated in its second slot.
    """
    pp.require_basic()
    n = _series_trunc(t, trunc)
    shift = pp.first_eigenvalue_shift
    phis = np.asarray(phis, dtype=float)
    bt = trig_jacobi_all(n, pp, np.concatenate(([theta], phis)))
    degrees = np.arange(n + 1, dtype=float)
    damping = np.exp(-t * np.abs(degrees + shift))
    return (damping * bt[:, 0]) @ bt[:, 1:]


def product_formula_check(n: int, pp: ParamPair, theta: float, phi: float,
                          n_uv: int = 0) -> float:
    """|LHS - RHS| of the Jacobi product formula at degree n.

    LHS is P_n(theta) P_n(phi); RHS integrates the Gegenbauer polynomial
    of degree 2n of z(u, v, theta, phi) against the normalized product
    measure.  Requires alpha, beta > -1/2.
    """
    if not (pp.alpha > -0.5 and pp.beta > -0.5):
        raise ValueError("product formula requires alpha, beta > -1/2")
    if n_uv <= 0:
        n_uv = max(8, n + 2)
    lam = pp.alpha + pp.beta + 1.0
    bt = trig_jacobi_all(n, pp, np.array([theta, phi]))
    lhs = bt[n, 0] * bt[n, 1]
    ru = pi_rule(pp.alpha, n_uv)
    rv = pi_rule(pp.beta, n_uv)
    z = z_coord(ru.nodes[:, None], rv.nodes[None, :], theta, phi)
    integral = float(np.einsum("i,j,ij->", ru.weights, rv.weights,
                               gegenbauer(2 * n, lam, z)))
    logc = (math.log(2.0 * n + lam) + log_gamma(lam)
            - log_gamma(pp.alpha + 1.0) - log_gamma(pp.beta + 1.0))
    rhs = math.exp(logc) * integral
    return abs(lhs - rhs)


def gegenbauer_generating_check(lam: float, r: float, z: float, trunc: int) -> float:
    """Residual of the generating identity
    sum_k ((k+lam)/lam) C_k^lam(z) r^k = (1-r^2)/(1-2rz+r^2)^(lam+1).
    """
    if not (0.0 < lam):
        raise ValueError("generating identity needs lam > 0")
    if not (abs(r) < 1.0):
        raise ValueError("|r| < 1 required")
    acc = 0.0
    for k in range(trunc + 1):
        acc += (k + lam) / lam * gegenbauer(k, lam, z) * r ** k
    rhs = (1.0 - r * r) / (1.0 - 2.0 * r * z + r * r) ** (lam + 1.0)
    return abs(acc - rhs)
