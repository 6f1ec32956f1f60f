"""Rank-one compact symmetric spaces at desk scale.

Geodesic polar coordinates on the sphere, spherical-harmonic times
Jacobi product bases, mixed L^p(l^2) norms, spectral fractional
Laplacians, and the ball model used for the projective spaces, all
parametric in (d, m) with the verification defaults d = 2, m = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .expansion import ParamPair, norm_const, trig_jacobi_all
from .special import QuadratureRule, gauss_jacobi_rule, gegenbauer, jacobi_poly_all, log_gamma


# ---------------------------------------------------------------------------
# geometry and harmonics

def geodesic_coords(theta: float, xprime) -> np.ndarray:
    """(cos t, x'_1 sin t, ..., x'_d sin t): geodesic polar chart point."""
    x = np.asarray(xprime, dtype=float)
    if abs(np.linalg.norm(x) - 1.0) > 1e-12:
        raise ValueError("x' must be a unit vector")
    return np.concatenate(([math.cos(theta)], x * math.sin(theta)))


def harmonic_count(d: int, j: int) -> int:
    """Dimension of degree-j spherical harmonics on S^(d-1).

    (2j + d - 2) (j + d - 3)! / (j! (d - 2)!), with the degenerate j = 0
    case equal to 1.
    """
    if d < 2 or j < 0:
        raise ValueError("need d >= 2, j >= 0")
    if j == 0:
        return 1
    return round((2 * j + d - 2) / (j + d - 2)
                 * math.comb(j + d - 2, j))


def circular_harmonic(j: int, k: int, phi):
    """Real orthonormal basis on the unit circle (the d = 2 case):
    1/sqrt(2 pi); cos(j phi)/sqrt(pi), sin(j phi)/sqrt(pi)."""
    if j < 0 or not (1 <= k <= harmonic_count(2, j)):
        raise ValueError(f"harmonic index ({j}, {k}) out of range")
    phi = np.asarray(phi, dtype=float)
    if j == 0:
        return np.full_like(phi, 1.0 / math.sqrt(2.0 * math.pi))
    if k == 1:
        return np.cos(j * phi) / math.sqrt(math.pi)
    return np.sin(j * phi) / math.sqrt(math.pi)


def radial_rule(d: int, n: int = 96) -> QuadratureRule:
    """Gauss rule in theta for (sin theta)^(d-1) d theta on (0, pi)."""
    e = (d - 2) / 2.0
    base = gauss_jacobi_rule(n, e, e)
    return QuadratureRule(np.arccos(base.nodes)[::-1], base.weights[::-1],
                          base.exactness, f"sphere-radial(d={d})")


def _psi_norm_log(n: int, j: int, d: int) -> float:
    """log of the radial normalizer for (sin t)^j C_(n-j)^(j+(d-1)/2)(cos t)."""
    lam = j + (d - 1) / 2.0
    dn = norm_const(n - j, ParamPair(lam - 0.5, lam - 0.5))
    return (-lam * math.log(2.0) + log_gamma(2.0 * j + d - 1.0)
            + log_gamma(n + d / 2.0) - log_gamma(j + d / 2.0)
            - log_gamma(n + j + d - 1.0) + math.log(dn))


def psi_radial(n: int, j: int, theta, d: int = 2):
    """Orthonormal radial profile psi_(n,j) in L^2((0,pi),(sin t)^(d-1) dt)."""
    if not (0 <= j <= n):
        raise ValueError("need 0 <= j <= n")
    th = np.asarray(theta, dtype=float)
    lam = j + (d - 1) / 2.0
    a = math.exp(_psi_norm_log(n, j, d))
    return a * np.sin(th) ** j * gegenbauer(n - j, lam, np.cos(th))


def psi_radial_all(nmax: int, j: int, theta, d: int = 2) -> np.ndarray:
    """psi_(j,j), ..., psi_(nmax,j) at theta, stacked on axis 0.

    All degrees share one Jacobi recurrence pass; the per-degree
    Gegenbauer-to-Jacobi factors are folded into the normalizers.
    """
    if not (0 <= j <= nmax):
        raise ValueError("need 0 <= j <= nmax")
    th = np.asarray(theta, dtype=float)
    lam = j + (d - 1) / 2.0
    pvals = jacobi_poly_all(nmax - j, lam - 0.5, lam - 0.5, np.cos(th))
    sinj = np.sin(th) ** j
    # psi_(n+j,j) = 2^-lam (sin t)^j * d_n^(lam-1/2,lam-1/2) P_n(cos t)
    pp = ParamPair(lam - 0.5, lam - 0.5)
    scale = np.array([2.0 ** -lam * norm_const(k, pp) for k in range(nmax - j + 1)])
    return scale[:, None] * sinj[None, :] * pvals


def sphere_multiplier(n_total: int, d: int, sigma: float) -> float:
    """Spectral multiplier (n + (d-1)/2)^(-sigma) of the fractional
    integral at total degree n."""
    return (n_total + (d - 1) / 2.0) ** -sigma


# ---------------------------------------------------------------------------
# mixed-coordinate functions on the sphere

@dataclass
class SphereFunction:
    """Function on S^d stored as per-(j, k) radial profiles on a
    quadrature grid; the angular factor is an orthonormal harmonic.

    ``profiles`` maps (j, k) to values on ``rule.nodes``; ``nmax`` caps
    the radial expansion degree used by spectral operators.
    """

    d: int
    rule: QuadratureRule
    profiles: dict
    nmax: int

    _basis_cache: dict = field(default_factory=dict, repr=False)

    def _radial_basis(self, j: int) -> np.ndarray:
        if j not in self._basis_cache:
            self._basis_cache[j] = psi_radial_all(self.nmax, j, self.rule.nodes, self.d)
        return self._basis_cache[j]

    @classmethod
    def from_radial_coeffs(cls, d: int, coeffs: dict, nmax: int,
                           n_nodes: int = 96) -> "SphereFunction":
        """Build from radial coefficients: coeffs[(j, k)][i] multiplies
        psi_(j+i, j); harmonic indices must satisfy k <= d(j)."""
        rule = radial_rule(d, n_nodes)
        sf = cls(d, rule, {}, nmax)
        for (j, k), c in coeffs.items():
            if not (1 <= k <= harmonic_count(d, j)):
                raise ValueError(f"harmonic index ({j}, {k}) out of range")
            c = np.asarray(c, dtype=float)
            basis = sf._radial_basis(j)
            if len(c) > basis.shape[0]:
                raise ValueError("coefficient list exceeds radial truncation")
            sf.profiles[(j, k)] = c @ basis[:len(c)]
        return sf

    def radial_coeffs(self, j: int, k: int) -> np.ndarray:
        basis = self._radial_basis(j)
        return basis @ (self.rule.weights * self.profiles[(j, k)])

    def square_sum(self) -> np.ndarray:
        s = np.zeros_like(self.rule.nodes)
        for prof in self.profiles.values():
            s += prof ** 2
        return s

    def coefficient_norm_sq(self) -> float:
        return sum(float(np.dot(self.radial_coeffs(j, k) ** 2, np.ones(self.nmax - j + 1)))
                   for (j, k) in self.profiles)


def mixed_norm(sf: SphereFunction, p: float) -> float:
    """(int (sum_{j,k} F_{j,k}(t)^2)^(p/2) (sin t)^(d-1) dt)^(1/p)."""
    if p < 1.0:
        raise ValueError("need p >= 1")
    s = sf.square_sum()
    return float(np.dot(sf.rule.weights, s ** (p / 2.0))) ** (1.0 / p)


def sphere_frac_laplacian(sf: SphereFunction, sigma: float) -> SphereFunction:
    """Spectral fractional integral: each radial profile is expanded in
    its j-sector basis and scaled by (n + (d-1)/2)^(-sigma) at total
    degree n."""
    if not (0.0 < sigma < 1.0):
        raise ValueError("sigma must lie in (0, 1)")
    out = SphereFunction(sf.d, sf.rule, {}, sf.nmax)
    out._basis_cache = sf._basis_cache
    for (j, k) in sf.profiles:
        coeffs = sf.radial_coeffs(j, k)
        mult = np.array([sphere_multiplier(n, sf.d, sigma)
                         for n in range(j, sf.nmax + 1)])
        out.profiles[(j, k)] = (coeffs * mult) @ sf._radial_basis(j)
    return out


def projective_restrict(sf: SphereFunction) -> SphereFunction:
    """Projection onto even total degree (functions on the projective
    space seen as antipodally even functions on the sphere)."""
    out = SphereFunction(sf.d, sf.rule, {}, sf.nmax)
    out._basis_cache = sf._basis_cache
    for (j, k) in sf.profiles:
        coeffs = sf.radial_coeffs(j, k)
        keep = np.array([(n % 2 == 0) for n in range(j, sf.nmax + 1)], dtype=float)
        out.profiles[(j, k)] = (coeffs * keep) @ sf._radial_basis(j)
    return out


@dataclass(frozen=True)
class MixedNormParams:
    """Exponents with the admissibility windows of the two mixed-norm
    theorems; ``space`` is 'sphere', 'projective', or 'ball'."""

    p: float
    q: float
    sigma: float
    space: str = "sphere"
    d: int = 2
    m: int = 0

    @property
    def window_ok(self) -> bool:
        p, q, d, m = self.p, self.q, self.d, self.m
        if self.space in ("sphere", "projective"):
            if d < 2:
                return False
            return (2 * d / (d + 1) < p <= q < 2 * d / (d - 1)
                    and 1.0 / q >= 1.0 / p - self.sigma / d - 1e-15)
        lower = max((2 * m + 2) / (m + 1.5), 2 * d / (2 * d - 0.5))
        upper = min((2 * m + 2) / (m + 0.5), 2 * d / (2 * d - 1.5))
        gap = min(self.sigma / (2 * m + 2), self.sigma / (2 * d))
        return lower < p <= q < upper and 1.0 / q >= 1.0 / p - gap - 1e-15

    @property
    def usable(self) -> bool:
        """Window membership, or the unconditional Parseval case p=q=2
        (a bounded spectral multiplier needs no window there)."""
        return self.window_ok or (self.p == 2.0 and self.q == 2.0)


def theorem1_ratio(sf: SphereFunction, mnp: MixedNormParams) -> float:
    """Mixed-norm ratio of the fractional integral on the sphere (or on
    the projective space after even restriction)."""
    if not mnp.usable:
        raise ValueError("exponents outside the admissibility window")
    work = projective_restrict(sf) if mnp.space == "projective" else sf
    den = mixed_norm(work, mnp.p)
    if den == 0.0:
        raise ZeroDivisionError("zero denominator norm")
    return mixed_norm(sphere_frac_laplacian(work, mnp.sigma), mnp.q) / den


# ---------------------------------------------------------------------------
# ball model for the projective spaces over C, H, and the exceptional plane

def ball_weight(r, d: int, m: int):
    """c r^-1 (1-r)^m with c = Gamma(m+d+1)/(Gamma(d) Gamma(m+1));
    the associated measure c r^(d-1) (1-r)^m dr has total mass 1."""
    rr = np.asarray(r, dtype=float)
    if np.any(rr <= 0.0) or np.any(rr >= 1.0):
        raise ValueError("r must lie in (0, 1)")
    logc = log_gamma(m + d + 1.0) - log_gamma(float(d)) - log_gamma(m + 1.0)
    return math.exp(logc) * rr ** -1.0 * (1.0 - rr) ** m


def ball_rule(d: int, m: int, n: int = 96) -> QuadratureRule:
    """Gauss rule in r for omega(r) r^d dr on (0, 1), via x = 2r - 1."""
    base = gauss_jacobi_rule(n, float(m), float(d - 1))
    logc = log_gamma(m + d + 1.0) - log_gamma(float(d)) - log_gamma(m + 1.0)
    scale = math.exp(logc) * 2.0 ** -(m + d)
    return QuadratureRule((1.0 + base.nodes) / 2.0, base.weights * scale,
                          base.exactness, f"ball(d={d},m={m})")


def psi_ball(n: int, j: int, r, d: int = 2, m: int = 0):
    """Orthonormal radial profile a r^j P_(n-j)^((m, 2j+d-1))(2r - 1)
    in L^2((0,1), omega(r) r^d dr)."""
    if not (0 <= j <= n):
        raise ValueError("need 0 <= j <= n")
    rr = np.asarray(r, dtype=float)
    pp = ParamPair(float(m), 2.0 * j + d - 1.0)
    logc = log_gamma(m + d + 1.0) - log_gamma(float(d)) - log_gamma(m + 1.0)
    a = math.exp(-0.5 * logc) * norm_const(n - j, pp)
    vals = jacobi_poly_all(n - j, float(m), 2.0 * j + d - 1.0, 2.0 * rr - 1.0)[n - j]
    return a * rr ** j * vals


def psi_ball_all(nmax: int, j: int, r, d: int = 2, m: int = 0) -> np.ndarray:
    """psi_(j,j), ..., psi_(nmax,j) at r, stacked on axis 0."""
    if not (0 <= j <= nmax):
        raise ValueError("need 0 <= j <= nmax")
    rr = np.asarray(r, dtype=float)
    pp = ParamPair(float(m), 2.0 * j + d - 1.0)
    logc = log_gamma(m + d + 1.0) - log_gamma(float(d)) - log_gamma(m + 1.0)
    pvals = jacobi_poly_all(nmax - j, float(m), 2.0 * j + d - 1.0, 2.0 * rr - 1.0)
    scale = np.array([math.exp(-0.5 * logc) * norm_const(k, pp)
                      for k in range(nmax - j + 1)])
    return scale[:, None] * rr[None, :] ** j * pvals


def ball_multiplier(n_total: int, d: int, m: int, sigma: float) -> float:
    return (n_total + (m + d) / 2.0) ** -sigma


@dataclass
class BallFunction:
    """Mixed representation on the (d+1)-ball with weight omega:
    per-(j, k) radial profiles on an r-quadrature grid."""

    d: int
    m: int
    rule: QuadratureRule
    profiles: dict
    nmax: int

    _basis_cache: dict = field(default_factory=dict, repr=False)

    def _radial_basis(self, j: int) -> np.ndarray:
        if j not in self._basis_cache:
            self._basis_cache[j] = psi_ball_all(self.nmax, j, self.rule.nodes,
                                                self.d, self.m)
        return self._basis_cache[j]

    @classmethod
    def from_radial_coeffs(cls, d: int, m: int, coeffs: dict, nmax: int,
                           n_nodes: int = 96) -> "BallFunction":
        rule = ball_rule(d, m, n_nodes)
        bf = cls(d, m, rule, {}, nmax)
        # harmonic dimension on S^d: d(j) = (2j+d-1) (j+d-2)!/(j!(d-1)!)
        for (j, k), c in coeffs.items():
            if not (1 <= k <= harmonic_count(d + 1, j)):
                raise ValueError(f"harmonic index ({j}, {k}) out of range")
            c = np.asarray(c, dtype=float)
            basis = bf._radial_basis(j)
            if len(c) > basis.shape[0]:
                raise ValueError("coefficient list exceeds radial truncation")
            bf.profiles[(j, k)] = c @ basis[:len(c)]
        return bf

    def radial_coeffs(self, j: int, k: int) -> np.ndarray:
        basis = self._radial_basis(j)
        return basis @ (self.rule.weights * self.profiles[(j, k)])

    def square_sum(self) -> np.ndarray:
        s = np.zeros_like(self.rule.nodes)
        for prof in self.profiles.values():
            s += prof ** 2
        return s


def ball_mixed_norm(bf: BallFunction, p: float) -> float:
    """(int (sum |F_{j,k}(r)|^2)^(p/2) omega(r) r^d dr)^(1/p)."""
    if p < 1.0:
        raise ValueError("need p >= 1")
    s = bf.square_sum()
    return float(np.dot(bf.rule.weights, s ** (p / 2.0))) ** (1.0 / p)


def ball_frac_laplacian(bf: BallFunction, sigma: float) -> BallFunction:
    """Spectral action with multipliers (n + (m+d)/2)^(-sigma) at total
    degree n = j + radial index."""
    if not (0.0 < sigma < 1.0):
        raise ValueError("sigma must lie in (0, 1)")
    out = BallFunction(bf.d, bf.m, bf.rule, {}, bf.nmax)
    out._basis_cache = bf._basis_cache
    for (j, k) in bf.profiles:
        coeffs = bf.radial_coeffs(j, k)
        mult = np.array([ball_multiplier(n, bf.d, bf.m, sigma)
                         for n in range(j, bf.nmax + 1)])
        out.profiles[(j, k)] = (coeffs * mult) @ bf._radial_basis(j)
    return out


def theorem2_ratio(bf: BallFunction, mnp: MixedNormParams, sigma: float | None = None) -> float:
    """Mixed-norm ratio of the ball fractional integral."""
    if mnp.space != "ball":
        raise ValueError("expected ball-space exponents")
    if not mnp.usable:
        raise ValueError("exponents outside the admissibility window")
    s = mnp.sigma if sigma is None else sigma
    den = ball_mixed_norm(bf, mnp.p)
    if den == 0.0:
        raise ZeroDivisionError("zero denominator norm")
    return ball_mixed_norm(ball_frac_laplacian(bf, s), mnp.q) / den


def lambda_operator_check(n: int, j: int, d: int, m: int,
                          r_grid=None, h: float = 1e-3) -> float:
    """Max finite-difference residual of the radial eigen-equation.

    The second-order operator r(r-1) f'' + ((m+d+1) r - d) f'
    + ((m+d)/2)^2 f + j(j+d-1)/r f (the harmonic term contributes
    through the angular eigenvalue) applied to psi_(n,j) should return
    (n + (m+d)/2)^2 psi_(n,j).
    """
    if r_grid is None:
        r_grid = np.linspace(0.15, 0.85, 15)
    r = np.asarray(r_grid, dtype=float)
    if np.any(r - h <= 0.0) or np.any(r + h >= 1.0):
        raise ValueError("stencil leaves (0, 1)")

    def f(x):
        return psi_ball(n, j, x, d, m)

    d2 = (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h)
    d1 = (f(r + h) - f(r - h)) / (2.0 * h)
    lam_val = (r * (r - 1.0) * d2 + ((m + d + 1.0) * r - d) * d1
               + ((m + d) / 2.0) ** 2 * f(r) + j * (j + d - 1.0) / r * f(r))
    eig = (n + (m + d) / 2.0) ** 2
    return float(np.max(np.abs(lam_val - eig * f(r))))
