"""Euclidean fractional integral on (0, pi), the half-angle weight pair,
Muckenhoupt-type checkers, and the two-index weighted inequality.

Interval set-functions are computed with endpoint-aware quadrature:
power-law factors at 0 and pi are folded into Gauss-Jacobi rules and
geometric panels carry the integrand across scales, so dyadic families
can shrink 30 generations without losing the integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .expansion import CoefficientVector, ParamPair, synthesize, trig_jacobi_all
from .rng import SplitMix64
from .special import QuadratureError, adaptive_quad, gauss_jacobi_rule, mu_rule

_PI = math.pi
_GL24 = gauss_jacobi_rule(24, 0.0, 0.0)


# ---------------------------------------------------------------------------
# weights and interval integrals

@dataclass(frozen=True)
class Weight:
    """Positive density on (0, pi) with known endpoint power behavior.

    ``exp0``/``exp_pi`` are the exponents of theta and (pi - theta) the
    density is comparable to at the two ends; integration folds them
    into the quadrature when an interval touches an endpoint.
    """

    density: object
    exp0: float = 0.0
    exp_pi: float = 0.0
    source: str = "custom"

    def __call__(self, theta):
        return self.density(np.asarray(theta, dtype=float))

    def dual(self, p: float) -> "Weight":
        """The conjugate density w^(-1/(p-1)) used in A_p products."""
        e = -1.0 / (p - 1.0)
        return Weight(lambda th, d=self.density: d(th) ** e,
                      self.exp0 * e, self.exp_pi * e, f"{self.source}-dual")

    @staticmethod
    def constant() -> "Weight":
        return Weight(lambda th: np.ones_like(th), 0.0, 0.0, "constant")

    @staticmethod
    def power(lam: float, nu: float = 0.0) -> "Weight":
        return Weight(lambda th: th ** lam * (_PI - th) ** nu, lam, nu, "power")

    @staticmethod
    def half_angle(exp_sin: float, exp_cos: float, source: str = "half-angle") -> "Weight":
        """(sin t/2)^exp_sin (cos t/2)^exp_cos."""
        return Weight(
            lambda th: np.sin(th / 2.0) ** exp_sin * np.cos(th / 2.0) ** exp_cos,
            exp_sin, exp_cos, source)


def peso_w(pp: ParamPair, q: float) -> Weight:
    """The q-side weight: (sin t/2)^((2a+1)(1-q/2)) (cos t/2)^((2b+1)(1-q/2))."""
    f = 1.0 - q / 2.0
    return Weight.half_angle((2.0 * pp.alpha + 1.0) * f,
                             (2.0 * pp.beta + 1.0) * f, "peso-w")


def peso_v(pp: ParamPair, p: float) -> Weight:
    """The p-side weight; same shape with q replaced by p."""
    f = 1.0 - p / 2.0
    return Weight.half_angle((2.0 * pp.alpha + 1.0) * f,
                             (2.0 * pp.beta + 1.0) * f, "peso-v")


def weight_eval(wt: Weight, theta):
    th = np.asarray(theta, dtype=float)
    if np.any(th <= 0.0) or np.any(th >= _PI):
        raise ValueError("theta must lie in (0, pi)")
    return wt(th)


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not (0.0 <= self.a < self.b <= _PI):
            raise ValueError(f"need 0 <= a < b <= pi, got ({self.a}, {self.b})")

    @property
    def length(self) -> float:
        return self.b - self.a


_TOUCH = 1e-13


def weight_integral(wt: Weight, iv: Interval, n: int = 24) -> float:
    """int_I w(t) dt with endpoint-aware graded quadrature.

    Ends of I at 0 or pi get a Gauss-Jacobi cell with the corresponding
    power folded in (requires exponent > -1 there); interior structure
    is covered by geometric panels toward both ends.
    """
    a, b = iv.a, iv.b
    touches0 = a <= _TOUCH
    touchespi = b >= _PI - _TOUCH
    if touches0 and wt.exp0 <= -1.0:
        raise QuadratureError(
            f"density with endpoint exponent {wt.exp0} <= -1 is not integrable at 0")
    if touchespi and wt.exp_pi <= -1.0:
        raise QuadratureError(
            f"density with endpoint exponent {wt.exp_pi} <= -1 is not integrable at pi")

    breaks = {a, b}
    s0 = min(b, 1.0)
    if touches0:
        breaks.add(0.5 * s0)
    else:
        x = a
        while 2.0 * x < s0:
            x *= 2.0
            breaks.add(x)
    s1 = min(_PI - a, 1.0)
    if touchespi:
        breaks.add(_PI - 0.5 * s1)
    else:
        x = _PI - b
        while 2.0 * x < s1:
            x *= 2.0
            breaks.add(_PI - x)
    pts = sorted(p for p in breaks if a <= p <= b)

    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (lo + hi)
        if lo <= _TOUCH and wt.exp0 != 0.0:
            rule = gauss_jacobi_rule(n, 0.0, wt.exp0)
            th = mid + half * rule.nodes
            vals = wt(th) * th ** -wt.exp0
            total += half ** (wt.exp0 + 1.0) * float(np.dot(rule.weights, vals))
        elif hi >= _PI - _TOUCH and wt.exp_pi != 0.0:
            rule = gauss_jacobi_rule(n, wt.exp_pi, 0.0)
            th = mid + half * rule.nodes
            vals = wt(th) * (_PI - th) ** -wt.exp_pi
            total += half ** (wt.exp_pi + 1.0) * float(np.dot(rule.weights, vals))
        else:
            th = mid + half * _GL24.nodes
            total += half * float(np.dot(_GL24.weights, wt(th)))
    return total


# ---------------------------------------------------------------------------
# Muckenhoupt-type estimates

@dataclass
class ApEstimate:
    """Result of an A_p sweep: largest observed product plus a
    divergence flag driven by the endpoint-shrinking dyadic chains."""

    value: float
    diverged: bool
    chain0: list
    chain_pi: list


def _chain_diverges(chain) -> bool:
    """Geometric blow-up test along one dyadic generation sequence.

    Triggers on a 10x jump within any 3 consecutive generations, or on
    a monotonically growing tail that accumulates a 10x factor (slowly
    divergent products grow by less than 10x per window).
    """
    c = [x for x in chain if np.isfinite(x) and x > 0.0]
    if len(c) < 4:
        return False
    for i in range(len(c) - 3):
        if c[i + 3] > 10.0 * c[i]:
            return True
    tail = c[len(c) // 2:]
    growing = all(y >= x * 0.999 for x, y in zip(tail[:-1], tail[1:]))
    return growing and tail[-1] > 10.0 * tail[0]


def ap_constant_estimate(wt: Weight, p: float, n_random: int = 200,
                         seed: int = 7, depth: int = 25) -> ApEstimate:
    """Largest (avg_I w) (avg_I w^(-1/(p-1)))^(p-1) over a structured
    interval family, with divergence detection.

    Family: dyadic chains whose inner endpoint marches toward 0 and pi,
    endpoint-anchored intervals when the exponents keep both densities
    integrable there, and seeded random interior intervals.
    """
    if p <= 1.0:
        raise ValueError("need p > 1")
    dual = wt.dual(p)

    def product(iv: Interval) -> float:
        aw = weight_integral(wt, iv) / iv.length
        ad = weight_integral(dual, iv) / iv.length
        return aw * ad ** (p - 1.0)

    chain0 = [product(Interval(_PI * 2.0 ** -(g + 1), 0.5 * _PI))
              for g in range(1, depth)]
    chain_pi = [product(Interval(0.5 * _PI, _PI * (1.0 - 2.0 ** -(g + 1))))
                for g in range(1, depth)]
    values = chain0 + chain_pi

    if wt.exp0 > -1.0 and dual.exp0 > -1.0:
        values += [product(Interval(0.0, _PI * 2.0 ** -g)) for g in range(1, depth)]
    if wt.exp_pi > -1.0 and dual.exp_pi > -1.0:
        values += [product(Interval(_PI * (1.0 - 2.0 ** -g), _PI)) for g in range(1, depth)]

    rng = SplitMix64(seed)
    for _ in range(n_random):
        a = rng.uniform(1e-4, _PI - 2e-4)
        b = rng.uniform(a + 1e-6, _PI - 1e-4)
        values.append(product(Interval(a, b)))

    diverged = _chain_diverges(chain0) or _chain_diverges(chain_pi)
    return ApEstimate(max(values), diverged, chain0, chain_pi)


@dataclass
class TwoWeightResult:
    """Supremum estimate of the interval test
    w(I)^(1/q) vbar(I)^((p-1)/p) / |I|^(1-sigma) over a family."""

    supremum: float
    dyadic0: list
    dyadic_pi: list

    @property
    def growth0(self) -> float:
        return max(self.dyadic0) / self.dyadic0[0]

    @property
    def growth_pi(self) -> float:
        return max(self.dyadic_pi) / self.dyadic_pi[0]


def two_weight_condition(w: Weight, v: Weight, sigma: float, p: float, q: float,
                         n_random: int = 1000, seed: int = 11,
                         depth: int = 30) -> TwoWeightResult:
    """Estimate the two-weight interval supremum for the fractional
    integral of order sigma from Lp(v) to Lq(w).

    The family mixes endpoint-anchored dyadic intervals (these carry the
    extremal behavior), dyadic shells, and seeded random interior
    intervals.  The anchored chains are returned so callers can read off
    the growth toward an endpoint when the exponent conditions fail.
    """
    if not (p > 1.0 and q >= p):
        raise ValueError("need 1 < p <= q")
    vbar = v.dual(p)

    def test_value(iv: Interval) -> float:
        wi = weight_integral(w, iv)
        vi = weight_integral(vbar, iv)
        return wi ** (1.0 / q) * vi ** ((p - 1.0) / p) / iv.length ** (1.0 - sigma)

    dy0 = [test_value(Interval(0.0, _PI * 2.0 ** -g)) for g in range(1, depth)]
    dypi = [test_value(Interval(_PI * (1.0 - 2.0 ** -g), _PI)) for g in range(1, depth)]
    values = dy0 + dypi
    values += [test_value(Interval(_PI * 2.0 ** -(g + 1), _PI * 2.0 ** -g))
               for g in range(1, depth)]
    values += [test_value(Interval(_PI * (1.0 - 2.0 ** -g), _PI * (1.0 - 2.0 ** -(g + 1))))
               for g in range(1, depth)]
    values.append(test_value(Interval(0.0, _PI)))

    rng = SplitMix64(seed)
    while len(values) < n_random + 4 * (depth - 1) + 1:
        a = rng.uniform(0.0, _PI - 1e-6)
        b = rng.uniform(a + 1e-8, _PI)
        values.append(test_value(Interval(a, b)))

    return TwoWeightResult(max(values), dy0, dypi)


def interval_moment(lam: float, nu: float, iv: Interval, n: int = 24):
    """(integral of t^lam (pi-t)^nu over I, comparability ratio).

    The ratio divides by |I| |I_0|^lam |I_pi|^nu where I_0 and I_pi are
    the least intervals containing I together with 0 and pi.
    """
    if lam <= -1.0 or nu <= -1.0:
        raise ValueError("need lam, nu > -1")
    val = weight_integral(Weight.power(lam, nu), iv, n=n)
    comparator = iv.length * iv.b ** lam * (_PI - iv.a) ** nu
    return val, val / comparator


# ---------------------------------------------------------------------------
# fractional integral on (0, pi) and vector-valued ratios

def i_sigma(g, sigma: float, theta: float, rtol: float = 1e-10) -> float:
    """int_0^pi g(phi) |theta - phi|^(sigma-1) dphi.

    Each side of the singularity is mapped by r = |theta - phi|^sigma,
    which removes the endpoint factor exactly; the smooth remainders go
    through adaptive quadrature.  g must accept ndarray arguments.
    """
    if not (0.0 < sigma < 1.0):
        raise ValueError("sigma must lie in (0, 1)")
    if not (0.0 < theta < _PI):
        raise ValueError("theta must lie in (0, pi)")
    inv = 1.0 / sigma
    total = 0.0
    for side, length in ((-1.0, theta), (1.0, _PI - theta)):
        if length <= 0.0:
            continue
        rmax = length ** sigma

        def integrand(r, side=side):
            return np.asarray(g(theta + side * r ** inv), dtype=float)

        total += adaptive_quad(integrand, 0.0, rmax, rtol=rtol) / sigma
    return total


def _lp_norm_weighted(values: np.ndarray, p: float, wt: Weight,
                      nodes: np.ndarray, base_weights: np.ndarray) -> float:
    return float(np.dot(base_weights, np.abs(values) ** p)) ** (1.0 / p)


def weighted_grid(wt: Weight, n: int = 96):
    """(nodes, weights) integrating f -> int f w dt on (0, pi) with the
    endpoint powers of w folded into a Gauss-Jacobi rule."""
    rule = gauss_jacobi_rule(n, wt.exp_pi, wt.exp0)
    th = 0.5 * _PI * (1.0 + rule.nodes)
    half = 0.5 * _PI
    smooth = wt(th) * th ** -wt.exp0 * (_PI - th) ** -wt.exp_pi
    wts = rule.weights * half ** (wt.exp0 + wt.exp_pi + 1.0) * smooth
    return th, wts


def weighted_lp_lq_ratio(g_list, sigma: float, p: float, q: float,
                         w: Weight, v: Weight, n_grid: int = 64) -> float:
    """Vector-valued operator ratio
    || (sum_j |I_sigma g_j|^2)^(1/2) ||_Lq(w dt) /
    || (sum_j |g_j|^2)^(1/2) ||_Lp(v dt).
    """
    if not g_list:
        raise ValueError("need at least one function")
    thw, ww = weighted_grid(w, n_grid)
    thv, wv = weighted_grid(v, n_grid)
    num_sq = np.zeros_like(thw)
    den_sq = np.zeros_like(thv)
    for g in g_list:
        ivals = np.array([i_sigma(g, sigma, t, rtol=1e-8) for t in thw])
        num_sq += ivals ** 2
        den_sq += np.asarray(g(thv), dtype=float) ** 2
    num = float(np.dot(ww, num_sq ** (q / 2.0))) ** (1.0 / q)
    den = float(np.dot(wv, den_sq ** (p / 2.0))) ** (1.0 / p)
    if den == 0.0:
        raise ZeroDivisionError("zero denominator norm")
    return num / den


# ---------------------------------------------------------------------------
# the two-index inequality for conjugated fractional integrals

@dataclass(frozen=True)
class ExponentBox:
    """Exponents (p, q), order sigma, base parameters, and the
    conjugation exponent steps (a, b) defining u_j."""

    p: float
    q: float
    sigma: float
    pp: ParamPair
    a: float = 0.0
    b: float = 0.0

    @property
    def chu1(self) -> bool:
        al, be = self.pp.alpha, self.pp.beta
        lower = max((2 * al + 2) / (al + 1.5), (2 * be + 2) / (be + 1.5))
        upper = min(
            (2 * al + 2) / (al + 0.5) if al + 0.5 > 0 else math.inf,
            (2 * be + 2) / (be + 0.5) if be + 0.5 > 0 else math.inf,
        )
        return lower < self.p <= self.q < upper

    @property
    def chu2(self) -> bool:
        al, be = self.pp.alpha, self.pp.beta
        gap = min(self.sigma / (2 * al + 2), self.sigma / (2 * be + 2))
        return 1.0 / self.q >= 1.0 / self.p - gap - 1e-15

    @property
    def admissible(self) -> bool:
        return self.chu1 and self.chu2

    def u_j(self, j: int):
        a, b = self.a * j, self.b * j
        return lambda th: np.sin(th / 2.0) ** a * np.cos(th / 2.0) ** b


def theorem14_ratio(f_list, box: ExponentBox, inner_trunc: int = 48,
                    n_grid: int = 160) -> float:
    """Mixed l2-vector ratio for the conjugated fractional integrals.

    f_list holds CoefficientVector entries in the ambient (alpha, beta)
    system; entry j is acted on by u_j J_(alpha+aj, beta+bj)^(-sigma/2)
    u_j^(-1), realized spectrally in the shifted system.  Norms are
    taken against the ambient measure on one master Gauss grid.
    """
    if not box.admissible:
        raise ValueError("exponents violate the admissibility conditions")
    if not f_list:
        raise ValueError("need at least one function")
    pp = box.pp
    master = mu_rule(n_grid, pp.alpha, pp.beta)
    th = master.nodes
    num_sq = np.zeros_like(th)
    den_sq = np.zeros_like(th)
    for j, cv in enumerate(f_list):
        if cv.pp != pp:
            raise ValueError("all inputs must live in the ambient system")
        fj = synthesize(cv, th)
        den_sq += fj ** 2
        aj, bj = box.a * j, box.b * j
        shifted = ParamPair(pp.alpha + aj, pp.beta + bj)
        # inner products <u_j^-1 f_j, P_m> in the shifted system equal
        # integrals of f_j P_m against d mu_(alpha + aj/2, beta + bj/2),
        # which are exact polynomial integrals on that rule.
        mixed = mu_rule(max(n_grid, inner_trunc + cv.truncation + 2),
                        pp.alpha + aj / 2.0, pp.beta + bj / 2.0)
        fmix = synthesize(cv, mixed.nodes)
        basis_mix = trig_jacobi_all(inner_trunc, shifted, mixed.nodes)
        coeffs = basis_mix @ (mixed.weights * fmix)
        shift = shifted.first_eigenvalue_shift
        mult = (np.arange(inner_trunc + 1) + shift) ** (-box.sigma)
        basis_master = trig_jacobi_all(inner_trunc, shifted, th)
        hj = box.u_j(j)(th) * ((mult * coeffs) @ basis_master)
        num_sq += hj ** 2
    num = float(np.dot(master.weights, num_sq ** (box.q / 2.0))) ** (1.0 / box.q)
    den = float(np.dot(master.weights, den_sq ** (box.p / 2.0))) ** (1.0 / box.p)
    if den == 0.0:
        raise ZeroDivisionError("zero denominator norm")
    return num / den
