"""Foundational special functions and quadrature.

Log-gamma, Jacobi and Gegenbauer polynomial evaluation by three-term
recurrence, and Gauss-Jacobi rules built with a Golub-Welsch
eigendecomposition plus Newton refinement of the nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal


class QuadratureError(RuntimeError):
    """Raised when a quadrature routine cannot reach its tolerance."""


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0.

    Relative accuracy is ~1 ulp over the supported range; backed by the
    platform lgamma, which is more than enough for every Gamma ratio in
    this package.
    """
    if not x > 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def jacobi_poly(n: int, alpha: float, beta: float, x):
    """Jacobi polynomial P_n^(alpha,beta)(x) by three-term recurrence.

    Stable and O(n) on [-1, 1]; requires alpha, beta > -1.  Accepts a
    scalar or ndarray argument.
    """
    return jacobi_poly_all(n, alpha, beta, x)[-1]


def jacobi_poly_all(n: int, alpha: float, beta: float, x):
    """Values of P_k^(alpha,beta)(x) for all k = 0..n, stacked on axis 0.

    One recurrence pass, vectorized over x.  This is what series
    evaluations (Poisson kernel, spectral sums) use.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if alpha <= -1.0 or beta <= -1.0:
        raise ValueError(f"Jacobi parameters must exceed -1, got ({alpha}, {beta})")
    x = np.asarray(x, dtype=float)
    out = np.empty((n + 1,) + x.shape, dtype=float)
    out[0] = 1.0
    if n == 0:
        return out
    ab = alpha + beta
    out[1] = 0.5 * ((ab + 2.0) * x + (alpha - beta))
    for k in range(2, n + 1):
        # Szego (4.5.1); the leading coefficient never vanishes for
        # alpha, beta > -1 once k >= 2.
        c0 = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0)
        c1 = (2.0 * k + ab - 1.0) * (2.0 * k + ab) * (2.0 * k + ab - 2.0)
        c2 = (2.0 * k + ab - 1.0) * (alpha * alpha - beta * beta)
        c3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + ab)
        out[k] = ((c1 * x + c2) * out[k - 1] - c3 * out[k - 2]) / c0
    return out


def jacobi_poly_deriv(n: int, alpha: float, beta: float, x):
    """First derivative of P_n^(alpha,beta), used by the Newton polish."""
    if n == 0:
        return np.zeros_like(np.asarray(x, dtype=float))
    return 0.5 * (n + alpha + beta + 1.0) * jacobi_poly(n - 1, alpha + 1.0, beta + 1.0, x)


def _rising_log(a: float, k: int) -> tuple[float, float]:
    """(log|.|, sign) of the rising factorial a(a+1)...(a+k-1)."""
    logabs = 0.0
    sign = 1.0
    for i in range(k):
        t = a + i
        if t == 0.0:
            return -math.inf, 0.0
        if t < 0.0:
            sign = -sign
        logabs += math.log(abs(t))
    return logabs, sign


def gegenbauer(k: int, lam: float, x):
    """Gegenbauer polynomial C_k^lam(x).

    Realized through the Jacobi polynomial with parameters
    (lam - 1/2, lam - 1/2) times the connecting Gamma ratio, which is
    evaluated in log space.  Requires lam > -1/2 and lam != 0 (the
    normalization degenerates at lam = 0).
    """
    if lam <= -0.5:
        raise ValueError(f"gegenbauer requires lam > -1/2, got {lam}")
    if lam == 0.0:
        raise ValueError("gegenbauer parameter lam = 0 is degenerate")
    if k < 0:
        raise ValueError("degree must be nonnegative")
    # Gamma(k+2*lam)/Gamma(2*lam) as a rising factorial keeps the sign
    # right when 2*lam is in (-1, 0).
    logrise, sign = _rising_log(2.0 * lam, k)
    logratio = log_gamma(lam + 0.5) - log_gamma(k + lam + 0.5) + logrise
    return sign * math.exp(logratio) * jacobi_poly(k, lam - 0.5, lam - 0.5, x)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights for a weighted integral on an interval.

    ``exactness`` is the largest polynomial degree integrated exactly;
    ``descriptor`` records the weight function the rule targets.
    """

    nodes: np.ndarray
    weights: np.ndarray
    exactness: int
    descriptor: str = ""

    def __post_init__(self):
        object.__setattr__(self, "nodes", np.asarray(self.nodes, dtype=float))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))

    def integrate(self, f) -> float:
        return float(np.dot(self.weights, f(self.nodes)))

    def integrate_values(self, values) -> float:
        return float(np.dot(self.weights, values))


def _jacobi_recurrence_ab(n: int, alpha: float, beta: float):
    """Monic-recurrence coefficients a_i (diag) and b_i (squared off-diag)."""
    ab = alpha + beta
    i = np.arange(n, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        denom = (2.0 * i + ab) * (2.0 * i + ab + 2.0)
        a = np.where(denom == 0.0, 0.0, (beta * beta - alpha * alpha) / denom)
    if n > 0 and ab + 2.0 != 0.0:
        a[0] = (beta - alpha) / (ab + 2.0)
    b = np.zeros(n)
    if n > 1:
        # i = 1 in cancelled form: safe when ab = -1 (Chebyshev case).
        b[1] = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) ** 2 * (ab + 3.0))
        ii = np.arange(2, n, dtype=float)
        s = 2.0 * ii + ab
        b[2:] = (4.0 * ii * (ii + alpha) * (ii + beta) * (ii + ab)
                 / (s * s * (s + 1.0) * (s - 1.0)))
    return a, b


def gauss_jacobi_rule(n: int, alpha: float, beta: float) -> QuadratureRule:
    """n-point Gauss rule for the weight (1-x)^alpha (1+x)^beta on [-1, 1].

    Golub-Welsch on the symmetric tridiagonal recurrence matrix gives
    nodes and weights; every node is then polished with Newton steps on
    P_n^(alpha,beta) and the weights are recomputed from the Christoffel
    sums so the rule stays consistent after polishing.  Exact for
    polynomials of degree <= 2n-1.
    """
    if n < 1:
        raise ValueError("need at least one node")
    if alpha <= -1.0 or beta <= -1.0:
        raise ValueError(f"Jacobi exponents must exceed -1, got ({alpha}, {beta})")
    log_mu0 = ((alpha + beta + 1.0) * math.log(2.0)
               + log_gamma(alpha + 1.0) + log_gamma(beta + 1.0)
               - log_gamma(alpha + beta + 2.0))
    mu0 = math.exp(log_mu0)
    if n == 1:
        a, _ = _jacobi_recurrence_ab(1, alpha, beta)
        nodes = np.array([a[0]])
        weights = np.array([mu0])
        return QuadratureRule(nodes, weights, 1, f"jacobi({alpha},{beta})")

    a, b = _jacobi_recurrence_ab(n, alpha, beta)
    nodes, _ = eigh_tridiagonal(a, np.sqrt(b[1:]))

    # Newton polish; residual tolerance 1e-14 on the scaled polynomial.
    for _ in range(3):
        p = jacobi_poly(n, alpha, beta, nodes)
        dp = jacobi_poly_deriv(n, alpha, beta, nodes)
        step = p / dp
        nodes = nodes - step
        if np.max(np.abs(step)) < 1e-15:
            break
    nodes = np.clip(nodes, -1.0, 1.0)
    nodes.sort()

    # Christoffel weights from the orthonormal recurrence: w_i = mu0 /
    # sum_k ptilde_k(x_i)^2 with ptilde the mu0-normalized orthonormal
    # family (ptilde_0 = 1).
    ptm1 = np.ones_like(nodes)
    pt = (nodes - a[0]) / math.sqrt(b[1])
    total = ptm1 * ptm1 + pt * pt
    for k in range(1, n - 1):
        ptp1 = ((nodes - a[k]) * pt - math.sqrt(b[k]) * ptm1) / math.sqrt(b[k + 1])
        ptm1, pt = pt, ptp1
        total += ptp1 * ptp1
    weights = mu0 / total
    return QuadratureRule(nodes, weights, 2 * n - 1, f"jacobi({alpha},{beta})")


def mu_rule(n: int, alpha: float, beta: float) -> QuadratureRule:
    """Gauss rule on (0, pi) for the measure
    (sin t/2)^(2a+1) (cos t/2)^(2b+1) dt, obtained from the [-1, 1]
    Jacobi rule through x = cos(theta).

    ``integrate`` applied to f(theta) returns int f dmu_{alpha,beta};
    exact whenever f is a polynomial of degree <= 2n-1 in cos(theta).
    """
    base = gauss_jacobi_rule(n, alpha, beta)
    theta = np.arccos(base.nodes)[::-1]
    w = base.weights[::-1] / 2.0 ** (alpha + beta + 1.0)
    return QuadratureRule(theta, w, base.exactness, f"mu({alpha},{beta})")


# 15-point Kronrod extension of 7-point Gauss, on [-1, 1].
_KRONROD_X = np.array([
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
])
_KRONROD_W = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
])
_GAUSS7_W = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
])


def adaptive_quad(f, a: float, b: float, rtol: float = 1e-10,
                  atol: float = 0.0, max_depth: int = 48) -> float:
    """Adaptive Gauss-Kronrod (G7, K15) quadrature of a vectorized f.

    ``f`` must accept an ndarray of abscissae.  Bisects the worst
    interval until the summed error estimate meets rtol/atol; raises
    QuadratureError if the depth budget is exhausted first.
    """
    def gk(lo, hi):
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        y = f(mid + half * _KRONROD_X)
        k = half * float(np.dot(_KRONROD_W, y))
        g = half * float(np.dot(_GAUSS7_W, y[1::2]))
        return k, abs(k - g)

    val, err = gk(a, b)
    segments = [(err, a, b, val, 0)]
    total = val
    for _ in range(1 << 14):
        total_err = sum(s[0] for s in segments)
        if total_err <= max(atol, rtol * abs(total)):
            return total
        segments.sort(key=lambda s: s[0])
        _, lo, hi, v, depth = segments.pop()
        if depth >= max_depth:
            raise QuadratureError("adaptive quadrature depth budget exhausted")
        mid = 0.5 * (lo + hi)
        v1, e1 = gk(lo, mid)
        v2, e2 = gk(mid, hi)
        total += v1 + v2 - v
        segments.append((e1, lo, mid, v1, depth + 1))
        segments.append((e2, mid, hi, v2, depth + 1))
    raise QuadratureError("adaptive quadrature failed to converge")
