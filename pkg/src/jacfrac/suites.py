"""Verification suites behind the command-line front end.

Each suite walks a (seeded, deterministic) grid, producing rows of
(params, measured, reference, ratio, pass).  Ratios are normalized so a
row passes iff ratio <= 1; for detection-style rows the ratio is
inverted accordingly.  Row order is grid-lexicographic and independent
of any internal evaluation order.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .expansion import (CoefficientVector, ParamPair, eigenvalue, expand,
                        synthesize, trig_jacobi, trig_jacobi_all,
                        apply_operator_stencil)
from .fractional import (FracParams, KernelProfile, frac_integral_spectral,
                         frac_kernel, kernel_apply_weights,
                         lemma_estimate_check, sharp_bound_rhs,
                         verify_sharp_bound)
from .poisson import (gegenbauer_generating_check, poisson_closed_form,
                      poisson_series, poisson_series_profile,
                      product_formula_check)
from .rng import SplitMix64
from .spaces import (BallFunction, MixedNormParams, SphereFunction,
                     ball_mixed_norm, harmonic_count, lambda_operator_check,
                     mixed_norm, psi_ball_all, psi_radial, radial_rule,
                     ball_rule, theorem1_ratio, theorem2_ratio)
from .special import mu_rule
from .weights import ExponentBox, peso_v, peso_w, theorem14_ratio, two_weight_condition


class ConfigError(ValueError):
    """Invalid suite configuration (unknown suite, bad parameter)."""


@dataclass
class Row:
    suite: str
    params: dict
    measured: float
    reference: float
    ratio: float
    passed: bool


@dataclass
class SweepReport:
    suite: str
    rows: list = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, params: dict, measured: float, reference: float,
            invert: bool = False):
        """Append a row; pass iff measured <= reference, or, with
        invert=True (detection rows), iff measured >= reference."""
        if invert:
            ratio = reference / measured if measured != 0 else math.inf
        else:
            ratio = measured / reference if reference != 0 else math.inf
        ok = bool(np.isfinite(measured)) and ratio <= 1.0
        self.rows.append(Row(self.suite, params, measured, reference, ratio, ok))

    @property
    def failures(self) -> int:
        return sum(1 for r in self.rows if not r.passed)

    @property
    def max_ratio(self) -> float:
        return max((r.ratio for r in self.rows), default=0.0)


def _as_list(value):
    return list(value) if isinstance(value, (list, tuple)) else [value]


# ---------------------------------------------------------------------------
# suite bodies

def _suite_identities(cfg, rep: SweepReport):
    alphas = _as_list(cfg["alpha"])
    betas = _as_list(cfg["beta"])
    nmax = int(cfg["trunc"])
    for a in alphas:
        for b in betas:
            pp = ParamPair(a, b)
            rule = mu_rule(max(64, 2 * nmax + 8), a, b)
            basis = trig_jacobi_all(nmax, pp, rule.nodes)
            gram = (basis * rule.weights) @ basis.T
            resid = float(np.max(np.abs(gram - np.eye(nmax + 1))))
            rep.add({"check": "orthonormality", "alpha": a, "beta": b},
                    resid, float(cfg["tol_orth"]))
            n = 3
            f = lambda th, n=n, pp=pp: trig_jacobi(n, pp, th)
            lam = eigenvalue(n, pp)
            th0 = 1.3
            e1 = abs(apply_operator_stencil(f, pp, th0, 1e-3) - lam * f(th0))
            e2 = abs(apply_operator_stencil(f, pp, th0, 5e-4) - lam * f(th0))
            order = e1 / e2 if e2 > 0 else 4.0
            rep.add({"check": "stencil-order", "alpha": a, "beta": b},
                    abs(order - 4.0), 0.8)
    for lam in (0.75, 1.5, 3.0):
        for r in (0.3, 0.6, 0.9):
            resid = gegenbauer_generating_check(lam, r, 0.3, 160 if r < 0.7 else 800)
            rep.add({"check": "generating", "lam": lam, "r": r},
                    resid, float(cfg["tol_gen"]))
    for a, b in ((0.5, 1.5), (0.0, 3.0), (2.0, 0.25)):
        pp = ParamPair(a, b)
        for n in (0, 2, 5):
            resid = product_formula_check(n, pp, 1.2, 0.4)
            rep.add({"check": "product-formula", "alpha": a, "beta": b, "n": n},
                    resid, float(cfg["tol_prod"]))


def _suite_poisson_agree(cfg, rep: SweepReport):
    alphas = _as_list(cfg["alpha"])
    betas = _as_list(cfg["beta"])
    ts = _as_list(cfg["t"])
    thetas = _as_list(cfg["theta"])
    phis = _as_list(cfg["phi"])
    tol = float(cfg["tol"])
    for a in alphas:
        for b in betas:
            pp = ParamPair(a, b)
            rule = mu_rule(400, a, b)
            for t in ts:
                for th in thetas:
                    for ph in phis:
                        s = poisson_series(t, th, ph, pp)
                        c = poisson_closed_form(t, th, ph, pp)
                        rep.add({"check": "agree", "alpha": a, "beta": b,
                                 "t": t, "theta": th, "phi": ph},
                                abs(s - c) / abs(c), tol)
                        if c <= 0.0 or s <= 0.0:
                            rep.add({"check": "positivity", "alpha": a, "beta": b,
                                     "t": t, "theta": th, "phi": ph}, 1.0, 0.5)
                    mass = rule.integrate_values(
                        poisson_series_profile(t, th, pp, rule.nodes))
                    ref = math.exp(-t * pp.first_eigenvalue_shift)
                    rep.add({"check": "mass", "alpha": a, "beta": b,
                             "t": t, "theta": th}, abs(mass - ref) / ref, tol)


def _sharp_bound_pairs(cfg):
    bases = _as_list(cfg["theta"])
    seps = _as_list(cfg["sep"])
    return [(b, b + s) for b in bases for s in seps if b + s < math.pi - 0.05]


def _suite_sharp_bound(cfg, rep: SweepReport):
    pairs = _sharp_bound_pairs(cfg)
    for sigma in _as_list(cfg["sigma"]):
        report = verify_sharp_bound(sigma, _as_list(cfg["alpha"]),
                                    _as_list(cfg["beta"]), pairs)
        for (a, b), sup in sorted(report.supremum.items()):
            rep.add({"check": "ratio-sup", "sigma": sigma, "alpha": a, "beta": b},
                    sup, float(cfg["sup_cap"]))
        rep.add({"check": "spread", "sigma": sigma}, report.spread,
                float(cfg["spread_cap"]))
        rep.add({"check": "kernel-positivity", "sigma": sigma},
                0.0 if report.kernel_min >= 0.0 else 1.0, 0.5)


def _suite_lemma22(cfg, rep: SweepReport):
    rng = SplitMix64(int(cfg["seed"]))
    n = int(cfg["n_samples"])
    block = 500
    worst = 0.0
    checked = 0
    for i in range(n):
        g = rng.uniform(-0.5, 20.0)
        lam = -0.5 if rng.random() < 0.1 else rng.uniform(-0.499, 20.0)
        b_ = rng.uniform(1e-6, 10.0)
        a_ = b_ + rng.uniform(1e-9, 10.0)
        lhs, rhs = lemma_estimate_check(g, lam, a_, b_)
        worst = max(worst, lhs / rhs)
        checked += 1
        if checked == block or i == n - 1:
            rep.add({"check": "bound-holds", "block": i // block},
                    worst, 1.0 + 1e-9)
            worst, checked = 0.0, 0
    lhs, rhs = lemma_estimate_check(-0.5, -0.5, 2.0, 1.0)
    rep.add({"check": "degenerate"}, abs(lhs - 1.0), 1e-15)


def _admissible_tuples():
    # (alpha, beta, sigma, p, q) satisfying both exponent conditions
    out = []
    for (a, b, s, p) in [(0.5, 0.5, 0.5, 2.0), (0.0, 0.0, 0.5, 2.0),
                         (0.0, 1.0, 0.25, 2.0), (1.0, 1.0, 0.75, 2.2),
                         (-0.4, 0.5, 0.5, 1.7), (0.5, 2.0, 0.5, 2.0),
                         (2.0, 0.0, 0.3, 2.5), (0.0, 0.0, 0.75, 1.8),
                         (1.5, 1.5, 0.5, 2.0), (0.5, 0.5, 0.25, 2.4)]:
        box = ExponentBox(p, p, s, ParamPair(a, b))
        assert box.admissible
        out.append((a, b, s, p, p))
    return out


def _violating_tuples():
    # (chu 2) broken by exactly 0.1 in 1/q while (chu 1) still holds
    out = []
    for (a, b, s, p) in [(0.5, 0.5, 0.5, 1.6), (0.0, 0.0, 0.5, 1.45),
                         (0.0, 0.5, 0.4, 1.5), (1.0, 1.0, 0.6, 1.65),
                         (0.25, 0.25, 0.5, 1.55)]:
        gap = min(s / (2 * a + 2), s / (2 * b + 2))
        q = 1.0 / (1.0 / p - gap - 0.1)
        box = ExponentBox(p, q, s, ParamPair(a, b))
        assert box.chu1 and not box.chu2
        out.append((a, b, s, p, q))
    return out


def _suite_two_weight(cfg, rep: SweepReport):
    n_random = int(cfg["n_intervals"])
    seed = int(cfg["seed"])
    for a, b, s, p, q in _admissible_tuples():
        pp = ParamPair(a, b)
        res = two_weight_condition(peso_w(pp, q), peso_v(pp, p), s, p, q,
                                   n_random=n_random, seed=seed)
        rep.add({"check": "bounded", "alpha": a, "beta": b, "sigma": s,
                 "p": p, "q": q}, res.supremum, float(cfg["sup_cap"]))
        rep.add({"check": "no-growth", "alpha": a, "beta": b, "sigma": s,
                 "p": p, "q": q}, max(res.growth0, res.growth_pi), 10.0)
    for a, b, s, p, q in _violating_tuples():
        pp = ParamPair(a, b)
        res = two_weight_condition(peso_w(pp, q), peso_v(pp, p), s, p, q,
                                   n_random=n_random, seed=seed)
        rep.add({"check": "growth-detected", "alpha": a, "beta": b, "sigma": s,
                 "p": p, "q": q}, max(res.growth0, res.growth_pi), 10.0,
                invert=True)


def _random_coeff_vector(rng: SplitMix64, pp: ParamPair, n: int) -> CoefficientVector:
    return CoefficientVector(pp, np.array([rng.normal() for _ in range(n)]))


def _suite_theorem14(cfg, rep: SweepReport):
    rng = SplitMix64(int(cfg["seed"]))
    pp = ParamPair(float(cfg["alpha"]), float(cfg["beta"]))
    box = ExponentBox(float(cfg["p"]), float(cfg["q"]), float(cfg["sigma"]),
                      pp, a=float(cfg["a"]), b=float(cfg["b"]))
    if not box.admissible:
        raise ConfigError("theorem14 exponents violate the admissibility conditions")
    n_lists = int(cfg["n_lists"])
    trunc = int(cfg["trunc"])
    ratios = []
    for i in range(n_lists):
        f_list = [_random_coeff_vector(rng, pp, trunc + 1) for _ in range(3)]
        ratios.append(theorem14_ratio(f_list, box))
    cap = 3.0 * max(ratios[:max(1, min(20, len(ratios)))])
    for i, r in enumerate(ratios):
        rep.add({"check": "ratio", "list": i}, r, cap)
    # Marcinkiewicz-Zygmund duplicate consistency: with zero conjugation
    # steps every entry sees the same operator and the l2 sums scale.
    box0 = ExponentBox(box.p, box.q, box.sigma, pp, a=0.0, b=0.0)
    f = _random_coeff_vector(rng, pp, trunc + 1)
    r1 = theorem14_ratio([f], box0)
    r2 = theorem14_ratio([f, f], box0)
    rep.add({"check": "mz-duplicate"}, abs(r1 - r2), float(cfg["tol_mz"]))


def _random_sphere_function(rng: SplitMix64, d: int, jmax: int, nrad: int,
                            nmax: int) -> SphereFunction:
    coeffs = {}
    for j in range(jmax + 1):
        for k in range(1, harmonic_count(d, j) + 1):
            coeffs[(j, k)] = [rng.normal() for _ in range(nrad)]
    return SphereFunction.from_radial_coeffs(d, coeffs, nmax=nmax)


def _suite_sphere_thm1(cfg, rep: SweepReport):
    d = int(cfg["d"])
    sigma = float(cfg["sigma"])
    rng = SplitMix64(int(cfg["seed"]))
    rule = radial_rule(d, 64)
    for j in range(int(cfg["jmax"]) + 1):
        pp = ParamPair((d - 2) / 2.0 + j, (d - 2) / 2.0 + j)
        worst = 0.0
        scale = 2.0 ** (j + (d - 1) / 2.0)
        for n in range(int(cfg["nmax_identity"]) + 1):
            lhs = psi_radial(n + j, j, rule.nodes, d) * scale
            rhs = np.sin(rule.nodes) ** j * trig_jacobi_all(n, pp, rule.nodes)[n]
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        rep.add({"check": "basis-identity", "j": j}, worst, float(cfg["tol_basis"]))
    sf = _random_sphere_function(rng, d, 4, 6, 12)
    l2 = math.sqrt(sum(float(np.sum(sf.radial_coeffs(j, k) ** 2))
                       for (j, k) in sf.profiles))
    rep.add({"check": "parseval"}, abs(mixed_norm(sf, 2.0) - l2),
            float(cfg["tol_parseval"]))
    mnp = MixedNormParams(2.0, 2.0, sigma, "sphere", d)
    cap = ((d - 1) / 2.0) ** -sigma + 1e-9
    for i in range(int(cfg["n_funcs"])):
        sf = _random_sphere_function(rng, d, int(cfg["jmax"]), 8, 16)
        rep.add({"check": "l2-ratio", "func": i}, theorem1_ratio(sf, mnp), cap)


def _suite_ball_thm2(cfg, rep: SweepReport):
    d, m = int(cfg["d"]), int(cfg["m"])
    sigma = float(cfg["sigma"])
    rng = SplitMix64(int(cfg["seed"]))
    rule = ball_rule(d, m, 96)
    worst = 0.0
    for j in range(4):
        basis = psi_ball_all(8, j, rule.nodes, d, m)
        gram = (basis * rule.weights) @ basis.T
        worst = max(worst, float(np.max(np.abs(gram - np.eye(basis.shape[0])))))
    rep.add({"check": "orthonormality"}, worst, float(cfg["tol_orth"]))
    e1 = lambda_operator_check(3, 1, d, m, h=1e-3)
    e2 = lambda_operator_check(3, 1, d, m, h=5e-4)
    rep.add({"check": "eigen-order"}, abs(e1 / e2 - 4.0), 0.4)
    mnp = MixedNormParams(2.0, 2.0, sigma, "ball", d, m)
    cap = ((m + d) / 2.0) ** -sigma + 1e-9
    for i in range(int(cfg["n_funcs"])):
        coeffs = {}
        for j in range(3):
            for k in range(1, min(3, harmonic_count(d + 1, j)) + 1):
                coeffs[(j, k)] = [rng.normal() for _ in range(6)]
        bf = BallFunction.from_radial_coeffs(d, m, coeffs, nmax=10)
        rep.add({"check": "l2-ratio", "func": i}, theorem2_ratio(bf, mnp), cap)


SUITE_DEFAULTS = {
    "identities": {
        "alpha": [-0.5, 0.0, 1.5, 5.0], "beta": [-0.5, 0.0, 1.5, 5.0],
        "trunc": 12, "tol_orth": 1e-8, "tol_gen": 1e-10, "tol_prod": 1e-8,
    },
    "poisson-agree": {
        "alpha": [-0.5, 0.0, 0.5, 1.5, 3.0], "beta": [-0.5, 0.0, 0.5, 1.5, 3.0],
        "t": [0.1, 0.5, 1.0, 2.0], "theta": [0.3, 1.0, 1.8, 2.8],
        "phi": [0.3, 1.0, 1.8, 2.8], "tol": 1e-8,
    },
    "sharp-bound": {
        "sigma": [0.25, 0.5, 0.75], "alpha": [-0.5, 0.0, 2.0],
        "beta": [0.0, 1.0, 5.0, 10.0, 20.0],
        "theta": [0.4, 1.0, 1.6, 2.3, 2.9], "sep": [0.01, 0.05, 0.2, 0.8],
        "sup_cap": 100.0, "spread_cap": 4.0,
    },
    "lemma22": {"n_samples": 10000},
    "two-weight": {"n_intervals": 1000, "sup_cap": 1e6},
    "theorem14": {
        "alpha": 0.0, "beta": 0.0, "sigma": 0.5, "p": 2.0, "q": 2.0,
        "a": 1.0, "b": 1.0, "n_lists": 100, "trunc": 12, "tol_mz": 1e-12,
    },
    "sphere-thm1": {
        "d": 2, "sigma": 0.5, "jmax": 6, "nmax_identity": 10,
        "n_funcs": 100, "tol_basis": 1e-9, "tol_parseval": 1e-8,
    },
    "ball-thm2": {
        "d": 2, "m": 0, "sigma": 0.5, "n_funcs": 100, "tol_orth": 1e-8,
    },
}

_SUITE_BODIES = {
    "identities": _suite_identities,
    "poisson-agree": _suite_poisson_agree,
    "sharp-bound": _suite_sharp_bound,
    "lemma22": _suite_lemma22,
    "two-weight": _suite_two_weight,
    "theorem14": _suite_theorem14,
    "sphere-thm1": _suite_sphere_thm1,
    "ball-thm2": _suite_ball_thm2,
}


def list_suites():
    return sorted(_SUITE_BODIES)


def _validate(suite: str, cfg: dict):
    if suite in ("poisson-agree",):
        for key, lo in (("alpha", -0.5), ("beta", -0.5)):
            for v in _as_list(cfg[key]):
                if v < lo:
                    raise ConfigError(f"{key}={v} outside the closed-form regime (>= {lo})")
        for v in _as_list(cfg["t"]):
            if v < 0.05:
                raise ConfigError(f"t={v} below the series floor 0.05")
        for key in ("theta", "phi"):
            for v in _as_list(cfg[key]):
                if not (0.0 < v < math.pi):
                    raise ConfigError(f"{key}={v} outside (0, pi)")
    if suite == "sharp-bound":
        for v in _as_list(cfg["sigma"]):
            if not (0.0 < v < 1.0):
                raise ConfigError(f"sigma={v} outside (0, 1)")
        for v in _as_list(cfg["alpha"]):
            if v < -0.5:
                raise ConfigError(f"alpha={v} below -1/2")
        for v in _as_list(cfg["beta"]):
            if v <= -0.5:
                raise ConfigError(f"beta={v} not above -1/2")
    if suite == "identities":
        for key in ("alpha", "beta"):
            for v in _as_list(cfg[key]):
                if v <= -1.0:
                    raise ConfigError(f"{key}={v} must exceed -1")


def run_suite(suite: str, overrides: dict | None = None, seed: int = 20240801) -> SweepReport:
    """Execute a named suite with defaults merged against overrides."""
    if suite not in _SUITE_BODIES:
        raise ConfigError(f"unknown suite '{suite}'; known: {', '.join(list_suites())}")
    cfg = dict(SUITE_DEFAULTS[suite])
    cfg["seed"] = seed
    for key, value in (overrides or {}).items():
        if key not in cfg and key != "seed":
            raise ConfigError(f"unknown key '{key}' for suite '{suite}'")
        cfg[key] = value
    _validate(suite, cfg)
    rep = SweepReport(suite)
    start = time.perf_counter()
    _SUITE_BODIES[suite](cfg, rep)
    rep.wall_time = time.perf_counter() - start
    return rep
