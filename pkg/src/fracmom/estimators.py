"""Location estimators built on the signed-power basis.

Three routes with a fixed fallback order: the full two-weight solver (a
one-step linearization that re-solves the weight system at each updated
center), the scalar signed-power root as proxy whenever that system is
unusable, and the sample mean inside the protected band around alpha = 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .basis import ESTIMATOR_BAND, SmoothingConfig, alpha_value, basis_value, \
    second_exponent
from .efficiency import COND_CAP, DET_THRESHOLD, build_correlant_system
from .errors import BracketFailure, NonConvergence, NonFiniteInput, \
    SingularSystem
from .moments import MomentEstimatorConfig, empirical_moments

METHOD_FULL = "full"
METHOD_PROXY = "proxy"
METHOD_OLS = "ols_fallback"


@dataclass(frozen=True)
class SolverConfig:
    """Safeguards for the estimator stack."""

    max_outer_iters: int = 3
    tol: float = 1e-8
    cond_cap: float = COND_CAP
    det_threshold: float = DET_THRESHOLD
    step_clip_sd: float = 3.0
    damping: float = 0.5
    degeneracy_band: float = ESTIMATOR_BAND
    bracket_expansion: float = 10.0
    max_bracket_doublings: int = 60
    newton_max_iters: int = 100

    def __post_init__(self):
        if self.max_outer_iters < 1:
            raise ValueError("max_outer_iters must be >= 1")
        if not self.tol > 0.0:
            raise ValueError("tol must be > 0")
        if not 0.0 < self.damping <= 1.0:
            raise ValueError("damping must lie in (0, 1]")
        if not self.bracket_expansion > 1.0:
            raise ValueError("bracket_expansion must be > 1")


DEFAULT_SOLVER = SolverConfig()


@dataclass(frozen=True)
class EstimateResult:
    """Location estimate plus the solver path that produced it."""

    theta_hat: float
    method: str
    outer_iters: int
    final_step: float
    cond_last: float
    det_last: float
    converged: bool


def _as_clean_array(sample) -> np.ndarray:
    x = np.asarray(sample, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("empty sample")
    if not np.all(np.isfinite(x)):
        raise NonFiniteInput("sample contains NaN or infinite values")
    return x


def _robust_scale(x: np.ndarray) -> float:
    mad = float(np.median(np.abs(x - np.median(x))))
    return mad if mad > 0.0 else 1.0


def _tie_smoothing(x: np.ndarray, center: float, scale: float) -> float:
    # two or more residuals exactly at zero trigger the smoothing scale
    return 1e-6 * scale if int(np.sum(x == center)) >= 2 else 0.0


def estimate_ols(sample) -> EstimateResult:
    """Sample mean, tagged as the baseline/fallback method."""
    x = _as_clean_array(sample)
    return EstimateResult(float(np.mean(x)), METHOD_OLS, 0, 0.0,
                          math.nan, math.nan, True)


def estimate_full(sample, alpha, cfg: SolverConfig = DEFAULT_SOLVER,
                  ) -> EstimateResult:
    """Full two-weight estimator with the safeguarded solver stack.

    Starts at the sample mean; each outer pass re-estimates the moment set at
    the current center, solves for the weights, and takes one clipped Newton
    step on the weighted score.  Falls back to the scalar proxy when the
    weight system is singular/ill-conditioned and to the mean inside the
    protected alpha band.
    """
    x = _as_clean_array(sample)
    a = alpha_value(alpha)
    if abs(a - 0.5) < cfg.degeneracy_band:
        return EstimateResult(float(np.mean(x)), METHOD_OLS, 0, 0.0,
                              math.nan, math.nan, True)
    p = second_exponent(a)
    scale = _robust_scale(x)
    mu = float(np.mean(x))
    floor = max(1e-12 * scale, _tie_smoothing(x, mu, scale))
    mcfg = MomentEstimatorConfig(winsor_fraction=0.0, zero_floor=floor)
    sd = float(np.std(x, ddof=1)) if x.size > 1 else 0.0
    if not np.isfinite(sd):
        q75, q25 = np.percentile(x, [75.0, 25.0])
        sd = (q75 - q25) / 1.349
    clip = cfg.step_clip_sd * sd

    step = 0.0
    converged = False
    sys = None
    iters = 0
    for iters in range(1, cfg.max_outer_iters + 1):
        m = empirical_moments(x, mu, p, mcfg)
        try:
            sys = build_correlant_system(m, cfg.det_threshold, cfg.cond_cap)
        except SingularSystem:
            return _proxy_result(x, a, cfg)
        xi_bar = float(np.mean(x)) - mu
        z = sys.h1 * xi_bar + sys.h2 * m.sigma_p
        z_slope = -sys.h1 - p * sys.h2 * m.nu_pm1
        if z_slope == 0.0 or not np.isfinite(z_slope):
            return _proxy_result(x, a, cfg)
        step = float(np.clip(-z / z_slope, -clip, clip))
        mu += step
        if abs(step) < cfg.tol * max(1.0, abs(mu)):
            converged = True
            break
    return EstimateResult(mu, METHOD_FULL, iters, step,
                          sys.cond, sys.det, converged)


def _proxy_result(x: np.ndarray, a: float, cfg: SolverConfig) -> EstimateResult:
    p = second_exponent(a)
    med = float(np.median(x))
    if np.max(x) == np.min(x):
        return EstimateResult(med, METHOD_PROXY, 0, 0.0, math.nan, math.nan, True)
    scale = _robust_scale(x)
    smooth = SmoothingConfig(epsilon=_tie_smoothing(x, med, scale),
                             zero_floor=max(1e-12 * scale, 1e-300))

    def score(mu: float) -> float:
        return float(np.sum(basis_value(2, a, x - mu, smooth)))

    # score is strictly decreasing in mu, so a sign change must appear once
    # the interval is wide enough
    half = cfg.bracket_expansion * max(scale, 1e-8 * (1.0 + abs(med)))
    lo, hi = med - half, med + half
    s_lo, s_hi = score(lo), score(hi)
    for _ in range(cfg.max_bracket_doublings):
        if s_lo >= 0.0 >= s_hi:
            break
        half *= 2.0
        lo, hi = med - half, med + half
        s_lo, s_hi = score(lo), score(hi)
    else:
        raise BracketFailure(f"no sign change in [{lo}, {hi}] for p={p}")
    root, info = optimize.brentq(score, lo, hi, xtol=1e-12, full_output=True)
    return EstimateResult(float(root), METHOD_PROXY, info.iterations, 0.0,
                          math.nan, math.nan, bool(info.converged))


def estimate_proxy(sample, alpha, cfg: SolverConfig = DEFAULT_SOLVER,
                   ) -> EstimateResult:
    """Scalar signed-power root: solve sum sign(x-mu)|x-mu|^p = 0 by
    bracketing.  Valid for any finite sample, including infinite-variance
    noise, since it needs no moment matrix."""
    x = _as_clean_array(sample)
    return _proxy_result(x, alpha_value(alpha), cfg)


def damped_newton_scalar(score, slope, start: float,
                         cfg: SolverConfig = DEFAULT_SOLVER) -> float:
    """Safeguarded scalar Newton: damped steps first, each step accepted only
    if it shrinks |score|, halving the damping otherwise."""
    theta = float(start)
    z = score(theta)
    if not np.isfinite(z):
        raise NonConvergence("score not finite at start")
    for it in range(1, cfg.newton_max_iters + 1):
        if z == 0.0:
            return theta
        zp = slope(theta)
        if zp == 0.0 or not np.isfinite(zp):
            raise NonConvergence(f"unusable slope {zp} at iteration {it}")
        lam = cfg.damping if it <= 5 else 1.0
        for _ in range(60):
            cand = theta - lam * z / zp
            zc = score(cand)
            if np.isfinite(zc) and abs(zc) < abs(z):
                break
            lam *= 0.5
        else:
            raise NonConvergence(f"no |score|-decreasing step at iteration {it}")
        step = cand - theta
        theta, z = cand, zc
        if abs(step) < cfg.tol * max(1.0, abs(theta)):
            return theta
    raise NonConvergence(f"iteration cap {cfg.newton_max_iters} reached")
