"""Independent reference implementations and frozen expected values.

Everything here is deliberately written without importing the package under
test: the Gaussian tail comes from a series / continued-fraction pair, the
optimizers are plain grid-and-zoom scans, and the quadratures go through
scipy.  Frozen constants were produced by these tools (cross-checked against
30-digit mpmath runs) and are asserted against package output in the tests.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate

SQRT2 = math.sqrt(2.0)
INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def phi(x: float) -> float:
    return INV_SQRT_2PI * math.exp(-0.5 * x * x)


def _erf_series(z: float) -> float:
    # Maclaurin series; below the series/fraction switchover the largest
    # intermediate term is ~70, so cancellation costs at most ~1e-14
    total = 0.0
    term = z
    n = 0
    while True:
        contrib = term / (2 * n + 1)
        total += contrib
        if abs(contrib) < 1e-18 * max(abs(total), 1.0):
            break
        n += 1
        term *= -z * z / n
    return 2.0 / math.sqrt(math.pi) * total


def _q_tail_cf(x: float, levels: int = 120) -> float:
    # Q(x) = phi(x) / (x + 1/(x + 2/(x + 3/(...)))), evaluated backward
    acc = 0.0
    for k in range(levels, 0, -1):
        acc = k / (x + acc)
    return phi(x) / (x + acc)


def q_tail(x: float) -> float:
    """Upper Gaussian tail, independent of scipy's erfc."""
    if x < 0.0:
        return 1.0 - q_tail(-x)
    if x < 4.0:
        return 0.5 * (1.0 - _erf_series(x / SQRT2))
    return _q_tail_cf(x)


def brute_max_1d(f, lo: float, hi: float, n: int = 4001, rounds: int = 7):
    """Grid scan with repeated 10x zoom around the best point."""
    lo, hi = float(lo), float(hi)
    best_x, best_v = lo, -math.inf
    for _ in range(rounds):
        xs = np.linspace(lo, hi, n)
        vs = np.array([f(float(x)) for x in xs])
        vs = np.where(np.isnan(vs), -np.inf, vs)
        i = int(np.argmax(vs))
        if vs[i] > best_v:
            best_v, best_x = float(vs[i]), float(xs[i])
        span = (hi - lo) / 10.0
        lo, hi = best_x - span, best_x + span
    return best_x, best_v


def brute_max_simplex3(f, outer: int = 120, rounds: int = 5):
    """Zoomed scan of f(q, r, w) on the open probability simplex."""
    lo_q, hi_q, lo_r, hi_r = 1e-6, 1.0 - 2e-6, 1e-6, 1.0 - 2e-6
    best = (1 / 3, 1 / 3, -math.inf)
    for _ in range(rounds):
        qs = np.linspace(lo_q, hi_q, outer)
        rs = np.linspace(lo_r, hi_r, outer)
        for q in qs:
            for r in rs:
                w = 1.0 - q - r
                if w <= 1e-9:
                    continue
                v = f(float(q), float(r), float(w))
                if v > best[2]:
                    best = (float(q), float(r), v)
        span_q = (hi_q - lo_q) / 10.0
        span_r = (hi_r - lo_r) / 10.0
        lo_q = max(best[0] - span_q, 1e-9)
        hi_q = min(best[0] + span_q, 1.0 - 1e-9)
        lo_r = max(best[1] - span_r, 1e-9)
        hi_r = min(best[1] + span_r, 1.0 - 1e-9)
    q, r, v = best
    return q, r, 1.0 - q - r, v


def wedge_integral_quad(s: float) -> float:
    # same integrand as the package's rotation geometry, but through
    # scipy.integrate.quad instead of the in-house quadrature
    def f(u):
        return INV_SQRT_2PI * math.exp(-0.5 * (u + s) ** 2) \
            * (1.0 - 2.0 * q_tail(u * math.sqrt(3.0)))
    val, _ = integrate.quad(f, 0.0, np.inf, epsabs=1e-13, epsrel=1e-13)
    return val


def gauss_pe(q: float, d: float) -> float:
    """Binary MAP error for unit-variance Gaussian pairs at distance d."""
    if q <= 0.0 or q >= 1.0:
        return 0.0
    if d == 0.0:
        return min(q, 1.0 - q)
    ell = math.log((1.0 - q) / q)
    return q * q_tail(0.5 * d - ell / d) + (1.0 - q) * q_tail(0.5 * d + ell / d)


# Frozen reference values.  Each entry was produced by the brute tools in
# this file and agrees with a 30-digit mpmath computation of the underlying
# stationarity condition to all printed digits.
FROZEN = {
    # sup_s 2 s^2 Q(s) and relatives, the Gaussian quadratic-loss family
    "gauss_local_mse": 0.331433229558,
    "gauss_local_mse_arg": 1.19060124834,
    "sup_s2_qtail": 0.165716614779,
    "sup_4s2_qtail": 0.662866459115,
    "gauss_local_mae": 0.339942414960,
    "gauss_local_mae_arg": 0.751791524694,
    # scale family: sup_u u^2 / (2 (1 + e^u)) at u = 2 s / theta
    "uniform_scale_local_mse": 0.241415039395,
    "uniform_scale_local_mse_arg_s": 1.10885755288,
    "uniform_scale_local_mse_half": 0.135335283237,  # e^{-2}, s = 1
    # location-on-support family: (t / 2e)^t
    "uniform_location_t1": 0.183939720586,
    "uniform_location_t2": 0.135335283237,
    "uniform_location_t3": 0.168031355742,
    # continuous-time signal families
    "awgn_smooth_mse": 0.165716614779,
    "awgn_rect_mse": 0.188618889024,
    "awgn_rect_mse_arg_s": 1.64142202923,
    # single-observation exponential rate pair (1, 2)
    "exp_rate_max_pe": 0.381966011250,   # (3 - sqrt 5) / 2
    "exp_rate_argmax_q": 0.552786404500,  # 1 - 1 / sqrt 5
    "exp_rate_half_pe": 0.375,
    "exp_rate_two_point": 0.190983005625,
    # moment-constrained prior bound on the scale family
    "moment_uniform_t1": 0.278464542761,
    "moment_uniform_t1_arg": 1.278464542761,
    "moment_uniform_t2": 0.310170006301,
    "moment_uniform_t2_arg_delta": 2.55692908552,
    "moment_uniform_t3": 0.583006605633,
    # three test points
    "simplex_pair_weight_max": 0.686291501015,  # 12 - 8 sqrt 2
    "gauss_three_point_half": 0.454919617199,
    "uniform_three_point_free": 0.390928365913,
    "uniform_three_point_exact": 0.462429157915,
    "uniform_three_point_exact_arg_s": 2.09437761419,
    # transform family
    "transform_m3_gauss_d01": 1.07044765176e-3,
    "transform_m3_gauss_d01_arg_q": 0.51036174682,
    "rotation_nuisance": 0.251374447583,
    "rotation_nuisance_arg_s": 1.08878755995,
    "wedge_at_zero": 1.0 / 3.0,
    # multi-point pairwise sums, gauss thetas (0,1,2), weights (.2,.5,.3)
    "ring_m3_gauss": 0.177084912388,
    # plain Gaussian tails
    "q_half": 0.3085375387259869,
    "q_one": 0.1586552539314571,
    "q_two": 0.02275013194817921,
    "q_1p2": 0.1150696702217083,
    # Monte-Carlo targets
    "mc_gauss_pe": 0.02275013194817921,       # Q(2): n=16, spacing 1
    "mc_uniform_pe": 0.074321814010,          # (1/2) (1/1.1)^20
}
