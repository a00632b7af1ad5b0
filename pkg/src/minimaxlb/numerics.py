"""Deterministic scalar numerics: Gaussian tail, derivative-free maximizers,
and adaptive quadrature on finite and semi-infinite intervals.

The maximizers are grid-then-refine rather than derivative-based on purpose:
the objectives they serve routinely contain ``min{...}`` kinks and interior
ridges, so gradient information is unreliable.  Every routine here is a pure
function of its inputs and safe to call concurrently; grid scans reduce in a
fixed order, so repeated calls are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.special import erfc

__all__ = [
    "Interval",
    "OptResult",
    "QuadratureError",
    "gaussian_tail",
    "maximize_1d",
    "maximize_simplex",
    "integrate_adaptive",
    "integrate_semi_infinite",
]

_SQRT2 = math.sqrt(2.0)
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0   # 1/phi, golden-section step
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi^2


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to converge within its subdivision budget."""

    def __init__(self, message: str, *, interval=None, estimate=None, error=None):
        super().__init__(message)
        self.interval = interval
        self.estimate = estimate
        self.error = error


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi].  hi may be +inf, but only quadrature accepts
    half-infinite intervals; the maximizers require both ends finite."""

    lo: float
    hi: float

    def __post_init__(self):
        if not math.isfinite(self.lo):
            raise ValueError("interval lower end must be finite")
        if math.isnan(self.hi) or not self.lo < self.hi:
            raise ValueError(f"empty interval: need lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def finite(self) -> bool:
        return math.isfinite(self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class OptResult:
    """Best point found by a maximizer.

    ``value`` is the objective evaluated exactly at ``argmax`` (same floats the
    caller would get by re-evaluating), and ``evaluations`` counts every
    objective call made during the search.
    """

    argmax: tuple
    value: float
    evaluations: int


def gaussian_tail(t):
    """Standard normal upper tail Q(t) = P(Z > t) = integral of the unit
    Gaussian density over [t, inf).

    Backed by the complementary error function, Q(t) = erfc(t/sqrt(2))/2,
    accurate to well below 1e-12 absolute over the whole real line.  Accepts
    scalars or numpy arrays and preserves shape.
    """
    arr = np.asarray(t, dtype=float)
    out = 0.5 * erfc(arr / _SQRT2)
    if arr.ndim == 0:
        return float(out)
    return out


def _as_interval(domain) -> Interval:
    if isinstance(domain, Interval):
        return domain
    lo, hi = domain
    return Interval(float(lo), float(hi))


def maximize_1d(f: Callable[[float], float], domain, tol: float = 1e-7,
                *, cells: int = 512) -> OptResult:
    """Maximize a scalar function on a finite interval.

    Coarse scan on a uniform grid of at least 512 cells, then golden-section
    refinement inside the bracket around the best grid point.  The returned
    value never falls below the best grid evaluation, so for unimodal
    objectives it is within ``tol`` of the global maximum and in practice far
    closer.  NaN evaluations are treated as -inf.
    """
    domain = _as_interval(domain)
    if not domain.finite:
        raise ValueError("maximize_1d requires a finite interval")
    if not tol > 0:
        raise ValueError("tol must be positive")
    cells = max(int(cells), 512)

    lo, hi = domain.lo, domain.hi
    xs = np.linspace(lo, hi, cells + 1)
    evals = 0

    def call(x: float) -> float:
        nonlocal evals
        evals += 1
        v = float(f(float(x)))
        return -math.inf if math.isnan(v) else v

    best_x = xs[0]
    best_v = call(best_x)
    best_i = 0
    for i in range(1, cells + 1):
        v = call(xs[i])
        if v > best_v:
            best_v, best_x, best_i = v, xs[i], i

    # Golden-section inside the two cells flanking the best grid point.
    a = xs[max(best_i - 1, 0)]
    b = xs[min(best_i + 1, cells)]
    xtol = max(1e-12, 1e-10 * max(1.0, abs(lo), abs(hi)))
    h = b - a
    if h > xtol:
        c = a + _INV_PHI2 * h
        d = a + _INV_PHI * h
        yc = call(c)
        yd = call(d)
        while h > xtol:
            if yc >= yd:
                b, d, yd = d, c, yc
                h = b - a
                c = a + _INV_PHI2 * h
                yc = call(c)
            else:
                a, c, yc = c, d, yd
                h = b - a
                d = a + _INV_PHI * h
                yd = call(d)
            if yc > best_v:
                best_v, best_x = yc, c
            if yd > best_v:
                best_v, best_x = yd, d

    return OptResult(argmax=(float(best_x),), value=best_v, evaluations=evals)


def _simplex_rows(points_2d: np.ndarray, dim: int) -> np.ndarray:
    """Lift (dim-1)-dimensional coordinates to simplex weight rows."""
    if dim == 2:
        q = points_2d[:, 0]
        return np.column_stack([q, 1.0 - q])
    q = points_2d[:, 0]
    r = points_2d[:, 1]
    return np.column_stack([q, r, 1.0 - q - r])


def maximize_simplex(f, dim: int, tol: float = 1e-7, *,
                     vectorized: bool = False) -> OptResult:
    """Maximize f over the probability simplex with ``dim`` weights.

    f receives a weight vector (length ``dim``, nonnegative, summing to one).
    With ``vectorized=True`` it instead receives an (m, dim) array and must
    return m values; the search is identical, only cheaper.

    Barycentric grid scan followed by shrinking local grids around the
    incumbent.  Supports dim 2 and 3, which is all the multi-point bounds use.
    """
    if dim not in (2, 3):
        raise ValueError("maximize_simplex supports dim 2 or 3 only")
    if not tol > 0:
        raise ValueError("tol must be positive")

    evals = 0

    def batch(points_2d: np.ndarray) -> np.ndarray:
        nonlocal evals
        rows = _simplex_rows(points_2d, dim)
        np.clip(rows, 0.0, 1.0, out=rows)
        evals += len(rows)
        if vectorized:
            vals = np.asarray(f(rows), dtype=float)
        else:
            vals = np.array([float(f(row)) for row in rows], dtype=float)
        vals = np.where(np.isnan(vals), -np.inf, vals)
        return vals

    if dim == 2:
        grid = np.linspace(0.0, 1.0, 1025)[:, None]
    else:
        k = 64
        ij = [(i, j) for i in range(k + 1) for j in range(k + 1 - i)]
        grid = np.array(ij, dtype=float) / k

    vals = batch(grid)
    best = int(np.argmax(vals))
    best_pt = grid[best].copy()
    best_val = float(vals[best])

    # Local refinement: re-grid a shrinking box around the incumbent, clipped
    # to the simplex.  Box half-width decays geometrically to ~1e-11.
    half = 1.0 / (16 if dim == 2 else 64)
    steps = np.linspace(-1.0, 1.0, 13)
    while half > 1e-11:
        if dim == 2:
            cand = best_pt[0] + half * steps
            cand = np.clip(cand, 0.0, 1.0)[:, None]
        else:
            gx = np.clip(best_pt[0] + half * steps, 0.0, 1.0)
            gy = np.clip(best_pt[1] + half * steps, 0.0, 1.0)
            xx, yy = np.meshgrid(gx, gy)
            cand = np.column_stack([xx.ravel(), yy.ravel()])
            cand = cand[cand.sum(axis=1) <= 1.0 + 1e-15]
        vals = batch(cand)
        j = int(np.argmax(vals))
        if vals[j] > best_val:
            best_val = float(vals[j])
            best_pt = cand[j].copy()
        half *= 0.35

    weights = _simplex_rows(best_pt[None, :], dim)[0]
    weights = np.clip(weights, 0.0, 1.0)
    # Re-evaluate once at the returned point so value matches argmax exactly.
    if vectorized:
        final = float(np.asarray(f(weights[None, :]), dtype=float)[0])
    else:
        final = float(f(weights))
    evals += 1
    return OptResult(argmax=tuple(float(w) for w in weights),
                     value=final, evaluations=evals)


def _adaptive_simpson(f, a, fa, m, fm, b, fb, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol or (b - a) < 1e-14 * (1.0 + abs(a) + abs(b)):
        return left + right + delta / 15.0
    if depth <= 0:
        raise QuadratureError(
            "adaptive quadrature exhausted its subdivision depth",
            interval=(a, b), estimate=left + right, error=abs(delta) / 15.0)
    return (_adaptive_simpson(f, a, fa, lm, flm, m, fm, left, tol / 2.0, depth - 1)
            + _adaptive_simpson(f, m, fm, rm, frm, b, fb, right, tol / 2.0, depth - 1))


def integrate_adaptive(f: Callable[[float], float], lo: float, hi: float,
                       tol: float = 1e-6, *, max_depth: int = 48) -> float:
    """Adaptive Simpson quadrature of f over the finite interval [lo, hi]."""
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("integrate_adaptive requires finite endpoints")
    if hi <= lo:
        raise ValueError("need lo < hi")
    if not tol > 0:
        raise ValueError("tol must be positive")
    fa, fb = f(lo), f(hi)
    m = 0.5 * (lo + hi)
    fm = f(m)
    whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb)
    return _adaptive_simpson(f, lo, fa, m, fm, hi, fb, whole, tol, max_depth)


def integrate_semi_infinite(f: Callable[[float], float], lo: float,
                            tol: float = 1e-6, *, max_segments: int = 64) -> float:
    """Integrate f over [lo, inf) assuming Gaussian-dominated decay.

    The half-line is walked in width-2 segments, each integrated adaptively
    with a geometrically shrinking share of the tolerance budget.  Walking
    stops once two consecutive segments contribute less than tol/20 each, at
    which point the discarded tail is below tol/10 for any integrand whose
    decay is at least geometric from segment to segment (Gaussian decay is far
    stronger).  Raises QuadratureError if the tail never quiets down.
    """
    if not math.isfinite(lo):
        raise ValueError("lower endpoint must be finite")
    if not tol > 0:
        raise ValueError("tol must be positive")

    width = 2.0
    total = 0.0
    quiet = 0
    for k in range(max_segments):
        a = lo + k * width
        seg_tol = max(tol * 2.0 ** (-(k + 2)), 1e-16)
        seg = integrate_adaptive(f, a, a + width, seg_tol)
        total += seg
        if abs(seg) < tol / 20.0:
            quiet += 1
            if quiet >= 2:
                return total
        else:
            quiet = 0
    raise QuadratureError(
        "integrand tail did not fall below the truncation budget",
        interval=(lo, lo + max_segments * width), estimate=total, error=None)
