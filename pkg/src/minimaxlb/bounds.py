"""Lower-bound engines on estimation risk.

Every engine lower-bounds the worst-case (or local asymptotic minimax) risk
by planting a fictitious prior on a handful of test points and reducing the
Bayes risk to binary (or list) error probabilities.  The engines differ in
how many test points they use, how the priors enter, and whether they work at
finite sample size (through a model's exact error oracle) or in the local
limit (through its LocalErrorLimit).

Conventions shared by all engines:

* values are in physical parameter units, so scale factors like sigma^2 or
  theta^2 emerge from the optimization instead of being bolted on;
* every report carries the argmax of its search and an ``objective`` closure;
  re-evaluating the closure at the argmax reproduces the reported value;
* local engines report the rate zeta = v^(t*gamma) alongside the value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .loss import LossSpec, RatePower, eval_rho, omega
from .models import Model
from .numerics import (Interval, gaussian_tail, integrate_semi_infinite,
                       maximize_1d, maximize_simplex)

__all__ = [
    "BoundReport",
    "TransformSet",
    "two_point_bound",
    "concave_two_point_bound",
    "local_two_point_bound",
    "moment_two_point_bound",
    "three_point_bound",
    "three_point_exact_uniform",
    "transform_two_point_bound",
    "transform_list_error_bound",
    "rotation_nuisance_bound",
    "rotation_wedge_integral",
    "pairwise_ring_bound",
    "pairwise_allpairs_bound",
]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0

_DEFAULT_S_DOMAIN = Interval(0.0, 20.0)


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one bound computation.

    argmax holds the auxiliary parameters of the search (s or delta, priors
    q/r/w, inner priors u/v).  ``objective`` re-evaluates the bound's
    objective at keyword arguments matching argmax exactly; reevaluate()
    must reproduce ``value``.
    """

    bound_id: str
    model_id: str
    value: float
    loss: LossSpec
    rate: Optional[RatePower] = None
    argmax: Mapping[str, float] = field(default_factory=dict)
    notes: tuple = ()
    objective: Optional[Callable] = None

    def __post_init__(self):
        if not self.value >= 0.0:
            raise ValueError("bound value must be nonnegative")

    def reevaluate(self) -> float:
        if self.objective is None:
            raise ValueError("this report carries no objective closure")
        return float(self.objective(**self.argmax))

    def to_dict(self) -> dict:
        return {
            "bound": self.bound_id,
            "model": self.model_id,
            "loss": self.loss.describe(),
            "value": self.value,
            "rate": self.rate.render() if self.rate is not None else None,
            "argmax": {k: float(v) for k, v in self.argmax.items()},
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class TransformSet:
    """A family of m norm-preserving linear maps that sum to the zero map.

    Stored as square matrices of a common dimension.  Validity is checked on
    construction: the sum annihilates a probe grid to 1e-9 relative, and each
    map preserves probe norms to 1e-12 relative.
    """

    transforms: tuple

    def __post_init__(self):
        mats = tuple(np.asarray(t, dtype=float) for t in self.transforms)
        if len(mats) < 2:
            raise ValueError("need at least two transforms")
        d = mats[0].shape[0]
        for t in mats:
            if t.shape != (d, d):
                raise ValueError("transforms must be square matrices of one dimension")
        object.__setattr__(self, "transforms", mats)

        probes = [np.eye(d)[i] for i in range(d)]
        rng_free = np.sin(np.arange(1, d + 1, dtype=float))  # fixed probe
        probes.append(rng_free / np.linalg.norm(rng_free))
        total = sum(mats)
        for v in probes:
            nv = np.linalg.norm(v)
            if np.linalg.norm(total @ v) > 1e-9 * max(nv, 1e-30):
                raise ValueError("transforms do not sum to the zero map")
            for t in mats:
                if abs(np.linalg.norm(t @ v) - nv) > 1e-12 * max(nv, 1e-30):
                    raise ValueError("transform is not norm-preserving")

    @property
    def m(self) -> int:
        return len(self.transforms)

    @property
    def dim(self) -> int:
        return self.transforms[0].shape[0]

    def apply(self, i: int, v) -> np.ndarray:
        return self.transforms[i] @ np.atleast_1d(np.asarray(v, dtype=float))

    def partial_sum(self, k: int, v) -> np.ndarray:
        """Sum of the first k transforms applied to v."""
        v = np.atleast_1d(np.asarray(v, dtype=float))
        out = np.zeros_like(v)
        for i in range(k):
            out += self.transforms[i] @ v
        return out

    @staticmethod
    def rotations(m: int) -> "TransformSet":
        """Plane rotations by 2*pi*i/m, i = 0..m-1 (they sum to zero for m >= 2)."""
        if m < 2:
            raise ValueError("need m >= 2")
        mats = []
        for i in range(m):
            a = 2.0 * math.pi * i / m
            mats.append(np.array([[math.cos(a), -math.sin(a)],
                                  [math.sin(a), math.cos(a)]]))
        return TransformSet(tuple(mats))

    @staticmethod
    def sign_pair() -> "TransformSet":
        """The scalar pair {identity, negation}."""
        return TransformSet((np.array([[1.0]]), np.array([[-1.0]])))


# ---------------------------------------------------------------------------
# shared helpers

def _require_oracle(model: Model):
    if model.oracle is None:
        raise ValueError(f"model {model.id!r} exposes no exact error oracle")
    return model.oracle


def _require_limit(model: Model):
    if model.limit is None:
        raise ValueError(f"model {model.id!r} exposes no local error limit")
    return model.limit


def _require_pe_pair(model: Model):
    limit = _require_limit(model)
    if limit.pe_pair is None:
        raise ValueError(f"model {model.id!r} has no fixed-prior local limit")
    return limit.pe_pair


def _check_local_omega(loss: LossSpec):
    if loss.kind == "custom" and loss.omega_fn is None:
        raise ValueError("custom loss without a supplied omega is not usable "
                         "in local bounds")


def _sep(theta0, theta1) -> float:
    a = np.atleast_1d(np.asarray(theta0, dtype=float))
    b = np.atleast_1d(np.asarray(theta1, dtype=float))
    return float(np.linalg.norm(b - a))


def _as_domain(domain) -> Interval:
    if domain is None:
        return _DEFAULT_S_DOMAIN
    if isinstance(domain, Interval):
        return domain
    lo, hi = domain
    return Interval(float(lo), float(hi))


def _vec_max_01(fvec, grid: int = 1025):
    """Maximize a vectorized scalar function on [0, 1] by scan plus zoom."""
    xs = np.linspace(0.0, 1.0, grid)
    vals = np.asarray(fvec(xs), dtype=float)
    i = int(np.nanargmax(vals))
    best_x = float(xs[i])
    half = 1.0 / (grid - 1)
    steps = np.linspace(-1.0, 1.0, 13)
    best_v = float(vals[i])
    while half > 1e-12:
        cand = np.clip(best_x + half * steps, 0.0, 1.0)
        vals = np.asarray(fvec(cand), dtype=float)
        j = int(np.nanargmax(vals))
        if vals[j] > best_v:
            best_v = float(vals[j])
            best_x = float(cand[j])
        half *= 0.35
    final = float(np.asarray(fvec(np.array([best_x])), dtype=float)[0])
    return best_x, final


def _max_box2(fvec, grid: int = 65):
    """Maximize a vectorized function over [0,1]^2; fvec maps (m,2) -> (m,)."""
    xs = np.linspace(0.0, 1.0, grid)
    xx, yy = np.meshgrid(xs, xs)
    rows = np.column_stack([xx.ravel(), yy.ravel()])
    vals = np.asarray(fvec(rows), dtype=float)
    i = int(np.nanargmax(vals))
    best = rows[i].copy()
    best_v = float(vals[i])
    half = 1.0 / (grid - 1)
    steps = np.linspace(-1.0, 1.0, 13)
    while half > 1e-12:
        gx = np.clip(best[0] + half * steps, 0.0, 1.0)
        gy = np.clip(best[1] + half * steps, 0.0, 1.0)
        xx, yy = np.meshgrid(gx, gy)
        rows = np.column_stack([xx.ravel(), yy.ravel()])
        vals = np.asarray(fvec(rows), dtype=float)
        j = int(np.nanargmax(vals))
        if vals[j] > best_v:
            best_v = float(vals[j])
            best = rows[j].copy()
        half *= 0.35
    final = float(np.asarray(fvec(best[None, :]), dtype=float)[0])
    return (float(best[0]), float(best[1])), final


def _rowwise_max_01(f, k: int, grid: int = 17, iters: int = 48):
    """Row-parallel maximization on [0,1].

    f maps a (k,) vector of abscissas (one per row) to (k,) values.  Scan a
    shared grid, then run golden-section on per-row brackets, all rows in
    lockstep.  Assumes row objectives are unimodal (true for the prior-mass
    products used here: products of linear masses and limiting error curves).
    """
    us = np.linspace(0.0, 1.0, grid)
    best_v = np.asarray(f(np.full(k, us[0])), dtype=float)
    best_i = np.zeros(k, dtype=int)
    for idx in range(1, grid):
        v = np.asarray(f(np.full(k, us[idx])), dtype=float)
        better = v > best_v
        best_v = np.where(better, v, best_v)
        best_i = np.where(better, idx, best_i)
    a = us[np.maximum(best_i - 1, 0)].astype(float)
    b = us[np.minimum(best_i + 1, grid - 1)].astype(float)
    for _ in range(iters):
        h = b - a
        c = a + _INV_PHI2 * h
        d = a + _INV_PHI * h
        yc = np.asarray(f(c), dtype=float)
        yd = np.asarray(f(d), dtype=float)
        left = yc >= yd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
    x = 0.5 * (a + b)
    y = np.asarray(f(x), dtype=float)
    keep_grid = best_v > y
    x = np.where(keep_grid, us[best_i], x)
    y = np.where(keep_grid, best_v, y)
    return x, y


# ---------------------------------------------------------------------------
# two-point bounds at finite sample size

def two_point_bound(model: Model, loss: LossSpec, theta0, theta1,
                    n: int = 1) -> BoundReport:
    """Two test points, convex symmetric loss.

    value = 2 * rho((theta1 - theta0)/2) * max_q P_e(q, theta0, theta1);
    the estimator cannot be closer than half the spacing to both points at
    once, which costs rho(spacing/2) whenever the MAP test errs.
    """
    oracle = _require_oracle(model)
    if not (loss.convex and loss.symmetric):
        raise ValueError("two_point_bound needs a convex symmetric loss; "
                         "use concave_two_point_bound instead")
    rho_half = eval_rho(loss, _sep(theta0, theta1) / 2.0)

    def objective(q: float) -> float:
        return 2.0 * rho_half * float(oracle.pe(q, theta0, theta1, n))

    opt = maximize_1d(objective, (0.0, 1.0))
    q_star = opt.argmax[0]
    return BoundReport(bound_id="two-point", model_id=model.id,
                       value=objective(q_star), loss=loss,
                       argmax={"q": q_star}, objective=objective)


def concave_two_point_bound(model: Model, loss: LossSpec, theta0, theta1,
                            n: int = 1) -> BoundReport:
    """Two test points for concave (or edge-minimal) losses.

    When rho is concave, or more generally minimized over the chord at its
    endpoints, the half-spacing argument is unavailable, but the full-spacing
    one survives: value = max_q rho(theta1 - theta0) * P_e(q, theta0, theta1).
    """
    oracle = _require_oracle(model)
    rho_full = eval_rho(loss, _sep(theta0, theta1))

    def objective(q: float) -> float:
        return rho_full * float(oracle.pe(q, theta0, theta1, n))

    opt = maximize_1d(objective, (0.0, 1.0))
    q_star = opt.argmax[0]
    return BoundReport(bound_id="concave-two-point", model_id=model.id,
                       value=objective(q_star), loss=loss,
                       argmax={"q": q_star}, objective=objective)


# ---------------------------------------------------------------------------
# local two-point bound

def local_two_point_bound(model: Model, loss: LossSpec, theta: float = 1.0,
                          s_domain=None, *, half_prior: bool = False
                          ) -> BoundReport:
    """Local asymptotic two-point bound: value = sup_s 2*omega(s)*pe_inf(theta, s).

    The test points sit at theta and theta + 2*s*xi, so each is s*xi from
    their midpoint and a wrong MAP decision costs at least rho(s*xi); the
    normalization by rho(xi) leaves omega(s).  With ``half_prior`` the prior
    is frozen at 1/2 instead of optimized, which exposes the gain from the
    prior search on asymmetric models.
    """
    limit = _require_limit(model)
    _check_local_omega(loss)
    domain = _as_domain(s_domain)
    pe_fn = limit.pe_inf_halfprior if half_prior else limit.pe_inf
    if pe_fn is None:
        raise ValueError(f"model {model.id!r} has no frozen-prior local limit")

    def objective(s: float) -> float:
        return 2.0 * omega(loss, s) * float(pe_fn(theta, s))

    opt = maximize_1d(objective, domain)
    s_star = opt.argmax[0]
    rate = limit.rate.with_power_loss(loss.t) if loss.kind == "power" else None
    notes = ("prior frozen at 1/2",) if half_prior else ()
    return BoundReport(bound_id="local-two-point", model_id=model.id,
                       value=objective(s_star), loss=loss, rate=rate,
                       argmax={"s": s_star}, notes=notes, objective=objective)


# ---------------------------------------------------------------------------
# moment (power-loss) two-point bound

def moment_two_point_bound(model: Model, t: float, theta: float = 1.0,
                           s_domain=None, *, r_fixed: Optional[float] = None,
                           n: Optional[int] = None, theta0: Optional[float] = None
                           ) -> BoundReport:
    """Two-point bound for the t-th moment of the error, t >= 1.

    Splits the loss between the two hypotheses with a breakpoint at fraction
    r of the spacing instead of the midpoint, and tilts the prior to
    compensate:

        value = sup_{delta, q, r} delta^t * [(1-r)^(t-1) q + r^(t-1) (1-q)]
                                * P_e(c, theta0, theta0 + delta),
        c = (1-r)^(t-1) q / [(1-r)^(t-1) q + r^(t-1) (1-q)].

    At r = 1/2, t = 2 the objective collapses to the plain two-point MSE
    objective.  Without ``n`` the bound is local: delta is the separation in
    contraction units and P_e is the model's fixed-prior limit.
    """
    if t < 1.0:
        raise ValueError("moment bound needs t >= 1")
    loss = LossSpec.power(t)
    domain = _as_domain(s_domain)
    local = n is None
    if local:
        pe_pair = _require_pe_pair(model)

        def pe_at(delta, c):
            return pe_pair(theta, delta, c)
    else:
        oracle = _require_oracle(model)
        if theta0 is None:
            raise ValueError("finite-sample moment bound needs theta0")

        def pe_at(delta, c):
            return oracle.pe(c, theta0, theta0 + delta, n)

    def rows_value(delta: float, qr: np.ndarray) -> np.ndarray:
        q = qr[:, 0]
        r = qr[:, 1]
        w1 = (1.0 - r) ** (t - 1.0) * q
        w2 = r ** (t - 1.0) * (1.0 - q)
        mass = w1 + w2
        safe = mass > 0.0
        c = np.where(safe, w1 / np.where(safe, mass, 1.0), 0.5)
        pe = np.asarray(pe_at(delta, c), dtype=float)
        return delta ** t * np.where(safe, mass * pe, 0.0)

    def inner(delta: float):
        if r_fixed is not None:
            qs, val = _vec_max_01(
                lambda q: rows_value(delta, np.column_stack(
                    [q, np.full_like(q, r_fixed)])))
            return (qs, float(r_fixed)), val
        return _max_box2(lambda qr: rows_value(delta, qr))

    opt = maximize_1d(lambda d: inner(d)[1], domain)
    d_star = opt.argmax[0]
    (q_star, r_star), _ = inner(d_star)

    def objective(delta: float, q: float, r: float) -> float:
        return float(rows_value(delta, np.array([[q, r]]))[0])

    rate = model.limit.rate.with_power_loss(t) if local else None
    notes = () if r_fixed is None else (f"loss split r frozen at {r_fixed:g}",)
    return BoundReport(bound_id="moment", model_id=model.id,
                       value=objective(d_star, q_star, r_star), loss=loss,
                       rate=rate,
                       argmax={"delta": d_star, "q": q_star, "r": r_star},
                       notes=notes, objective=objective)


# ---------------------------------------------------------------------------
# three-point MSE bounds

def _three_point_engine(pe_left, pe_right, domain: Interval, inner_prior: str,
                        w_zero: bool):
    """Shared search for the three-point relaxed bound.

    Test points theta0 - delta, theta0, theta0 + delta carry simplex weights
    (q, r, w).  Each flank pair is reduced to a binary problem whose inner
    prior split is either optimized freely (u, v in [0,1]) or pinned to the
    half-prior choice u = q/(q+r), v = w/(w+r).

    pe_left(delta, c) and pe_right(delta, c) give the pair error with prior c
    on the lower point of the pair.
    """

    def left_term(delta, u, q, r):
        a = (1.0 - u) * q
        b = u * r
        mass = a + b
        safe = mass > 0.0
        c = np.where(safe, a / np.where(safe, mass, 1.0), 0.5)
        pe = np.asarray(pe_left(delta, c), dtype=float)
        return np.where(safe, mass * pe, 0.0)

    def right_term(delta, v, r, w):
        a = v * r
        b = (1.0 - v) * w
        mass = a + b
        safe = mass > 0.0
        c = np.where(safe, a / np.where(safe, mass, 1.0), 0.5)
        pe = np.asarray(pe_right(delta, c), dtype=float)
        return np.where(safe, mass * pe, 0.0)

    def pinned_uv(q, r, w):
        qr = q + r
        rw = r + w
        u = np.where(qr > 0.0, q / np.where(qr > 0.0, qr, 1.0), 0.5)
        v = np.where(rw > 0.0, w / np.where(rw > 0.0, rw, 1.0), 0.5)
        return u, v

    def inner(delta: float):
        """Maximize over the simplex (and u, v); returns argmax and value."""

        def batch(rows: np.ndarray) -> np.ndarray:
            q, r, w = rows[:, 0], rows[:, 1], rows[:, 2]
            if inner_prior == "half":
                u, v = pinned_uv(q, r, w)
                lvals = left_term(delta, u, q, r)
                rvals = right_term(delta, v, r, w)
            else:
                # coarse per-row search: it only ranks simplex rows, and
                # the winning row's pair priors are re-solved tightly below
                k = len(rows)
                _, lvals = _rowwise_max_01(lambda u: left_term(delta, u, q, r),
                                           k, grid=9, iters=14)
                _, rvals = _rowwise_max_01(lambda v: right_term(delta, v, r, w),
                                           k, grid=9, iters=14)
            return delta ** 2 * (lvals + rvals)

        if w_zero:
            opt = maximize_simplex(
                lambda rows2: batch(np.column_stack(
                    [rows2[:, 0], rows2[:, 1], np.zeros(len(rows2))])),
                dim=2, vectorized=True)
            q, r, w = opt.argmax[0], opt.argmax[1], 0.0
        else:
            opt = maximize_simplex(batch, dim=3, vectorized=True)
            q, r, w = opt.argmax

        if inner_prior == "half":
            u, v = pinned_uv(np.asarray(q), np.asarray(r), np.asarray(w))
            u, v = float(u), float(v)
        else:
            ua, _ = _rowwise_max_01(
                lambda uu: left_term(delta, uu, np.array([q]), np.array([r])),
                1, grid=33, iters=60)
            va, _ = _rowwise_max_01(
                lambda vv: right_term(delta, vv, np.array([r]), np.array([w])),
                1, grid=33, iters=60)
            u, v = float(ua[0]), float(va[0])
        value = float(delta ** 2 * (left_term(delta, np.array([u]), np.array([q]),
                                              np.array([r]))[0]
                                    + right_term(delta, np.array([v]), np.array([r]),
                                                 np.array([w]))[0]))
        return (float(q), float(r), float(w), u, v), value

    outer = maximize_1d(lambda d: inner(d)[1], domain)
    d_star = outer.argmax[0]
    (q, r, w, u, v), _ = inner(d_star)

    def objective(delta, q, r, w, u, v):
        lt = left_term(delta, np.array([u]), np.array([q]), np.array([r]))[0]
        rt = right_term(delta, np.array([v]), np.array([r]), np.array([w]))[0]
        return float(delta ** 2 * (lt + rt))

    argmax = {"delta": d_star, "q": q, "r": r, "w": w, "u": u, "v": v}
    return argmax, objective


def three_point_bound(model: Model, theta: float = 1.0, s_domain=None, *,
                      inner_prior: str = "free", w_zero: bool = False,
                      n: Optional[int] = None, theta0: Optional[float] = None
                      ) -> BoundReport:
    """Three-point MSE bound.

    Adds a middle test point: with weights (q, r, w) on theta0 - delta,
    theta0, theta0 + delta, the squared-error cost of confusing either flank
    pair is delta^2, and each pair contributes a reweighted binary error term.
    inner_prior "free" maximizes the pair splits (u, v); "half" pins them to
    the choice that makes both pair priors equal, which decouples the simplex
    factor from the error curve (and is how the quoted Gaussian value arises).
    Setting ``w_zero`` drops the third point, recovering the t=2 moment bound.
    """
    if inner_prior not in ("free", "half"):
        raise ValueError("inner_prior must be 'free' or 'half'")
    domain = _as_domain(s_domain)
    local = n is None
    if local:
        pe_pair = _require_pe_pair(model)

        def pe_left(delta, c):
            return pe_pair(theta, delta, c)

        pe_right = pe_left
    else:
        oracle = _require_oracle(model)
        if theta0 is None:
            raise ValueError("finite-sample three-point bound needs theta0")

        def pe_left(delta, c):
            return oracle.pe(c, theta0 - delta, theta0, n)

        def pe_right(delta, c):
            return oracle.pe(c, theta0, theta0 + delta, n)

    argmax, objective = _three_point_engine(pe_left, pe_right, domain,
                                            inner_prior, w_zero)
    loss = LossSpec.mse()
    rate = model.limit.rate.with_power_loss(2.0) if local else None
    notes = (f"pair priors {inner_prior}",)
    if w_zero:
        notes += ("third-point weight pinned to 0",)
    return BoundReport(bound_id="three-point", model_id=model.id,
                       value=objective(**argmax), loss=loss, rate=rate,
                       argmax=argmax, notes=notes, objective=objective)


def three_point_exact_uniform(theta0: float = 1.0, s_domain=None) -> BoundReport:
    """Exact three-point MSE bound for the uniform scale model.

    Instead of relaxing the three-hypothesis Bayes risk into two binary
    problems, the posterior-weighted quadratic risk is integrated exactly in
    the local limit, giving (with dimensionless spacing s)

        value = theta0^2 * sup_{s, (q,r,w)} s^2 * [
                    (q r e^s + 4 q w + r w e^-s) / (q e^{2s} + r e^s + w)
                    + r w (1 - e^-s) / (r e^s + w) ].

    The simplex weights sit on test scales theta0*(1 - s/n), theta0,
    theta0*(1 + s/n); the spacing theta0*s/n carries the theta0^2 factor.
    """
    if not theta0 > 0:
        raise ValueError("theta0 must be positive")
    domain = _as_domain(s_domain)

    def rows_value(s: float, rows: np.ndarray) -> np.ndarray:
        q, r, w = rows[:, 0], rows[:, 1], rows[:, 2]
        es = math.exp(s)
        den1 = q * es * es + r * es + w
        t1 = np.where(den1 > 0.0,
                      (q * r * es + 4.0 * q * w + r * w / es)
                      / np.where(den1 > 0.0, den1, 1.0), 0.0)
        den2 = r * es + w
        t2 = np.where(den2 > 0.0,
                      r * w * (1.0 - 1.0 / es) / np.where(den2 > 0.0, den2, 1.0),
                      0.0)
        return s * s * (t1 + t2)

    def inner(s: float):
        opt = maximize_simplex(lambda rows: rows_value(s, rows), dim=3,
                               vectorized=True)
        return opt.argmax, opt.value

    outer = maximize_1d(lambda s: inner(s)[1], domain)
    s_star = outer.argmax[0]
    (q, r, w), _ = inner(s_star)

    def objective(s, q, r, w):
        return theta0 ** 2 * float(rows_value(s, np.array([[q, r, w]]))[0])

    rate = RatePower(1.0, 2.0, "n")
    argmax = {"s": s_star, "q": q, "r": r, "w": w}
    return BoundReport(bound_id="three-point-exact", model_id="uniform-scale",
                       value=objective(**argmax), loss=LossSpec.mse(),
                       rate=rate, argmax=argmax,
                       notes=("exact three-hypothesis risk, not the pairwise "
                              "relaxation; s is the spacing in contraction "
                              "units, so theta0^2 multiplies the coefficient",),
                       objective=objective)


# ---------------------------------------------------------------------------
# transform-based bounds

def transform_list_error_bound(loss: LossSpec, transforms: TransformSet,
                               thetas: Sequence, list_error: float, *,
                               model_id: str = "custom") -> BoundReport:
    """Bound from m test points tied together by a TransformSet.

    The caller supplies the list-error probability (the chance the true
    hypothesis falls outside the m-1 most likely); the geometry contributes
    m * rho(|(1/m) sum_i T_i theta_i|).  This is the general m-way hook; the
    specialized engines below feed it.
    """
    if not 0.0 <= list_error <= 1.0:
        raise ValueError("list_error must be a probability")
    if len(thetas) != transforms.m:
        raise ValueError("need one test point per transform")
    centroid = np.zeros(transforms.dim)
    for i, th in enumerate(thetas):
        centroid += transforms.apply(i, th)
    centroid /= transforms.m
    rho_val = eval_rho(loss, float(np.linalg.norm(centroid)))
    value = transforms.m * rho_val * list_error

    def objective() -> float:
        return transforms.m * rho_val * list_error

    return BoundReport(bound_id="transform-list", model_id=model_id,
                       value=value, loss=loss, argmax={}, objective=objective)


def transform_two_point_bound(model: Model, loss: LossSpec,
                              transforms: TransformSet, vartheta0, vartheta1,
                              k: int, q: Optional[float] = None, n: int = 1
                              ) -> BoundReport:
    """Transform bound collapsed to two distinct test values.

    The first k transforms carry one parameter value, the rest the other;
    with alpha_frac = k/m the bound reads

        rho(|(1/m) sum_{i<k} T_i (vartheta0 - vartheta1)|)
            * P_e(q, vartheta0, vartheta1) / (1 - alpha - q + 2*alpha*q).

    With m even, alpha = 1/2 and T_0 the identity this is exactly the plain
    two-point bound.  q = None maximizes over the prior.
    """
    oracle = _require_oracle(model)
    m = transforms.m
    if not (isinstance(k, int) and 1 <= k <= m):
        raise ValueError("k must be an integer in [1, m]")
    alpha_frac = k / m
    diff = np.atleast_1d(np.asarray(vartheta0, dtype=float)) - \
        np.atleast_1d(np.asarray(vartheta1, dtype=float))
    rho_val = eval_rho(loss, float(np.linalg.norm(
        transforms.partial_sum(k, diff))) / m)

    def objective(q: float) -> float:
        denom = 1.0 - alpha_frac - q + 2.0 * alpha_frac * q
        pe = float(oracle.pe(q, vartheta0, vartheta1, n))
        if denom <= 0.0:
            return 0.0
        return rho_val * pe / denom

    if q is None:
        opt = maximize_1d(objective, (0.0, 1.0))
        q_star = opt.argmax[0]
    else:
        if not 0.0 <= q <= 1.0:
            raise ValueError("prior must lie in [0, 1]")
        q_star = float(q)
    notes = (f"m={m}, k={k}, alpha_frac={alpha_frac:g}",)
    return BoundReport(bound_id="transform", model_id=model.id,
                       value=objective(q_star), loss=loss,
                       argmax={"q": q_star}, notes=notes, objective=objective)


_SQRT3 = math.sqrt(3.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def rotation_wedge_integral(s: float, tol: float = 1e-10) -> float:
    """List-error limit for three rotated Gaussian test points:
    (1/sqrt(2*pi)) * integral_0^inf e^{-(u+s)^2/2} (1 - 2*Q(u*sqrt(3))) du.

    The factor in parentheses is the probability that a unit Gaussian pair
    falls inside the 120-degree wedge nearest the displaced test point.  At
    s = 0 the integral is exactly 1/3 (the wedge covers a third of the plane).
    """
    if s < 0:
        raise ValueError("s must be nonnegative")

    def integrand(u: float) -> float:
        return (_INV_SQRT_2PI * math.exp(-0.5 * (u + s) ** 2)
                * (1.0 - 2.0 * gaussian_tail(u * _SQRT3)))

    return integrate_semi_infinite(integrand, 0.0, tol)


def rotation_nuisance_bound(sigma: float = 1.0, s_domain=None) -> BoundReport:
    """MSE bound for a 2-D Gaussian location whose second coordinate is a
    nuisance: three test points rotated by 120 degrees, uniform priors.

    Per scaled spacing s the geometry factor is 3*s^2 (through the transform
    hook) and the list error is the wedge integral; the optimized product is
    multiplied by sigma^2 and decays at rate n.
    """
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    domain = _as_domain(s_domain) if s_domain is not None else Interval(0.0, 6.0)
    transforms = TransformSet.rotations(3)
    inverses = tuple(t.T for t in transforms.transforms)
    loss = LossSpec.mse()

    def objective(s: float) -> float:
        base = np.array([-s, 0.0])
        pts = [inv @ base for inv in inverses]
        hook = transform_list_error_bound(loss, transforms, pts,
                                          rotation_wedge_integral(s),
                                          model_id="nuisance-rotation")
        return sigma * sigma * hook.value

    opt = maximize_1d(objective, domain)
    s_star = opt.argmax[0]
    return BoundReport(bound_id="nuisance-rotation",
                       model_id="nuisance-rotation",
                       value=objective(s_star), loss=loss,
                       rate=RatePower(0.5, 1.0, "n"),
                       argmax={"s": s_star},
                       notes=("three plane rotations, uniform priors; "
                              "geometry not optimized",),
                       objective=objective)


# ---------------------------------------------------------------------------
# pairwise multi-point combiners

def _validate_points_weights(thetas, weights):
    if len(thetas) != len(weights):
        raise ValueError("need one weight per test point")
    if len(thetas) < 2:
        raise ValueError("need at least two test points")
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0) or abs(float(w.sum()) - 1.0) > 1e-9:
        raise ValueError("weights must be nonnegative and sum to one")
    return w


def pairwise_ring_bound(model: Model, loss: LossSpec, thetas: Sequence,
                        weights: Sequence, n: int = 1) -> BoundReport:
    """Ring combiner: each consecutive pair (cyclically) contributes a
    two-point term

        rho((theta_{i+1} - theta_i)/2) * (q_i + q_{i+1})
            * P_e(q_i/(q_i + q_{i+1}), theta_i, theta_{i+1}).

    With m = 2 the ring traverses the single pair twice, which is exactly the
    factor 2 of the plain two-point bound at a fixed prior.
    """
    oracle = _require_oracle(model)
    w = _validate_points_weights(thetas, weights)
    m = len(thetas)

    def objective() -> float:
        total = 0.0
        for i in range(m):
            j = (i + 1) % m
            mass = w[i] + w[j]
            if mass <= 0.0:
                continue
            sep = _sep(thetas[i], thetas[j])
            total += eval_rho(loss, sep / 2.0) * mass * \
                float(oracle.pe(w[i] / mass, thetas[i], thetas[j], n))
        return total

    return BoundReport(bound_id="ring", model_id=model.id, value=objective(),
                       loss=loss, argmax={}, objective=objective)


def pairwise_allpairs_bound(model: Model, loss: LossSpec, thetas: Sequence,
                            weights: Sequence, n: int = 1) -> BoundReport:
    """All-pairs combiner:

        (1/(m-1)) * sum_{i != j} rho((theta_j - theta_i)/2) * (q_i + q_j)
                                 * P_e(q_i/(q_i + q_j), theta_i, theta_j).

    Each unordered pair appears twice in the ordered sum with equal terms;
    dividing by m-1 keeps the total prior mass accounting consistent.
    """
    oracle = _require_oracle(model)
    w = _validate_points_weights(thetas, weights)
    m = len(thetas)

    def objective() -> float:
        total = 0.0
        for i in range(m):
            for j in range(m):
                if i == j:
                    continue
                mass = w[i] + w[j]
                if mass <= 0.0:
                    continue
                sep = _sep(thetas[i], thetas[j])
                total += eval_rho(loss, sep / 2.0) * mass * \
                    float(oracle.pe(w[i] / mass, thetas[i], thetas[j], n))
        return total / (m - 1)

    return BoundReport(bound_id="all-pairs", model_id=model.id,
                       value=objective(), loss=loss, argmax={},
                       objective=objective)
