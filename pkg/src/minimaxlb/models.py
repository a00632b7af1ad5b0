"""Parametric model library.

Each model exposes one or both of:

* an exact binary MAP error probability pe(q, theta0, theta1, n), the Bayes
  error of deciding between p(.|theta0) and p(.|theta1) from n iid draws
  under priors (q, 1-q);
* a local error limit describing what happens when the two test points
  approach each other at the model's natural contraction rate xi = v^(-gamma)
  (v is the sample size n, or the observation time T for waveform models).

The local limit carries three views of the same object:

    pe_inf(theta, s)          limit of max_q pe(q, theta, theta + 2*s*xi)
    pe_inf_halfprior(theta,s) same with q frozen at 1/2
    pe_pair(theta, delta, q)  limit of pe(q, theta, theta + delta*xi)

pe_pair is the primitive: the multi-point engines weight pairs of test points
with priors that are themselves being optimized, so they need the fixed-prior
limit, not only the q-maximized one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

import numpy as np

from .loss import RatePower
from .numerics import Interval, gaussian_tail

__all__ = [
    "BinaryErrorOracle",
    "LocalErrorLimit",
    "ModelDescriptor",
    "Model",
    "PeEstimate",
    "binary_gaussian_error",
    "exponential_rate_pe",
    "uniform_scale_pe",
    "uniform_location_pe",
    "gaussian_location_pe",
    "gaussian_location_limit",
    "awgn_signal_limit",
    "exp_family_limit",
    "fisher_from_log_partition",
    "monte_carlo_pe",
    "get_model",
    "MODEL_IDS",
]


# ---------------------------------------------------------------------------
# types

@dataclass(frozen=True)
class BinaryErrorOracle:
    """Exact MAP error pe(q, theta0, theta1, n) for one model.

    Registry oracles accept either ordering of the test points and coincident
    points (where pe = min{q, 1-q}); they are concave in q with pe(0) = pe(1) = 0
    and satisfy pe(q, a, b) = pe(1-q, b, a).
    """

    pe: Callable


@dataclass(frozen=True)
class LocalErrorLimit:
    """Limiting error probabilities under test-point contraction.

    rate describes the contraction: xi = variable^(-xi_exponent).  The stored
    zeta_exponent pairs with squared error; bound engines rescale it for the
    loss they actually use.
    """

    pe_inf: Callable
    rate: RatePower
    pe_inf_halfprior: Optional[Callable] = None
    optimal_q: Optional[Callable] = None
    pe_pair: Optional[Callable] = None


@dataclass(frozen=True)
class ModelDescriptor:
    id: str
    parameter_space: Interval
    nuisance: Optional[str] = None
    notes: str = ""


@dataclass(frozen=True)
class Model:
    """A registry entry: descriptor plus whichever views the model supports."""

    descriptor: ModelDescriptor
    oracle: Optional[BinaryErrorOracle] = None
    limit: Optional[LocalErrorLimit] = None
    sampler: Optional[object] = None
    params: Mapping = field(default_factory=dict)

    @property
    def id(self) -> str:
        return self.descriptor.id


# ---------------------------------------------------------------------------
# closed-form error probabilities

def binary_gaussian_error(q, d):
    """MAP error for two unit-variance Gaussian hypotheses whose means are
    d apart, priors (q, 1-q).

    The likelihood-ratio threshold sits at d/2 - ln((1-q)/q)/d from the first
    mean, giving q*Q(d/2 - L/d) + (1-q)*Q(d/2 + L/d) with L = ln((1-q)/q).
    Symmetric in q <-> 1-q; d = 0 degenerates to min{q, 1-q}.
    """
    q = np.asarray(q, dtype=float)
    d = float(d)
    if d < 0:
        raise ValueError("distance must be nonnegative")
    if d == 0.0:
        out = np.minimum(q, 1.0 - q)
        return float(out) if out.ndim == 0 else out
    interior = (q > 0.0) & (q < 1.0)
    qs = np.where(interior, q, 0.5)
    L = np.log((1.0 - qs) / qs)
    pe = qs * gaussian_tail(d / 2.0 - L / d) + (1.0 - qs) * gaussian_tail(d / 2.0 + L / d)
    out = np.where(interior, pe, 0.0)
    return float(out) if out.ndim == 0 else out


def exponential_rate_pe(q, theta0: float, theta1: float):
    """MAP error for a single observation of an exponential density with rate
    theta0 versus theta1, 0 < theta0 < theta1.

    The likelihood ratio is monotone, so the rule is a single threshold
    x0 = ln((1-q)theta1 / (q theta0)) / (theta1 - theta0); when the threshold
    is negative the rule always picks the first hypothesis and the error is
    1 - q.
    """
    if not (0.0 < theta0 < theta1):
        raise ValueError("need 0 < theta0 < theta1")
    q = np.asarray(q, dtype=float)
    if np.any((q < 0) | (q > 1)):
        raise ValueError("prior must lie in [0, 1]")
    interior = (q > 0.0) & (q < 1.0)
    qs = np.where(interior, q, 0.5)
    ratio = (1.0 - qs) * theta1 / (qs * theta0)
    x0 = np.log(ratio) / (theta1 - theta0)
    pe_thresh = qs * (1.0 - np.exp(-theta0 * x0)) + (1.0 - qs) * np.exp(-theta1 * x0)
    pe = np.where(x0 > 0.0, pe_thresh, 1.0 - qs)
    out = np.where(interior, pe, 0.0)
    return float(out) if out.ndim == 0 else out


def uniform_scale_pe(q, theta0: float, theta1: float, n: int):
    """MAP error for n iid draws from Uniform[0, theta], theta0 vs theta1.

    Any draw above theta0 settles the matter, so the error mass lives on
    [0, theta0]^n: pe = min{q, (1-q) * alpha_ratio} with the likelihood-ratio
    power alpha_ratio = (theta0/theta1)^n.  Coincident scales degenerate to
    min{q, 1-q}.
    """
    if not 0.0 < theta0 <= theta1:
        raise ValueError("need 0 < theta0 <= theta1")
    if n < 1:
        raise ValueError("need n >= 1")
    q = np.asarray(q, dtype=float)
    alpha_ratio = (theta0 / theta1) ** n
    out = np.minimum(q, (1.0 - q) * alpha_ratio)
    return float(out) if out.ndim == 0 else out


def uniform_location_pe(q, theta0: float, theta1: float, n: int):
    """MAP error for n iid draws from Uniform[theta, theta+1].

    With spacing delta = theta1 - theta0 in [0, 1), the hypotheses are
    confusable only when every draw lands in the overlap, an event of
    probability (1 - delta)^n, and there the posteriors are flat:
    pe = (1 - delta)^n * min{q, 1-q}.
    """
    spacing = theta1 - theta0
    if spacing < 0.0 or spacing >= 1.0:
        raise ValueError("need 0 <= theta1 - theta0 < 1")
    if n < 1:
        raise ValueError("need n >= 1")
    q = np.asarray(q, dtype=float)
    out = (1.0 - spacing) ** n * np.minimum(q, 1.0 - q)
    return float(out) if out.ndim == 0 else out


def _separation(theta0, theta1) -> float:
    a = np.atleast_1d(np.asarray(theta0, dtype=float))
    b = np.atleast_1d(np.asarray(theta1, dtype=float))
    return float(np.linalg.norm(b - a))


def gaussian_location_pe(q, theta0, theta1, n: int, sigma: float):
    """MAP error for n iid Gaussian draws with known scale sigma and mean
    theta0 vs theta1 (scalars or same-length vectors)."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    if n < 1:
        raise ValueError("need n >= 1")
    d = math.sqrt(n) * _separation(theta0, theta1) / sigma
    return binary_gaussian_error(q, d)


# ---------------------------------------------------------------------------
# local limits

def gaussian_location_limit(sigma: float) -> LocalErrorLimit:
    """Local limit of the Gaussian location model: contraction xi = n^(-1/2),
    pe_inf(theta, s) = Q(s/sigma), optimal prior identically 1/2."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    rate = RatePower(0.5, 1.0, "n")

    def pe_inf(theta, s):
        return gaussian_tail(np.asarray(s, dtype=float) / sigma)

    def pe_pair(theta, delta, q):
        return binary_gaussian_error(q, float(delta) / sigma)

    return LocalErrorLimit(pe_inf=pe_inf, rate=rate, pe_inf_halfprior=pe_inf,
                           optimal_q=lambda theta, s: 0.5, pe_pair=pe_pair)


def uniform_scale_limit() -> LocalErrorLimit:
    """Local limit of the uniform scale model: xi = 1/n,
    pe_inf(theta, s) = 1/(1 + e^(2s/theta)) at the optimizing prior, which is
    itself 1/(1 + e^(2s/theta)); the frozen-prior variant is e^(-2s/theta)/2."""
    rate = RatePower(1.0, 2.0, "n")

    def _check(theta):
        if not theta > 0:
            raise ValueError("theta must be positive")

    def pe_inf(theta, s):
        _check(theta)
        return 1.0 / (1.0 + np.exp(2.0 * np.asarray(s, dtype=float) / theta))

    def pe_half(theta, s):
        _check(theta)
        return 0.5 * np.exp(-2.0 * np.asarray(s, dtype=float) / theta)

    def optimal_q(theta, s):
        _check(theta)
        return 1.0 / (1.0 + math.exp(2.0 * s / theta))

    def pe_pair(theta, delta, q):
        _check(theta)
        q = np.asarray(q, dtype=float)
        out = np.minimum(q, (1.0 - q) * math.exp(-float(delta) / theta))
        return float(out) if out.ndim == 0 else out

    return LocalErrorLimit(pe_inf=pe_inf, rate=rate, pe_inf_halfprior=pe_half,
                           optimal_q=optimal_q, pe_pair=pe_pair)


def uniform_location_limit() -> LocalErrorLimit:
    """Local limit of the uniform location model: xi = 1/n,
    pe_inf(theta, s) = e^(-2s)/2, parameter-free."""
    rate = RatePower(1.0, 2.0, "n")

    def pe_inf(theta, s):
        return 0.5 * np.exp(-2.0 * np.asarray(s, dtype=float))

    def pe_pair(theta, delta, q):
        q = np.asarray(q, dtype=float)
        out = math.exp(-float(delta)) * np.minimum(q, 1.0 - q)
        return float(out) if out.ndim == 0 else out

    return LocalErrorLimit(pe_inf=pe_inf, rate=rate, pe_inf_halfprior=pe_inf,
                           optimal_q=lambda theta, s: 0.5, pe_pair=pe_pair)


def awgn_signal_limit(kind: str, *, pdot: float = None, n0: float = None,
                      power: float = None, pulse_width: float = None
                      ) -> LocalErrorLimit:
    """Local limits for estimating a parameter of a known waveform observed in
    white Gaussian noise of two-sided spectral density n0/2 over [0, T].

    kind "smooth": differentiable signal parameterization with derivative
    power pdot; the correlation decays quadratically, xi = T^(-1/2) and
    pe_inf(theta, s) = Q(sqrt(2*pdot/n0) * s).

    kind "rect": time-shift of a rectangular pulse of power ``power`` and
    duration pulse_width; the correlation decays linearly in the shift, which
    makes the exponent linear too, so xi = 1/T and
    pe_inf(theta, s) = Q(sqrt(2*power*s/(n0*pulse_width))).
    """
    if kind == "smooth":
        if pdot is None or n0 is None or not (pdot > 0 and n0 > 0):
            raise ValueError("smooth kind needs pdot > 0 and n0 > 0")
        coef = math.sqrt(2.0 * pdot / n0)
        rate = RatePower(0.5, 1.0, "T")

        def pe_inf(theta, s):
            return gaussian_tail(coef * np.asarray(s, dtype=float))

        def pe_pair(theta, delta, q):
            return binary_gaussian_error(q, coef * float(delta))

        return LocalErrorLimit(pe_inf=pe_inf, rate=rate,
                               pe_inf_halfprior=pe_inf,
                               optimal_q=lambda theta, s: 0.5, pe_pair=pe_pair)

    if kind == "rect":
        if power is None or n0 is None or pulse_width is None or \
                not (power > 0 and n0 > 0 and pulse_width > 0):
            raise ValueError("rect kind needs power, n0, pulse_width all > 0")
        scale = power / (n0 * pulse_width)
        rate = RatePower(1.0, 2.0, "T")

        def pe_inf(theta, s):
            return gaussian_tail(np.sqrt(2.0 * scale * np.asarray(s, dtype=float)))

        def pe_pair(theta, delta, q):
            return binary_gaussian_error(q, 2.0 * math.sqrt(scale * float(delta)))

        return LocalErrorLimit(pe_inf=pe_inf, rate=rate,
                               pe_inf_halfprior=pe_inf,
                               optimal_q=lambda theta, s: 0.5, pe_pair=pe_pair)

    raise ValueError(f"unknown waveform kind: {kind!r}")


def exp_family_limit(fisher: Callable[[float], float]) -> LocalErrorLimit:
    """Local limit for a smooth exponential family with Fisher information
    fisher(theta): xi = n^(-1/2), pe_inf(theta, s) = Q(s * sqrt(fisher(theta)))."""
    rate = RatePower(0.5, 1.0, "n")

    def _info(theta) -> float:
        info = float(fisher(float(theta)))
        if not info > 0:
            raise ValueError("Fisher information must be positive")
        return info

    def pe_inf(theta, s):
        return gaussian_tail(np.asarray(s, dtype=float) * math.sqrt(_info(theta)))

    def pe_pair(theta, delta, q):
        return binary_gaussian_error(q, float(delta) * math.sqrt(_info(theta)))

    return LocalErrorLimit(pe_inf=pe_inf, rate=rate, pe_inf_halfprior=pe_inf,
                           optimal_q=lambda theta, s: 0.5, pe_pair=pe_pair)


def fisher_from_log_partition(log_z: Callable[[float], float], theta: float,
                              h: float = 1e-3) -> float:
    """Fisher information of an exponential family from its log-normalizer:
    the curvature d^2 log Z / d theta^2, by central second differences at
    steps h and h/2 combined with one Richardson extrapolation
    (4*D(h/2) - D(h))/3, which cancels the leading h^2 error term."""
    if not h > 0:
        raise ValueError("h must be positive")

    def second_diff(step: float) -> float:
        return (log_z(theta + step) - 2.0 * log_z(theta) + log_z(theta - step)) / step ** 2

    d1 = second_diff(h)
    d2 = second_diff(h / 2.0)
    out = (4.0 * d2 - d1) / 3.0
    if not math.isfinite(out):
        raise ArithmeticError("log-partition evaluations were not finite near theta")
    return out


# ---------------------------------------------------------------------------
# Monte-Carlo verification path

@dataclass(frozen=True)
class PeEstimate:
    estimate: float
    half_width: float
    trials: int
    seed: int


class GaussianLocationSampler:
    def __init__(self, sigma: float = 1.0):
        if not sigma > 0:
            raise ValueError("sigma must be positive")
        self.sigma = sigma

    def sample(self, rng, theta, n, size):
        return rng.normal(theta, self.sigma, size=(size, n))

    def log_likelihood(self, x, theta):
        z = (x - theta) / self.sigma
        return -0.5 * np.sum(z * z, axis=1) - x.shape[1] * math.log(self.sigma)


class UniformScaleSampler:
    def sample(self, rng, theta, n, size):
        return rng.uniform(0.0, theta, size=(size, n))

    def log_likelihood(self, x, theta):
        inside = (x >= 0.0).all(axis=1) & (x <= theta).all(axis=1)
        return np.where(inside, -x.shape[1] * math.log(theta), -np.inf)


class UniformLocationSampler:
    def sample(self, rng, theta, n, size):
        return rng.uniform(theta, theta + 1.0, size=(size, n))

    def log_likelihood(self, x, theta):
        inside = (x >= theta).all(axis=1) & (x <= theta + 1.0).all(axis=1)
        return np.where(inside, 0.0, -np.inf)


class ExponentialRateSampler:
    def sample(self, rng, theta, n, size):
        return rng.exponential(1.0 / theta, size=(size, n))

    def log_likelihood(self, x, theta):
        return x.shape[1] * math.log(theta) - theta * np.sum(x, axis=1)


def monte_carlo_pe(sampler, q: float, theta0, theta1, n: int, trials: int,
                   seed: int) -> PeEstimate:
    """Estimate pe(q, theta0, theta1, n) by simulating the MAP rule.

    Draws the hypothesis with priors (q, 1-q), samples n observations from the
    true model, decides by comparing log q + log p(x|theta0) against
    log(1-q) + log p(x|theta1), and reports the empirical error rate with a
    95% binomial half-width.  Fully determined by ``seed``.
    """
    if trials < 10_000:
        raise ValueError("need at least 10^4 trials for a meaningful half-width")
    if not 0.0 <= q <= 1.0:
        raise ValueError("prior must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    is_h1 = rng.random(trials) >= q

    n_h0 = int((~is_h1).sum())
    n_h1 = trials - n_h0
    x = np.empty((trials, n), dtype=float)
    if n_h0:
        x[~is_h1] = sampler.sample(rng, theta0, n, n_h0)
    if n_h1:
        x[is_h1] = sampler.sample(rng, theta1, n, n_h1)

    log_q0 = math.log(q) if q > 0 else -math.inf
    log_q1 = math.log(1.0 - q) if q < 1 else -math.inf
    score0 = log_q0 + sampler.log_likelihood(x, theta0)
    score1 = log_q1 + sampler.log_likelihood(x, theta1)
    decide_h0 = score0 >= score1
    errors = int(np.count_nonzero(decide_h0 == is_h1))

    p_hat = errors / trials
    half_width = 1.96 * math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / trials)
    return PeEstimate(estimate=p_hat, half_width=half_width, trials=trials,
                      seed=seed)


# ---------------------------------------------------------------------------
# registry

def _symmetric_oracle(ordered_pe):
    """Wrap an orientation-specific pe(q, lo, hi, n) so the registry oracle
    accepts both orderings and coincident points."""

    def pe(q, theta0, theta1, n):
        q = np.asarray(q, dtype=float)
        if theta0 == theta1:
            out = np.minimum(q, 1.0 - q)
            return float(out) if out.ndim == 0 else out
        if theta0 < theta1:
            return ordered_pe(q, theta0, theta1, n)
        return ordered_pe(1.0 - q, theta1, theta0, n)

    return pe


def _make_exp_rate() -> Model:
    def ordered(q, t0, t1, n):
        if n != 1:
            raise ValueError("the exponential rate oracle is single-observation (n = 1)")
        return exponential_rate_pe(q, t0, t1)

    desc = ModelDescriptor(
        id="exp-rate", parameter_space=Interval(0.0, math.inf),
        notes="exponential density with rate theta, single observation")
    return Model(descriptor=desc, oracle=BinaryErrorOracle(_symmetric_oracle(ordered)),
                 sampler=ExponentialRateSampler())


def _make_uniform_scale() -> Model:
    def ordered(q, t0, t1, n):
        return uniform_scale_pe(q, t0, t1, n)

    desc = ModelDescriptor(
        id="uniform-scale", parameter_space=Interval(0.0, math.inf),
        notes="Uniform[0, theta]; contraction xi = 1/n")
    return Model(descriptor=desc, oracle=BinaryErrorOracle(_symmetric_oracle(ordered)),
                 limit=uniform_scale_limit(), sampler=UniformScaleSampler())


def _make_uniform_location() -> Model:
    def ordered(q, t0, t1, n):
        return uniform_location_pe(q, t0, t1, n)

    desc = ModelDescriptor(id="uniform-location",
                           parameter_space=Interval(-1e308, math.inf),
                           notes="Uniform[theta, theta+1]; contraction xi = 1/n")
    return Model(descriptor=desc, oracle=BinaryErrorOracle(_symmetric_oracle(ordered)),
                 limit=uniform_location_limit(), sampler=UniformLocationSampler())


def _make_gauss_location(sigma: float = 1.0) -> Model:
    if not sigma > 0:
        raise ValueError("sigma must be positive")

    def pe(q, theta0, theta1, n):
        # already symmetric: depends on the separation only, and the
        # closed form is invariant under (q, theta0) <-> (1-q, theta1)
        return gaussian_location_pe(q, theta0, theta1, n, sigma)

    desc = ModelDescriptor(
        id="gauss-location", parameter_space=Interval(-1e308, math.inf),
        notes=f"Gaussian location, sigma={sigma:g}; contraction xi = n^-0.5")
    return Model(descriptor=desc, oracle=BinaryErrorOracle(pe),
                 limit=gaussian_location_limit(sigma),
                 sampler=GaussianLocationSampler(sigma),
                 params={"sigma": sigma})


def _make_awgn_smooth(pdot: float = 1.0, n0: float = 1.0) -> Model:
    desc = ModelDescriptor(
        id="awgn-smooth", parameter_space=Interval(-1e308, math.inf),
        notes=f"smooth waveform in white noise, pdot={pdot:g}, n0={n0:g}")
    return Model(descriptor=desc,
                 limit=awgn_signal_limit("smooth", pdot=pdot, n0=n0),
                 params={"pdot": pdot, "n0": n0})


def _make_awgn_rect(power: float = 1.0, n0: float = 1.0,
                    pulse_width: float = 1.0) -> Model:
    desc = ModelDescriptor(
        id="awgn-rect", parameter_space=Interval(-1e308, math.inf),
        notes=f"rectangular pulse delay in white noise, power={power:g}, "
              f"n0={n0:g}, pulse_width={pulse_width:g}")
    return Model(descriptor=desc,
                 limit=awgn_signal_limit("rect", power=power, n0=n0,
                                         pulse_width=pulse_width),
                 params={"power": power, "n0": n0, "pulse_width": pulse_width})


def _make_exp_family(fisher: Callable[[float], float] = None,
                     sigma: float = 1.0, h: float = 1e-3) -> Model:
    # default family: Gaussian in its natural parameterization, whose
    # log-normalizer is theta^2 sigma^2 / 2; the Fisher information is then
    # computed numerically rather than assumed.
    if fisher is None:
        def log_z(theta):
            return 0.5 * theta * theta * sigma * sigma

        def fisher(theta):
            return fisher_from_log_partition(log_z, theta, h)

    desc = ModelDescriptor(
        id="exp-family", parameter_space=Interval(-1e308, math.inf),
        notes="smooth exponential family via its Fisher information")
    return Model(descriptor=desc, limit=exp_family_limit(fisher),
                 params={"sigma": sigma, "h": h})


def _make_nuisance_rotation(sigma: float = 1.0) -> Model:
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    desc = ModelDescriptor(
        id="nuisance-rotation", parameter_space=Interval(-1e308, math.inf),
        nuisance="second location coordinate",
        notes="2-D Gaussian location with an unknown nuisance coordinate; "
              "served by the rotation-transform bound")
    return Model(descriptor=desc, params={"sigma": sigma})


_FACTORIES = {
    "exp-rate": _make_exp_rate,
    "uniform-scale": _make_uniform_scale,
    "uniform-location": _make_uniform_location,
    "gauss-location": _make_gauss_location,
    "awgn-smooth": _make_awgn_smooth,
    "awgn-rect": _make_awgn_rect,
    "exp-family": _make_exp_family,
    "nuisance-rotation": _make_nuisance_rotation,
}

MODEL_IDS = tuple(sorted(_FACTORIES))


def get_model(model_id: str, **params) -> Model:
    """Build a registry model by id.  Unknown ids raise ValueError; unknown
    or invalid parameters raise whatever the factory raises."""
    try:
        factory = _FACTORIES[model_id]
    except KeyError:
        raise ValueError(f"unknown model id: {model_id!r} "
                         f"(known: {', '.join(MODEL_IDS)})") from None
    return factory(**params)
