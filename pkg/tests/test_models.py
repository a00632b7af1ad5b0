"""Error oracles, local limits, samplers, and the model registry."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from minimaxlb import models
from minimaxlb.numerics import gaussian_tail


class TestBinaryGaussianError:
    def test_half_prior_is_tail(self):
        for d in (0.5, 1.0, 2.0, 4.0):
            assert abs(models.binary_gaussian_error(0.5, d)
                       - gaussian_tail(d / 2.0)) < 1e-14

    def test_matches_oracle_formula(self):
        for q in (0.1, 0.3, 0.5, 0.8):
            for d in (0.2, 1.0, 3.0):
                assert abs(models.binary_gaussian_error(q, d)
                           - oracles.gauss_pe(q, d)) < 1e-12

    def test_degenerate_priors(self):
        assert models.binary_gaussian_error(0.0, 1.0) == 0.0
        assert models.binary_gaussian_error(1.0, 1.0) == 0.0

    def test_zero_distance(self):
        assert models.binary_gaussian_error(0.3, 0.0) == pytest.approx(0.3)

    def test_negative_distance_rejected(self):
        with pytest.raises(ValueError):
            models.binary_gaussian_error(0.5, -1.0)

    def test_vectorized_over_prior(self):
        out = models.binary_gaussian_error(np.array([0.0, 0.5, 1.0]), 2.0)
        assert out.shape == (3,)
        assert out[0] == 0.0 and out[2] == 0.0
        assert abs(out[1] - gaussian_tail(1.0)) < 1e-14


class TestExponentialRatePe:
    def test_maximum_over_prior(self):
        # stationary prior and value are algebraic in the golden ratio
        x, v = oracles.brute_max_1d(
            lambda q: models.exponential_rate_pe(q, 1.0, 2.0), 1e-6, 1 - 1e-6)
        assert abs(v - oracles.FROZEN["exp_rate_max_pe"]) < 1e-10
        assert abs(x - oracles.FROZEN["exp_rate_argmax_q"]) < 1e-5

    def test_half_prior_exact(self):
        assert models.exponential_rate_pe(0.5, 1.0, 2.0) == 0.375

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            models.exponential_rate_pe(0.5, 2.0, 1.0)
        with pytest.raises(ValueError):
            models.exponential_rate_pe(0.5, -1.0, 2.0)
        with pytest.raises(ValueError):
            models.exponential_rate_pe(1.5, 1.0, 2.0)


class TestClosedFormPe:
    def test_uniform_scale(self):
        # min of the prior mass and the dominated-likelihood mass
        assert models.uniform_scale_pe(0.4, 1.0, 2.0, 1) == \
            pytest.approx(min(0.4, 0.6 * 0.5))
        assert models.uniform_scale_pe(0.5, 1.0, 1.1, 20) == \
            pytest.approx(0.5 * (1.0 / 1.1) ** 20)

    def test_uniform_location(self):
        assert models.uniform_location_pe(0.5, 0.0, 0.25, 2) == \
            pytest.approx(0.75 ** 2 * 0.5)
        with pytest.raises(ValueError):
            models.uniform_location_pe(0.5, 0.0, 1.5, 1)

    def test_gaussian_location_reduces_to_tail(self):
        # n observations collapse to one test at distance sqrt(n) |delta|
        val = models.gaussian_location_pe(0.5, 0.0, 0.1, 400, 1.0)
        assert val == gaussian_tail(math.sqrt(400) * 0.1 / 2.0)


class TestRegistry:
    def test_ids(self):
        for mid in ("gauss-location", "uniform-scale", "uniform-location",
                    "exp-rate", "awgn-smooth", "awgn-rect", "exp-family",
                    "nuisance-rotation"):
            assert mid in models.MODEL_IDS

    def test_unknown_id(self):
        with pytest.raises(ValueError, match="unknown model id"):
            models.get_model("no-such-model")

    def test_exp_rate_single_observation(self):
        model = models.get_model("exp-rate")
        with pytest.raises(ValueError, match="single-observation"):
            model.oracle.pe(0.5, 1.0, 2.0, 2)

    def test_oracles_accept_swapped_arguments(self):
        for mid in ("exp-rate", "uniform-scale", "uniform-location",
                    "gauss-location"):
            pe = models.get_model(mid).oracle.pe
            assert pe(0.3, 1.0, 1.5, 1) == pytest.approx(
                pe(0.7, 1.5, 1.0, 1), abs=1e-14)

    def test_descriptor_notes_nuisance(self):
        model = models.get_model("nuisance-rotation")
        assert model.oracle is None
        assert model.descriptor.nuisance is not None


class TestLocalLimits:
    def test_gauss(self):
        lim = models.get_model("gauss-location").limit
        assert abs(lim.pe_inf(0.0, 1.3) - gaussian_tail(1.3)) < 1e-14
        assert lim.optimal_q(0.0, 1.3) == 0.5
        assert abs(lim.pe_pair(0.0, 2.0, 0.5) - gaussian_tail(1.0)) < 1e-14
        assert lim.rate.variable == "n" and lim.rate.xi_exponent == 0.5

    def test_gauss_sigma_scaling(self):
        lim = models.get_model("gauss-location", sigma=2.0).limit
        assert abs(lim.pe_inf(0.0, 1.0) - gaussian_tail(0.5)) < 1e-14

    def test_uniform_scale(self):
        lim = models.get_model("uniform-scale").limit
        s, theta = 0.7, 1.0
        expect = 1.0 / (1.0 + math.exp(2.0 * s / theta))
        assert abs(lim.pe_inf(theta, s) - expect) < 1e-14
        assert abs(lim.optimal_q(theta, s) - expect) < 1e-14
        assert abs(lim.pe_inf_halfprior(theta, s)
                   - 0.5 * math.exp(-2.0 * s / theta)) < 1e-14
        assert abs(lim.pe_pair(theta, 1.4, 0.25)
                   - min(0.25, 0.75 * math.exp(-1.4))) < 1e-14
        assert lim.rate.zeta_exponent == 2.0

    def test_uniform_scale_rejects_nonpositive_theta(self):
        lim = models.get_model("uniform-scale").limit
        with pytest.raises(ValueError):
            lim.pe_inf(0.0, 1.0)

    def test_uniform_location(self):
        lim = models.get_model("uniform-location").limit
        assert abs(lim.pe_inf(0.0, 1.0) - 0.5 * math.exp(-2.0)) < 1e-14
        assert abs(lim.pe_pair(0.0, 1.0, 0.3)
                   - 0.3 * math.exp(-1.0)) < 1e-14

    def test_awgn_families(self):
        smooth = models.get_model("awgn-smooth").limit
        assert abs(smooth.pe_inf(0.0, 1.0)
                   - gaussian_tail(math.sqrt(2.0))) < 1e-14
        assert smooth.rate.variable == "T"
        rect = models.get_model("awgn-rect").limit
        assert abs(rect.pe_inf(0.0, 2.0) - gaussian_tail(2.0)) < 1e-14
        assert rect.rate.zeta_exponent == 2.0

    def test_awgn_unknown_kind(self):
        with pytest.raises(ValueError):
            models.awgn_signal_limit(kind="triangular")

    def test_exp_family_default_matches_gauss(self):
        lim = models.get_model("exp-family").limit
        assert abs(lim.pe_inf(1.0, 1.3) - gaussian_tail(1.3)) < 1e-6

    def test_exp_family_nonpositive_information(self):
        lim = models.exp_family_limit(lambda theta: -1.0)
        with pytest.raises(ValueError, match="Fisher information"):
            lim.pe_inf(1.0, 1.0)


class TestFisher:
    def test_quadratic_log_partition(self):
        val = models.fisher_from_log_partition(lambda t: 0.5 * t * t, -1.0)
        assert abs(val - 1.0) < 1e-6

    def test_quartic_log_partition(self):
        val = models.fisher_from_log_partition(lambda t: t ** 4, 1.5)
        assert abs(val - 27.0) < 1e-5

    def test_scaled(self):
        val = models.fisher_from_log_partition(lambda t: 2.0 * t * t, 0.3)
        assert abs(val - 4.0) < 1e-6

    def test_bad_step(self):
        with pytest.raises(ValueError):
            models.fisher_from_log_partition(lambda t: t * t, 0.0, h=0.0)

    def test_non_finite_values(self):
        with pytest.raises(ArithmeticError):
            models.fisher_from_log_partition(lambda t: float("nan"), 0.0)


_PAIRS = st.tuples(st.floats(0.2, 2.0), st.floats(0.01, 0.8))
_ORACLE_IDS = ("exp-rate", "uniform-scale", "uniform-location",
               "gauss-location")


@pytest.mark.parametrize("model_id", _ORACLE_IDS)
class TestOracleProperties:
    @settings(max_examples=60, derandomize=True)
    @given(pair=_PAIRS, q1=st.floats(0.01, 0.99), q2=st.floats(0.01, 0.99),
           lam=st.floats(0.0, 1.0))
    def test_concave_in_prior(self, model_id, pair, q1, q2, lam):
        pe = models.get_model(model_id).oracle.pe
        base, delta = pair
        t0, t1 = base, base + delta
        mix = pe(lam * q1 + (1 - lam) * q2, t0, t1, 1)
        assert lam * pe(q1, t0, t1, 1) + (1 - lam) * pe(q2, t0, t1, 1) \
            <= mix + 1e-12

    @settings(max_examples=60, derandomize=True)
    @given(pair=_PAIRS, q=st.floats(0.001, 0.999))
    def test_swap_symmetry(self, model_id, pair, q):
        pe = models.get_model(model_id).oracle.pe
        base, delta = pair
        assert pe(q, base, base + delta, 1) == pytest.approx(
            pe(1.0 - q, base + delta, base, 1), abs=1e-13)

    @settings(max_examples=60, derandomize=True)
    @given(pair=_PAIRS, q=st.floats(0.001, 0.999))
    def test_bounded_by_trivial_test(self, model_id, pair, q):
        pe = models.get_model(model_id).oracle.pe
        base, delta = pair
        assert pe(q, base, base + delta, 1) <= min(q, 1.0 - q) + 1e-12

    def test_zero_at_prior_endpoints(self, model_id):
        pe = models.get_model(model_id).oracle.pe
        assert pe(0.0, 1.0, 1.5, 1) == 0.0
        assert pe(1.0, 1.0, 1.5, 1) == 0.0


class TestMonteCarlo:
    def test_gauss_agrees_with_closed_form(self):
        est = models.monte_carlo_pe(models.GaussianLocationSampler(1.0),
                                    0.5, 0.0, 1.0, 16, 100_000, 271828)
        assert abs(est.estimate - oracles.FROZEN["mc_gauss_pe"]) \
            <= 3.0 * est.half_width

    def test_uniform_agrees_with_closed_form(self):
        est = models.monte_carlo_pe(models.UniformScaleSampler(),
                                    0.5, 1.0, 1.1, 20, 100_000, 271828)
        assert abs(est.estimate - oracles.FROZEN["mc_uniform_pe"]) \
            <= 3.0 * est.half_width

    def test_exp_rate_sampler(self):
        est = models.monte_carlo_pe(models.ExponentialRateSampler(),
                                    0.5, 1.0, 2.0, 1, 100_000, 7)
        assert abs(est.estimate - 0.375) <= 3.0 * est.half_width

    def test_uniform_location_sampler(self):
        est = models.monte_carlo_pe(models.UniformLocationSampler(),
                                    0.5, 0.0, 0.25, 2, 100_000, 7)
        assert abs(est.estimate - 0.75 ** 2 * 0.5) <= 3.0 * est.half_width

    def test_reproducible(self):
        args = (models.GaussianLocationSampler(1.0), 0.4, 0.0, 0.8, 4)
        a = models.monte_carlo_pe(*args, 20_000, 99)
        b = models.monte_carlo_pe(*args, 20_000, 99)
        assert a.estimate == b.estimate

    def test_requires_enough_trials(self):
        with pytest.raises(ValueError):
            models.monte_carlo_pe(models.GaussianLocationSampler(1.0),
                                  0.5, 0.0, 1.0, 1, 100, 1)
