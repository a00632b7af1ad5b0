"""The brute-force verification suite itself."""

import math

import pytest

from minimaxlb import verify


class TestSimplexInfimum:
    def test_equal_pair(self):
        rep = verify.check_simplex_infimum((1.0, 1.0))
        assert rep.passed
        assert rep.max_abs_error < 1e-6

    def test_increasing_triple(self):
        # worst-case weighted ratio bottoms out at the proportional split
        rep = verify.check_simplex_infimum((1.0, 2.0, 3.0))
        assert rep.passed

    def test_rejects_unsupported_dimension(self):
        with pytest.raises(ValueError):
            verify.check_simplex_infimum((1.0, 1.0, 1.0, 1.0))

    def test_rejects_nonpositive_masses(self):
        with pytest.raises(ValueError):
            verify.check_simplex_infimum((0.0, 1.0))


class TestTwoPointQuadratic:
    def test_balanced(self):
        rep = verify.check_two_point_quadratic(0.5, 1.0, 1.0, 0.0, 1.0)
        assert rep.passed
        assert rep.max_abs_error < 1e-8

    def test_one_sided_mass(self):
        rep = verify.check_two_point_quadratic(0.5, 1.0, 0.0, 0.0, 1.0)
        assert rep.passed

    def test_skewed(self):
        rep = verify.check_two_point_quadratic(0.2, 1.7, 0.4, -1.0, 2.5)
        assert rep.passed


class TestThreePointQuadratic:
    def test_symmetric_masses_center_the_minimizer(self):
        rep = verify.check_three_point_quadratic(1.0, 2.0, 1.0, 0.5, 0.7)
        assert rep.passed

    def test_no_center_mass(self):
        rep = verify.check_three_point_quadratic(1.0, 0.0, 1.0, 0.0, 1.0)
        assert rep.passed

    def test_random_shape(self):
        rep = verify.check_three_point_quadratic(0.3, 1.1, 0.6, 2.0, 0.4)
        assert rep.passed


class TestSplitChain:
    def test_equal_masses(self):
        rep = verify.check_split_chain(1.0, 1.0, 1.0)
        assert rep.passed
        assert rep.max_abs_error <= 1e-12

    def test_missing_outer_mass(self):
        rep = verify.check_split_chain(1.0, 1.0, 0.0)
        assert rep.passed

    def test_violation_function_nonnegative(self):
        assert verify._chain_violation(0.2, 0.7, 0.1) >= 0.0


class TestCorrelationExpansion:
    def test_self_correlation_is_one(self):
        # trapezoid rule is spectrally accurate on a full period
        corr = verify._sinusoid_correlation(0.3, 0.0)
        assert abs(corr - 1.0) < 1e-12

    def test_matches_cosine_of_phase_offset(self):
        for delta in (0.05, 0.25, 1.0):
            corr = verify._sinusoid_correlation(0.1, delta)
            assert abs(corr - math.cos(delta)) < 1e-9

    def test_check_passes(self):
        rep = verify.check_correlation_expansion()
        assert rep.passed


class TestDefaultSuite:
    def test_all_checks_pass(self):
        reports = verify.run_default_suite()
        assert reports
        for rep in reports:
            assert rep.passed, rep.check_id

    def test_expected_check_ids(self):
        ids = [rep.check_id for rep in verify.run_default_suite()]
        assert "simplex-infimum-exact" in ids
        assert "two-point-quadratic-random" in ids
        assert "split-chain-random" in ids

    def test_deterministic_for_fixed_seed(self):
        a = verify.run_default_suite(seed=5)
        b = verify.run_default_suite(seed=5)
        assert [r.max_abs_error for r in a] == [r.max_abs_error for r in b]
