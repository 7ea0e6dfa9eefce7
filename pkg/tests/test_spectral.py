import math

import numpy as np
import pytest

from zetalaw import (
    DataError,
    DomainError,
    EigenSpectrum,
    effective_rank,
    eigendecompose,
    fit_power_law,
    identifiable_mode_count,
    operator_error_bound,
    sample_covariance,
)


def _random_orthogonal(rng, p):
    q, r = np.linalg.qr(rng.standard_normal((p, p)))
    return q * np.sign(np.diag(r))


def _operator_norm(a):
    return float(np.max(np.abs(np.linalg.eigvalsh((a + a.T) / 2.0))))


class TestSampleCovariance:
    def test_two_points_hand_computed(self):
        sigma = sample_covariance([[0.0, 0.0], [2.0, 0.0]])
        assert np.allclose(sigma, [[2.0, 0.0], [0.0, 0.0]])

    def test_constant_data(self):
        sigma = sample_covariance(np.full((10, 3), 7.0))
        assert np.allclose(sigma, 0.0)

    def test_duplicated_feature_is_rank_deficient(self):
        rng = np.random.default_rng(0)
        x = rng.normal(size=(50, 3))
        x = np.column_stack([x, x[:, 0]])
        sigma = sample_covariance(x)
        assert np.allclose(sigma[0], sigma[3])
        assert np.allclose(sigma[:, 0], sigma[:, 3])
        assert np.min(np.linalg.eigvalsh(sigma)) == pytest.approx(0.0, abs=1e-12)

    def test_validation(self):
        with pytest.raises(DomainError):
            sample_covariance([[1.0, 2.0]])
        with pytest.raises(DataError):
            sample_covariance([[1.0, 2.0], [math.inf, 0.0]])

    def test_psd_and_symmetric(self):
        rng = np.random.default_rng(5)
        sigma = sample_covariance(rng.normal(size=(40, 8)))
        assert np.allclose(sigma, sigma.T, atol=1e-12)
        assert np.min(np.linalg.eigvalsh(sigma)) >= -1e-12


class TestEigendecompose:
    def test_identity(self):
        spec = eigendecompose(np.eye(3))
        assert np.allclose(spec.eigenvalues, 1.0)

    def test_diagonal(self):
        spec = eigendecompose(np.diag([4.0, 1.0]))
        assert np.allclose(spec.eigenvalues, [4.0, 1.0])
        assert np.allclose(np.abs(spec.eigenvectors), np.eye(2))
        # sign convention: largest-magnitude component positive
        assert spec.eigenvectors[0, 0] > 0 and spec.eigenvectors[1, 1] > 0

    def test_two_by_two_hand_computed(self):
        spec = eigendecompose([[2.0, 1.0], [1.0, 2.0]])
        assert np.allclose(spec.eigenvalues, [3.0, 1.0])

    @pytest.mark.parametrize("seed", range(5))
    def test_residual_and_reconstruction(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=(12, 12))
        sigma = (a + a.T) / 2.0
        spec = eigendecompose(sigma)
        top = max(1.0, abs(spec.eigenvalues[0]))
        for k in range(12):
            residual = sigma @ spec.eigenvectors[:, k] - spec.eigenvalues[k] * spec.eigenvectors[:, k]
            assert np.linalg.norm(residual) <= 1e-8 * top
        recon = (spec.eigenvectors * spec.eigenvalues) @ spec.eigenvectors.T
        assert _operator_norm(recon - sigma) <= 1e-8 * top
        gram = spec.eigenvectors.T @ spec.eigenvectors
        assert np.max(np.abs(gram - np.eye(12))) <= 1e-8

    def test_non_square(self):
        with pytest.raises(DomainError):
            eigendecompose(np.ones((2, 3)))

    def test_asymmetric(self):
        with pytest.raises(DomainError):
            eigendecompose([[1.0, 1.0], [0.0, 1.0]])

    def test_descending_order(self):
        rng = np.random.default_rng(2)
        a = rng.normal(size=(9, 9))
        spec = eigendecompose((a + a.T) / 2.0)
        assert np.all(np.diff(spec.eigenvalues) <= 0)


class TestEffectiveRank:
    def test_identity(self):
        assert effective_rank(eigendecompose(np.eye(10))) == pytest.approx(10.0)

    def test_hand_computed(self):
        spec = EigenSpectrum(
            eigenvalues=np.array([4.0, 1.0, 1.0, 1.0, 1.0]), eigenvectors=np.eye(5)
        )
        assert effective_rank(spec) == pytest.approx(2.0)

    def test_rank_one_spike(self):
        spec = EigenSpectrum(
            eigenvalues=np.array([3.0, 0.0, 0.0]), eigenvectors=np.eye(3)
        )
        assert effective_rank(spec) == pytest.approx(1.0)

    def test_scale_invariance(self):
        rng = np.random.default_rng(8)
        sigma = sample_covariance(rng.normal(size=(60, 7)))
        base = effective_rank(eigendecompose(sigma))
        for a in (0.01, 3.0, 1e4):
            assert effective_rank(eigendecompose(a * sigma)) == pytest.approx(base, rel=1e-10)

    def test_zero_spectrum(self):
        with pytest.raises(DomainError):
            effective_rank(
                EigenSpectrum(eigenvalues=np.zeros(3), eigenvectors=np.eye(3))
            )


class TestOperatorErrorBound:
    def test_identity_substitution(self):
        p = 6
        spec = eigendecompose(np.eye(p))
        bound = operator_error_bound(spec, n=p, delta=math.exp(-p), c=1.0)
        assert bound == pytest.approx(math.sqrt(2.0) + 2.0, rel=1e-12)

    def test_decreasing_in_n(self):
        spec = eigendecompose(np.diag([3.0, 1.0, 0.5]))
        values = [operator_error_bound(spec, n, 0.05) for n in (10, 100, 10_000, 10**8)]
        assert all(b > a for a, b in zip(values[1:], values))
        assert values[-1] < 1e-3

    def test_linear_in_c(self):
        spec = eigendecompose(np.diag([2.0, 1.0]))
        one = operator_error_bound(spec, 50, 0.1, c=1.0)
        two = operator_error_bound(spec, 50, 0.1, c=2.0)
        assert two == pytest.approx(2.0 * one, rel=1e-12)

    def test_domain(self):
        spec = eigendecompose(np.eye(2))
        with pytest.raises(DomainError):
            operator_error_bound(spec, 0, 0.05)
        with pytest.raises(DomainError):
            operator_error_bound(spec, 10, 1.0)


class TestIdentifiableModeCount:
    def test_zero_error_counts_separated_leaders(self):
        spec = EigenSpectrum(
            eigenvalues=np.array([5.0, 3.0, 3.0, 1.0]), eigenvectors=np.eye(4)
        )
        assert identifiable_mode_count(spec, 0.0) == 1

    def test_gap_comparison_hand_computed(self):
        spec = EigenSpectrum(
            eigenvalues=np.array([10.0, 5.0, 4.9, 1.0]), eigenvectors=np.eye(4)
        )
        assert identifiable_mode_count(spec, 0.5, safety=0.5) == 1

    def test_tied_block_is_never_identifiable(self):
        spec = EigenSpectrum(
            eigenvalues=np.full(5, 2.0), eigenvectors=np.eye(5)
        )
        assert identifiable_mode_count(spec, 0.1) == 0
        assert identifiable_mode_count(spec, 1e-12) == 0

    def test_all_separated(self):
        spec = EigenSpectrum(
            eigenvalues=np.array([8.0, 4.0, 2.0]), eigenvectors=np.eye(3)
        )
        assert identifiable_mode_count(spec, 0.0) == 3
        assert identifiable_mode_count(spec, 0.9, safety=1.0) == 3

    def test_domain(self):
        spec = eigendecompose(np.eye(2))
        with pytest.raises(DomainError):
            identifiable_mode_count(spec, -0.1)
        with pytest.raises(DomainError):
            identifiable_mode_count(spec, 0.1, safety=0.0)


class TestFitPowerLaw:
    def test_exact_power_law(self):
        series = np.arange(1.0, 51.0) ** -2.0
        fit = fit_power_law(series, (1, 50))
        assert fit.slope == pytest.approx(2.0, abs=1e-12)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_scale_enters_intercept_only(self):
        series = 3.0 * np.arange(1.0, 31.0) ** -1.0
        fit = fit_power_law(series, (1, 30))
        assert fit.slope == pytest.approx(1.0, abs=1e-12)
        assert fit.log_intercept == pytest.approx(math.log(3.0), abs=1e-12)

    def test_noisy_slope_recovery(self):
        # lognormal perturbation of k**-1.5; the mean fitted slope over
        # seeds recovers the exponent
        slopes = []
        for seed in range(20):
            rng = np.random.default_rng(seed)
            series = np.arange(1.0, 41.0) ** -1.5 * np.exp(rng.normal(0, 0.05, 40))
            slopes.append(fit_power_law(series, (1, 40)).slope)
        assert np.mean(slopes) == pytest.approx(1.5, abs=0.05)

    def test_rejects_non_positive_values(self):
        with pytest.raises(DomainError):
            fit_power_law([1.0, 0.5, 0.0, 0.2], (1, 4))

    def test_range_validation(self):
        series = np.arange(1.0, 11.0) ** -1.0
        with pytest.raises(DomainError):
            fit_power_law(series, (1, 2))  # fewer than 3 modes
        with pytest.raises(DomainError):
            fit_power_law(series, (0, 5))
        with pytest.raises(DomainError):
            fit_power_law(series, (3, 11))


class TestWeylInequality:
    def test_hundred_random_perturbations(self):
        rng = np.random.default_rng(2024)
        for _ in range(100):
            p = int(rng.integers(3, 20))
            a = rng.normal(size=(p, p))
            sigma = (a + a.T) / 2.0
            e = rng.normal(size=(p, p))
            e = (e + e.T) / 2.0
            e *= rng.uniform(0.01, 2.0) / max(_operator_norm(e), 1e-12)
            lam = eigendecompose(sigma).eigenvalues
            lam_pert = eigendecompose(sigma + e).eigenvalues
            assert np.all(np.abs(lam_pert - lam) <= _operator_norm(e) + 1e-8)


class TestDavisKahan:
    def test_hundred_random_perturbations(self):
        rng = np.random.default_rng(77)
        for _ in range(100):
            p = int(rng.integers(3, 15))
            # simple spectrum with strictly positive adjacent gaps
            gaps = rng.uniform(0.2, 2.0, size=p)
            lam = np.cumsum(gaps)[::-1].copy()
            u = _random_orthogonal(rng, p)
            sigma = (u * lam) @ u.T
            min_gap = float(np.min(np.abs(np.diff(lam))))
            e = rng.normal(size=(p, p))
            e = (e + e.T) / 2.0
            e *= rng.uniform(0.05, 0.45) * min_gap / _operator_norm(e)
            e_norm = _operator_norm(e)
            spec_true = eigendecompose(sigma)
            spec_pert = eigendecompose(sigma + e)
            for k in range(p):
                cos = abs(
                    float(spec_true.eigenvectors[:, k] @ spec_pert.eigenvectors[:, k])
                )
                sin_theta = math.sqrt(max(0.0, 1.0 - min(1.0, cos) ** 2))
                delta_k = spec_true.gap(k + 1)
                assert sin_theta <= 2.0 * e_norm / delta_k + 1e-8


class TestCovarianceConcentration:
    def test_error_below_bound_in_almost_all_seeds(self):
        p, n = 20, 10_000
        lam = np.arange(1.0, p + 1.0) ** -1.0
        rng0 = np.random.default_rng(99)
        u = _random_orthogonal(rng0, p)
        sigma = (u * lam) @ u.T
        sqrt_sigma = (u * np.sqrt(lam)) @ u.T
        bound = operator_error_bound(eigendecompose(sigma), n, delta=0.01, c=2.0)
        failures = 0
        for seed in range(100):
            rng = np.random.default_rng(seed)
            x = rng.standard_normal((n, p)) @ sqrt_sigma
            err = _operator_norm(sample_covariance(x) - sigma)
            if err > bound:
                failures += 1
        assert failures <= 1
