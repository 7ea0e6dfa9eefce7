import numpy as np
import pytest

from zetalaw import (
    DomainError,
    ModalitySpec,
    ZetaLawParams,
    build_ground_truth,
    cca,
    contrast_decomposition,
    eigendecompose,
    fit_power_law,
    harmonic_partial_sum,
    sample_covariance,
    sample_multimodal,
    sample_two_class,
    whitened_operator,
)


class TestBuildGroundTruth:
    def test_population_separation_reference_value(self):
        model = build_ground_truth(10, ZetaLawParams(beta=1.0, gamma=1.0, c_d=1.0))
        assert model.delta_sq_pop == pytest.approx(2.9290, abs=5e-5)

    def test_zero_signal(self):
        model = build_ground_truth(8, ZetaLawParams(beta=1.0, gamma=1.0, c_d=0.0))
        assert model.delta_sq_pop == 0.0
        assert np.allclose(model.contrast, 0.0)

    def test_rotation_invariance(self):
        params = ZetaLawParams(beta=0.8, gamma=0.5, c_d=2.0)
        plain = build_ground_truth(30, params, rotate=False)
        rotated = build_ground_truth(30, params, rotate=True, seed=9)
        assert rotated.delta_sq_pop == plain.delta_sq_pop
        sigma = rotated.covariance()
        d = rotated.contrast
        assert float(d @ np.linalg.solve(sigma, d)) == pytest.approx(
            plain.delta_sq_pop, rel=1e-9
        )

    def test_construction_energies_are_exact(self):
        params = ZetaLawParams(beta=1.3, gamma=0.7, c_d=0.5)
        model = build_ground_truth(40, params, rotate=True, seed=3)
        spectrum = eigendecompose(model.covariance())
        deco = contrast_decomposition(model.contrast, spectrum)
        k = np.arange(1.0, 41.0)
        assert np.allclose(deco.energies, 0.5 * k**-1.3, rtol=1e-8)
        assert float(np.sum(deco.energies)) == pytest.approx(
            0.5 * harmonic_partial_sum(1.3, 40), rel=1e-12
        )

    def test_delta_sq_matches_energy_sum_to_1e12(self):
        params = ZetaLawParams(beta=1.0, gamma=1.0, c_d=1.0)
        model = build_ground_truth(25, params)
        direct = float(np.sum(model.alphas**2 / model.eigenvalues))
        assert abs(direct - model.delta_sq_pop) <= 1e-12

    def test_basis_is_orthonormal(self):
        model = build_ground_truth(15, ZetaLawParams(beta=1.0, gamma=1.0), rotate=True, seed=4)
        gram = model.basis.T @ model.basis
        assert np.max(np.abs(gram - np.eye(15))) <= 1e-10

    def test_dimension_validation(self):
        with pytest.raises(DomainError):
            build_ground_truth(1, ZetaLawParams(beta=1.0, gamma=1.0))


class TestSampleTwoClass:
    def test_empirical_means(self):
        params = ZetaLawParams(beta=1.0, gamma=1.0, c_d=1.0)
        model = build_ground_truth(10, params, rotate=True, seed=1)
        features, labels = sample_two_class(model, 100_000, 100_000, seed=2)
        controls = features[labels == 0]
        cases = features[labels == 1]
        assert np.max(np.abs(controls.mean(axis=0))) <= 0.02
        assert np.max(np.abs(cases.mean(axis=0) - model.contrast)) <= 0.02

    def test_single_draw_shapes(self):
        model = build_ground_truth(5, ZetaLawParams(beta=1.0, gamma=1.0))
        features, labels = sample_two_class(model, 1, 1, seed=0)
        assert features.shape == (2, 5)
        assert labels.tolist() == [0, 1]

    def test_bit_identical_for_fixed_seed(self):
        model = build_ground_truth(7, ZetaLawParams(beta=0.5, gamma=1.5), rotate=True, seed=5)
        a = sample_two_class(model, 10, 12, seed=42)
        b = sample_two_class(model, 10, 12, seed=42)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
        c = sample_two_class(model, 10, 12, seed=43)
        assert not np.array_equal(a[0], c[0])

    def test_covariance_recovery(self):
        params = ZetaLawParams(beta=1.0, gamma=1.0, c_d=1.0)
        model = build_ground_truth(6, params, rotate=True, seed=6)
        features, labels = sample_two_class(model, 50_000, 2, seed=7)
        controls = features[labels == 0]
        assert np.max(np.abs(sample_covariance(controls) - model.covariance())) <= 0.03

    def test_class_size_validation(self):
        model = build_ground_truth(4, ZetaLawParams(beta=1.0, gamma=1.0))
        with pytest.raises(DomainError):
            sample_two_class(model, 0, 5)


class TestSpectralRecovery:
    def test_eigenvalue_slope_recovered_across_seeds(self):
        params = ZetaLawParams(beta=1.0, gamma=1.0, c_d=1.0)
        hits = 0
        for seed in range(20):
            model = build_ground_truth(50, params, rotate=True, seed=seed)
            features, labels = sample_two_class(model, 10_000, 2, seed=seed)
            spectrum = eigendecompose(sample_covariance(features[labels == 0]))
            slope = fit_power_law(spectrum.eigenvalues, (1, 15)).slope
            if abs(slope - 1.0) <= 0.1:
                hits += 1
        assert hits >= 18


class TestSampleMultimodal:
    def test_noiseless_sharing_gives_unit_correlations(self):
        sample = sample_multimodal(
            2, [ModalitySpec(6, 0.0, 1.0), ModalitySpec(5, 0.0, 2.0)], n=300, seed=1
        )
        x, y = sample.datasets
        s = whitened_operator(x, y, reg=1e-10).singular_values
        assert np.all(s[:2] >= 1.0 - 1e-4)
        assert np.all(s[2:] <= 1e-4)
        assert sample.population_correlations[(0, 1)] == pytest.approx(1.0)

    def test_unit_loading_unit_noise_correlation_half(self):
        specs = [ModalitySpec(4, 1.0, 1.0), ModalitySpec(3, 1.0, 1.0)]
        sample = sample_multimodal(1, specs, n=10_000, seed=2)
        assert sample.population_correlations[(0, 1)] == pytest.approx(0.5)
        x, y = sample.datasets
        result = cca(x, y, k=1, reg=1e-9)
        assert result.correlations[0] == pytest.approx(0.5, abs=0.03)

    def test_rank_structure(self):
        specs = [ModalitySpec(10, 0.05, 1.0), ModalitySpec(8, 0.05, 1.0)]
        sample = sample_multimodal(3, specs, n=5000, seed=3)
        s = whitened_operator(*sample.datasets, reg=1e-9).singular_values
        assert np.sum(s > 0.8) == 3

    def test_deterministic(self):
        specs = [(4, 0.5, 1.0), (4, 0.5, 1.0)]
        a = sample_multimodal(2, specs, n=50, seed=9)
        b = sample_multimodal(2, specs, n=50, seed=9)
        for da, db in zip(a.datasets, b.datasets):
            assert np.array_equal(da, db)

    def test_dimension_below_rank_is_rejected(self):
        with pytest.raises(DomainError):
            sample_multimodal(4, [(3, 1.0, 1.0), (5, 1.0, 1.0)], n=10)

    def test_modality_spec_validation(self):
        with pytest.raises(DomainError):
            ModalitySpec(0, 1.0, 1.0)
        with pytest.raises(DomainError):
            ModalitySpec(3, 0.0, 0.0)
        with pytest.raises(DomainError):
            ModalitySpec(3, -1.0, 1.0)
