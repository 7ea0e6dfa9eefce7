"""Synthetic data with known spectral ground truth.

Generators for two-class Gaussian data whose covariance eigenvalues decay
as ``k**-gamma`` and whose class contrast carries per-mode energy exactly
``c_d * k**-beta``, and for multimodal datasets sharing a low-rank latent
factor.  Every generator is a pure function of its parameters and seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .rng import STREAM_MULTIMODAL, STREAM_ROTATION, STREAM_SIMULATE, derive_rng
from .zeta import ZetaLawParams, harmonic_partial_sum


@dataclass(frozen=True)
class GroundTruthModel:
    """Population model with prescribed spectral decay.

    ``eigenvalues[k-1] = k**-gamma``; the contrast's projections satisfy
    ``alpha_k**2 / lambda_k = c_d * k**-beta`` exactly by construction, so
    the population squared separation is ``c_d * H_p^(beta)``.
    """

    eigenvalues: np.ndarray
    basis: np.ndarray
    alphas: np.ndarray
    contrast: np.ndarray
    params: ZetaLawParams
    delta_sq_pop: float

    @property
    def dimension(self) -> int:
        return self.eigenvalues.size

    def covariance(self) -> np.ndarray:
        u = self.basis
        return (u * self.eigenvalues) @ u.T


@dataclass(frozen=True)
class ModalitySpec:
    """One modality of a shared-factor model: output dimension, additive
    noise scale, and loading scale on the shared latent."""

    dimension: int
    noise_scale: float
    loading_scale: float

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise DomainError(f"modality dimension must be >= 1, got {self.dimension}")
        if self.noise_scale < 0 or self.loading_scale < 0:
            raise DomainError("noise_scale and loading_scale must be non-negative")
        if self.noise_scale == 0 and self.loading_scale == 0:
            raise DomainError("a modality needs a non-zero noise or loading scale")

    @property
    def attenuation(self) -> float:
        """Correlation between the latent factor and its noisy projection."""
        denom = math.sqrt(self.loading_scale ** 2 + self.noise_scale ** 2)
        return self.loading_scale / denom


@dataclass(frozen=True)
class MultimodalSample:
    """Paired modality matrices plus the analytic shared-factor strengths."""

    datasets: list[np.ndarray]
    shared_rank: int
    specs: list[ModalitySpec]
    population_correlations: dict[tuple[int, int], float]


def build_ground_truth(
    p: int, params: ZetaLawParams, rotate: bool = False, seed: int = 0
) -> GroundTruthModel:
    """Construct the population model for the given decay parameters.

    ``rotate=True`` replaces the identity eigenbasis with a seeded
    Haar-random rotation; none of the spectral quantities depend on it.
    All contrast projections are taken positive.
    """
    if p < 2:
        raise DomainError(f"dimension must be at least 2, got {p}")
    k = np.arange(1, p + 1, dtype=float)
    eigenvalues = k ** -params.gamma
    alphas = np.sqrt(params.c_d * k ** -params.beta * eigenvalues)
    basis = _haar_rotation(p, seed) if rotate else np.eye(p)
    contrast = basis @ alphas
    return GroundTruthModel(
        eigenvalues=eigenvalues,
        basis=basis,
        alphas=alphas,
        contrast=contrast,
        params=params,
        delta_sq_pop=params.c_d * harmonic_partial_sum(params.beta, p),
    )


def sample_two_class(
    model: GroundTruthModel, n0: int, n1: int, seed: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``n0`` controls from N(0, Sigma) and ``n1`` cases from
    N(d, Sigma); returns ``(features, labels)`` with controls first and
    labels 0/1.  Bit-identical for a fixed seed."""
    if n0 < 1 or n1 < 1:
        raise DomainError(f"class sizes must be >= 1, got n0={n0}, n1={n1}")
    rng = derive_rng(seed, STREAM_SIMULATE)
    p = model.dimension
    scale = np.sqrt(model.eigenvalues)
    z0 = rng.standard_normal((n0, p))
    z1 = rng.standard_normal((n1, p))
    controls = (z0 * scale) @ model.basis.T
    cases = (z1 * scale) @ model.basis.T + model.contrast
    features = np.vstack([controls, cases])
    labels = np.concatenate([np.zeros(n0, dtype=int), np.ones(n1, dtype=int)])
    return features, labels


def sample_multimodal(
    shared_rank: int,
    mod_specs: list[ModalitySpec] | list[tuple],
    n: int,
    seed: int = 0,
) -> MultimodalSample:
    """Draw paired modalities sharing an r-dimensional latent factor.

    Each row draws ``z ~ N(0, I_r)``; modality m is
    ``loading * z @ W_m' + noise * eps`` with a seeded orthonormal-column
    ``W_m`` and independent Gaussian noise.  The population canonical
    correlations between modalities i and j are ``attenuation_i *
    attenuation_j`` on each of the r shared factors, recorded in the output.
    """
    if shared_rank < 1:
        raise DomainError(f"shared rank must be >= 1, got {shared_rank}")
    if n < 1:
        raise DomainError(f"row count must be >= 1, got {n}")
    specs = [s if isinstance(s, ModalitySpec) else ModalitySpec(*s) for s in mod_specs]
    if len(specs) < 2:
        raise DomainError("need at least two modalities")
    for m, spec in enumerate(specs):
        if spec.dimension < shared_rank:
            raise DomainError(
                f"modality {m} dimension {spec.dimension} is below the shared "
                f"rank {shared_rank}"
            )
    latent = derive_rng(seed, STREAM_MULTIMODAL, 0).standard_normal((n, shared_rank))
    datasets = []
    for m, spec in enumerate(specs):
        rng = derive_rng(seed, STREAM_MULTIMODAL, 1 + m)
        loadings = _orthonormal_columns(rng, spec.dimension, shared_rank)
        noise = rng.standard_normal((n, spec.dimension))
        datasets.append(
            spec.loading_scale * latent @ loadings.T + spec.noise_scale * noise
        )
    correlations = {
        (i, j): specs[i].attenuation * specs[j].attenuation
        for i in range(len(specs))
        for j in range(i + 1, len(specs))
    }
    return MultimodalSample(
        datasets=datasets,
        shared_rank=shared_rank,
        specs=specs,
        population_correlations=correlations,
    )


def _haar_rotation(p: int, seed: int) -> np.ndarray:
    rng = derive_rng(seed, STREAM_ROTATION)
    return _orthonormal_columns(rng, p, p)


def _orthonormal_columns(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    gauss = rng.standard_normal((rows, cols))
    q, r = np.linalg.qr(gauss)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs
