"""Linear discriminant machinery.

Pooled-covariance LDA with optional ridge shrinkage (the ridge shifts every
eigenvalue, ``lambda_k -> lambda_k + ridge``), squared Mahalanobis
separation and its per-mode decomposition in the covariance eigenbasis,
individual abnormality scores against a reference group, and the rank-based
(Mann-Whitney) empirical AUC.

All inversions route through one eigendecomposition so the scalar distance
and its per-mode view come from the same factorization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConditioningError, DataError, DomainError
from .spectral import EigenSpectrum, eigendecompose, sample_covariance

# An effective eigenvalue below this fraction of lambda_1 counts as singular.
_SINGULAR_REL_TOL = 1e-12


@dataclass(frozen=True)
class LdaModel:
    """Fitted linear discriminant: class means, pooled covariance, ridge,
    and the direction solving ``(Sigma + ridge*I) w = mean1 - mean0``."""

    mean0: np.ndarray
    mean1: np.ndarray
    sigma: np.ndarray
    ridge: float
    direction: np.ndarray

    def score(self, x) -> np.ndarray | float:
        """Discriminant score ``w' x`` for a single vector or a matrix of rows."""
        return np.asarray(x, dtype=float) @ self.direction


@dataclass(frozen=True)
class ContrastDecomposition:
    """Per-mode view of a contrast vector in a covariance eigenbasis.

    ``alphas`` are the projections onto every eigenvector; ``energies`` are
    ``alpha_k**2 / lambda_k`` over the ``modes_used`` leading modes with
    positive eigenvalues; ``cumulative`` are their running sums.
    """

    alphas: np.ndarray
    energies: np.ndarray
    cumulative: np.ndarray
    modes_used: int
    truncated: bool


def mahalanobis_distance_sq(d, sigma, ridge: float = 0.0) -> float:
    """``d' (Sigma + ridge*I)^-1 d`` via eigendecomposition.

    Equals the total per-mode energy ``sum_k alpha_k**2 / (lambda_k + ridge)``;
    non-negative, and non-increasing in ``ridge``.
    """
    d = _as_vector(d)
    spectrum = sigma if isinstance(sigma, EigenSpectrum) else eigendecompose(sigma)
    if not (np.isfinite(ridge) and ridge >= 0):
        raise DomainError(f"ridge must be non-negative, got {ridge}")
    lam = _effective_eigenvalues(spectrum, ridge)
    alphas = spectrum.eigenvectors.T @ d
    return float(np.sum(alphas ** 2 / lam))


def fit_lda(cases, controls, ridge: float = 0.0) -> LdaModel:
    """Fit a pooled-covariance linear discriminant.

    ``cases`` and ``controls`` are n1 x p and n0 x p matrices with at least
    two rows each.  The pooled covariance weights each class by its degrees
    of freedom; the direction solves ``(Sigma + ridge*I) w = mean1 - mean0``
    through the eigenbasis.  Without ridge the pooled covariance must be
    nonsingular (requires p <= n0 + n1 - 2).
    """
    x1 = _as_matrix(cases, "cases")
    x0 = _as_matrix(controls, "controls")
    if x1.shape[1] != x0.shape[1]:
        raise DomainError(
            f"cases and controls disagree on dimension: {x1.shape[1]} vs {x0.shape[1]}"
        )
    n1, n0 = x1.shape[0], x0.shape[0]
    if n1 < 2 or n0 < 2:
        raise DomainError(f"need >= 2 samples per class, got n1={n1}, n0={n0}")
    if not (np.isfinite(ridge) and ridge >= 0):
        raise DomainError(f"ridge must be non-negative, got {ridge}")
    sigma = pooled_covariance(x1, x0)
    mean1 = x1.mean(axis=0)
    mean0 = x0.mean(axis=0)
    d = mean1 - mean0
    spectrum = eigendecompose(sigma)
    lam = _effective_eigenvalues(spectrum, ridge)
    direction = spectrum.eigenvectors @ ((spectrum.eigenvectors.T @ d) / lam)
    return LdaModel(
        mean0=mean0, mean1=mean1, sigma=sigma, ridge=float(ridge), direction=direction
    )


def pooled_covariance(cases, controls) -> np.ndarray:
    """Degrees-of-freedom weighted pooled covariance of two groups."""
    x1 = _as_matrix(cases, "cases")
    x0 = _as_matrix(controls, "controls")
    n1, n0 = x1.shape[0], x0.shape[0]
    s1 = sample_covariance(x1)
    s0 = sample_covariance(x0)
    return ((n0 - 1) * s0 + (n1 - 1) * s1) / (n0 + n1 - 2)


def contrast_decomposition(d, spectrum: EigenSpectrum) -> ContrastDecomposition:
    """Decompose a contrast vector in a covariance eigenbasis.

    Modes with (numerically) zero eigenvalues are truncated away when the
    contrast has no component there; a substantial projection onto a zero
    mode is a rank-deficiency error because its energy is unbounded.
    """
    d = _as_vector(d)
    lam = spectrum.eigenvalues
    if d.size != lam.size:
        raise DomainError(
            f"contrast dimension {d.size} does not match spectrum dimension {lam.size}"
        )
    alphas = spectrum.eigenvectors.T @ d
    top = float(lam[0]) if lam.size else 0.0
    cutoff = _SINGULAR_REL_TOL * max(top, np.finfo(float).tiny)
    positive = lam > cutoff
    modes_used = int(np.sum(positive))
    if modes_used < lam.size:
        scale = float(np.linalg.norm(d))
        bad = np.abs(alphas[~positive]) > 1e-8 * max(scale, 1e-300)
        if np.any(bad):
            raise ConditioningError(
                "contrast has a non-zero projection onto a zero-variance mode; "
                "the decomposition energy is unbounded (rank-deficient covariance)"
            )
    energies = alphas[:modes_used] ** 2 / lam[:modes_used]
    return ContrastDecomposition(
        alphas=alphas,
        energies=energies,
        cumulative=np.cumsum(energies),
        modes_used=modes_used,
        truncated=modes_used < lam.size,
    )


def abnormality_score(x, mean0, sigma, ridge: float = 0.0):
    """Squared Mahalanobis distance of ``x`` from a reference mean.

    ``(x - mean0)' (Sigma + ridge*I)^-1 (x - mean0)``; accepts a single
    p-vector (returns a float) or an m x p matrix (returns m scores).
    """
    mean0 = _as_vector(mean0)
    arr = np.asarray(x, dtype=float)
    spectrum = sigma if isinstance(sigma, EigenSpectrum) else eigendecompose(sigma)
    if not (np.isfinite(ridge) and ridge >= 0):
        raise DomainError(f"ridge must be non-negative, got {ridge}")
    lam = _effective_eigenvalues(spectrum, ridge)
    diff = arr - mean0
    proj = diff @ spectrum.eigenvectors
    scores = np.sum(proj ** 2 / lam, axis=-1)
    return float(scores) if scores.ndim == 0 else scores


def empirical_auc(control_scores, case_scores) -> float:
    """Mann-Whitney AUC with midrank tie handling.

    Probability that a random case outscores a random control, ties worth
    one half; computed by rank summation in O((n0+n1) log(n0+n1)) and
    exactly equal to pair enumeration.
    """
    controls = np.asarray(control_scores, dtype=float).ravel()
    cases = np.asarray(case_scores, dtype=float).ravel()
    if controls.size == 0 or cases.size == 0:
        raise DomainError("empirical_auc requires non-empty score lists")
    if not (np.all(np.isfinite(controls)) and np.all(np.isfinite(cases))):
        raise DataError("scores contain non-finite values")
    n0, n1 = controls.size, cases.size
    combined = np.concatenate([controls, cases])
    ranks = _midranks(combined)
    case_rank_sum = float(np.sum(ranks[n0:]))
    return (case_rank_sum - n1 * (n1 + 1) / 2.0) / (n0 * n1)


def _midranks(values: np.ndarray) -> np.ndarray:
    order = np.argsort(values, kind="mergesort")
    sorted_vals = values[order]
    boundaries = np.flatnonzero(
        np.r_[True, sorted_vals[1:] != sorted_vals[:-1], True]
    )
    counts = np.diff(boundaries)
    # average of the 1-based ranks occupied by each tie group
    group_mid = (boundaries[:-1] + 1 + boundaries[1:]) / 2.0
    ranks = np.empty(values.size)
    ranks[order] = np.repeat(group_mid, counts)
    return ranks


def _effective_eigenvalues(spectrum: EigenSpectrum, ridge: float) -> np.ndarray:
    lam = spectrum.eigenvalues + ridge
    top = float(spectrum.eigenvalues[0]) if spectrum.dimension else 0.0
    if float(lam[-1]) <= _SINGULAR_REL_TOL * top or float(lam[-1]) <= 0.0:
        raise ConditioningError(
            f"effective covariance is singular: smallest eigenvalue "
            f"{float(spectrum.eigenvalues[-1]):.3e} (+ ridge {ridge:g}) is not "
            f"positive relative to lambda_1 = {top:.3e}"
        )
    return lam


def _as_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise DomainError(f"expected a 1-D vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DataError("vector contains non-finite values")
    return arr


def _as_matrix(m, name: str) -> np.ndarray:
    arr = np.asarray(m, dtype=float)
    if arr.ndim != 2:
        raise DomainError(f"{name} must be a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{name} contains non-finite entries")
    return arr
