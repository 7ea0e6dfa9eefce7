"""Spectral diagnostics for sample covariance matrices.

Covariance estimation, eigendecomposition with a deterministic sign
convention, effective rank, the sub-Gaussian operator-norm error bound,
gap-based counting of identifiable modes, and log-log power-law slope
fitting.  Dimensions are desk-scale by contract (p <= 2000): everything is
dense and routed through LAPACK via numpy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, DomainError

MAX_DIMENSION = 2000

# Eigenvalues within this relative tolerance below zero are treated as
# rounding debris of a PSD matrix and clamped to zero.
_NEGATIVE_CLAMP = 1e-10


@dataclass(frozen=True)
class EigenSpectrum:
    """Eigenvalues (descending) and aligned orthonormal eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dimension(self) -> int:
        return self.eigenvalues.size

    def gap(self, k: int) -> float:
        """Two-sided spectral gap of mode ``k`` (1-based).

        ``min(lambda_k - lambda_{k+1}, lambda_{k-1} - lambda_k)``; a missing
        neighbour counts as infinitely far away.
        """
        lam = self.eigenvalues
        if not 1 <= k <= lam.size:
            raise DomainError(f"mode index must lie in 1..{lam.size}, got {k}")
        right = lam[k - 1] - lam[k] if k < lam.size else np.inf
        left = lam[k - 2] - lam[k - 1] if k > 1 else np.inf
        return float(min(right, left))


def sample_covariance(data) -> np.ndarray:
    """Unbiased sample covariance ``(1/(n-1)) * Xc' Xc`` of an n x p matrix."""
    x = np.asarray(data, dtype=float)
    if x.ndim != 2:
        raise DomainError(f"data must be a 2-D matrix, got shape {x.shape}")
    n, p = x.shape
    if n < 2:
        raise DomainError(f"need at least 2 samples to estimate covariance, got {n}")
    if p > MAX_DIMENSION:
        raise DomainError(f"dimension {p} exceeds the desk-scale cap {MAX_DIMENSION}")
    if not np.all(np.isfinite(x)):
        raise DataError("data contains non-finite entries")
    xc = x - x.mean(axis=0)
    sigma = xc.T @ xc / (n - 1)
    return (sigma + sigma.T) / 2.0


def eigendecompose(sigma) -> EigenSpectrum:
    """Eigendecomposition of a symmetric matrix, sorted descending.

    The input is symmetrized as ``(A + A') / 2`` after checking symmetry to
    1e-8 (relative to the largest entry).  Each eigenvector's sign is fixed
    so its largest-magnitude component is positive.  Tiny negative
    eigenvalues of nearly-PSD inputs are clamped to zero; genuinely
    indefinite matrices keep their negative eigenvalues.
    """
    a = np.asarray(sigma, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"matrix must be square, got shape {a.shape}")
    if a.shape[0] > MAX_DIMENSION:
        raise DomainError(
            f"dimension {a.shape[0]} exceeds the desk-scale cap {MAX_DIMENSION}"
        )
    if not np.all(np.isfinite(a)):
        raise DataError("matrix contains non-finite entries")
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    if float(np.max(np.abs(a - a.T))) > 1e-8 * scale:
        raise DomainError("matrix is not symmetric within 1e-8")
    sym = (a + a.T) / 2.0
    lam, vec = np.linalg.eigh(sym)
    order = np.argsort(lam)[::-1]
    lam = lam[order]
    vec = vec[:, order]
    clamp = _NEGATIVE_CLAMP * max(1.0, abs(float(lam[0])) if lam.size else 1.0)
    lam[(lam < 0) & (lam >= -clamp)] = 0.0
    # deterministic sign: largest-magnitude component positive
    idx = np.argmax(np.abs(vec), axis=0)
    signs = np.sign(vec[idx, np.arange(vec.shape[1])])
    signs[signs == 0] = 1.0
    vec = vec * signs
    return EigenSpectrum(eigenvalues=lam, eigenvectors=vec)


def effective_rank(spectrum: EigenSpectrum) -> float:
    """``trace / operator norm`` = ``sum(lambda) / lambda_1``; in [1, p]."""
    lam = spectrum.eigenvalues
    if lam.size == 0 or lam[0] <= 0:
        raise DomainError("effective rank needs a spectrum with lambda_1 > 0")
    return float(np.sum(lam) / lam[0])


def operator_error_bound(
    spectrum: EigenSpectrum, n: int, delta: float, c: float = 1.0
) -> float:
    """Two-term sub-Gaussian bound on ``||Sigma_hat - Sigma||_op``.

    ``c * ||Sigma|| * [sqrt((r_eff + log(1/delta))/n) + (r_eff + log(1/delta))/n]``
    with absolute constant ``c``; decreasing in ``n``.
    """
    if not n >= 1:
        raise DomainError(f"sample size must be >= 1, got {n}")
    if not (0.0 < delta < 1.0):
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    if not c > 0:
        raise DomainError(f"constant c must be positive, got {c}")
    r = effective_rank(spectrum)
    t = (r + np.log(1.0 / delta)) / n
    return float(c * spectrum.eigenvalues[0] * (np.sqrt(t) + t))


def identifiable_mode_count(
    spectrum: EigenSpectrum, error: float, safety: float = 0.5
) -> int:
    """Largest K such that every mode k <= K has a two-sided spectral gap
    exceeding ``error / safety``.

    Eigenvector-perturbation bounds scale as ``2 * error / gap``, so the
    default ``safety = 0.5`` demands gaps larger than twice the error.
    Modes inside a tied block are never individually identifiable, so the
    count stops before the block; returns 0 when even the top mode fails.
    """
    if not (np.isfinite(error) and error >= 0):
        raise DomainError(f"error must be non-negative, got {error}")
    if not (0.0 < safety <= 1.0):
        raise DomainError(f"safety must lie in (0, 1], got {safety}")
    threshold = error / safety
    count = 0
    for k in range(1, spectrum.dimension + 1):
        if spectrum.gap(k) > threshold:
            count = k
        else:
            break
    return count


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares decay exponent of a positive series on a log-log scale."""

    slope: float
    log_intercept: float
    r_squared: float
    fit_range: tuple[int, int]


def fit_power_law(series, fit_range: tuple[int, int]) -> PowerLawFit:
    """OLS of ``log(series_k)`` on ``-log(k)`` over ``k in [k_min, k_max]``.

    ``series`` is 1-indexed by mode number.  A positive slope means decay:
    ``series_k ~ exp(log_intercept) * k**-slope``.
    """
    values = np.asarray(series, dtype=float)
    if values.ndim != 1:
        raise DomainError("series must be 1-D")
    k_min, k_max = int(fit_range[0]), int(fit_range[1])
    if not (1 <= k_min < k_max <= values.size):
        raise DomainError(
            f"fit range {fit_range} invalid for a series of length {values.size}"
        )
    if k_max - k_min + 1 < 3:
        raise DomainError("fit range must contain at least 3 modes")
    window = values[k_min - 1 : k_max]
    if np.any(window <= 0) or not np.all(np.isfinite(window)):
        raise DomainError("power-law fit requires strictly positive finite values")
    x = -np.log(np.arange(k_min, k_max + 1, dtype=float))
    y = np.log(window)
    x_center = x - x.mean()
    slope = float(np.dot(x_center, y) / np.dot(x_center, x_center))
    intercept = float(y.mean() - slope * x.mean())
    residual = y - (intercept + slope * x)
    ss_res = float(np.dot(residual, residual))
    ss_tot = float(np.dot(y - y.mean(), y - y.mean()))
    if ss_tot <= np.finfo(float).tiny:
        r_squared = 1.0 if ss_res <= 1e-24 else 0.0
    else:
        r_squared = max(0.0, min(1.0, 1.0 - ss_res / ss_tot))
    return PowerLawFit(
        slope=slope,
        log_intercept=intercept,
        r_squared=r_squared,
        fit_range=(k_min, k_max),
    )
