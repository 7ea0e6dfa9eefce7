"""Cross-modal spectral machinery.

Cross-covariance operators between paired datasets, the whitened operator
``M = (Sxx + reg*I)^{-1/2} Sxy (Syy + reg*I)^{-1/2}`` whose singular values
are (regularized) canonical correlations, CCA with back-transformed
directions, the Hilbert-Schmidt independence criterion with a permutation
test, and the low-rank structure of a multi-condition contrast operator.

Gram matrices are dense, so kernel-based operations cap the sample count at
5000 rows by contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConditioningError, DataError, DomainError
from .rng import STREAM_PERMUTATION, derive_rng
from .spectral import eigendecompose, sample_covariance

MAX_GRAM_ROWS = 5000

# Rows subsampled for the median bandwidth heuristic on large inputs; the
# subsample uses a fixed internal seed so the heuristic stays deterministic.
_BANDWIDTH_SUBSAMPLE = 1000
_BANDWIDTH_SEED = 0


@dataclass(frozen=True)
class KernelSpec:
    """Kernel choice for HSIC: ``linear`` or ``rbf``.

    For ``rbf``, ``bandwidth=None`` selects the median pairwise Euclidean
    distance heuristic.
    """

    kind: str = "linear"
    bandwidth: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("linear", "rbf"):
            raise DomainError(f"kernel kind must be 'linear' or 'rbf', got {self.kind!r}")
        if self.bandwidth is not None and not self.bandwidth > 0:
            raise DomainError(f"bandwidth must be positive, got {self.bandwidth}")


@dataclass(frozen=True)
class CrossModalSpectrum:
    """Singular structure of a (possibly whitened) cross-covariance operator."""

    singular_values: np.ndarray
    left_directions: np.ndarray
    right_directions: np.ndarray
    whitened: bool
    regularizer: float


@dataclass(frozen=True)
class CcaResult:
    """Top-k canonical correlations with paired unit-variance directions."""

    correlations: np.ndarray
    x_directions: np.ndarray
    y_directions: np.ndarray


@dataclass(frozen=True)
class DiseaseOperator:
    """Stacked standardized contrast vectors and the spectrum of their outer
    Gram matrix ``D D'``."""

    contrasts: np.ndarray
    gram_eigenvalues: np.ndarray


class DiseaseSampleSizes(NamedTuple):
    per_disease: np.ndarray
    required: float


def cross_covariance(x, y) -> np.ndarray:
    """``(1/(n-1)) Xc' Yc`` with both blocks column-centered."""
    x = _as_matrix(x, "x")
    y = _as_matrix(y, "y")
    if x.shape[0] != y.shape[0]:
        raise DomainError(
            f"x and y must have the same row count, got {x.shape[0]} and {y.shape[0]}"
        )
    n = x.shape[0]
    if n < 2:
        raise DomainError(f"need at least 2 paired rows, got {n}")
    xc = x - x.mean(axis=0)
    yc = y - y.mean(axis=0)
    return xc.T @ yc / (n - 1)


def whitened_operator(x, y, reg: float | None = None) -> CrossModalSpectrum:
    """SVD of the whitened cross-covariance operator.

    Whitening inverts the square roots of ``Sxx + reg*I`` and ``Syy + reg*I``
    through their eigendecompositions; the singular values are regularized
    canonical correlations, each <= 1 (up to rounding).  ``reg=None``
    defaults to ``1e-6`` times the larger of the two top eigenvalues;
    ``reg=0`` requires both covariances to be full rank.
    """
    x = _as_matrix(x, "x")
    y = _as_matrix(y, "y")
    if x.shape[0] != y.shape[0]:
        raise DomainError(
            f"x and y must have the same row count, got {x.shape[0]} and {y.shape[0]}"
        )
    if x.shape[0] < 3:
        raise DomainError(f"need at least 3 paired rows, got {x.shape[0]}")
    m, resolved, _, _ = _whitened(x, y, reg)
    u, s, vt = np.linalg.svd(m)
    return CrossModalSpectrum(
        singular_values=s,
        left_directions=u,
        right_directions=vt.T,
        whitened=True,
        regularizer=resolved,
    )


def cca(x, y, k: int, reg: float | None = None) -> CcaResult:
    """Top-k canonical correlations and directions.

    Correlations are the leading singular values of the whitened operator;
    directions are back-transformed through the whitening, normalized so
    each projection has unit (regularized) variance, and mutually
    uncorrelated within each modality.
    """
    x = _as_matrix(x, "x")
    y = _as_matrix(y, "y")
    if not 1 <= k <= min(x.shape[1], y.shape[1]):
        raise DomainError(
            f"k must lie in 1..min(p, q) = {min(x.shape[1], y.shape[1])}, got {k}"
        )
    if x.shape[0] != y.shape[0]:
        raise DomainError(
            f"x and y must have the same row count, got {x.shape[0]} and {y.shape[0]}"
        )
    if x.shape[0] < 3:
        raise DomainError(f"need at least 3 paired rows, got {x.shape[0]}")
    m, _, isx, isy = _whitened(x, y, reg)
    u, s, vt = np.linalg.svd(m)
    return CcaResult(
        correlations=s[:k],
        x_directions=isx @ u[:, :k],
        y_directions=isy @ vt[:k].T,
    )


def hsic(
    x,
    y,
    kernel_x: KernelSpec = KernelSpec(),
    kernel_y: KernelSpec = KernelSpec(),
) -> float:
    """Biased HSIC estimator ``trace(K H L H) / (n-1)**2``.

    ``K`` and ``L`` are the Gram matrices of the two kernels and ``H`` the
    centering projector.  Non-negative; symmetric in its arguments for
    matching kernels.  With linear kernels it equals the squared Frobenius
    norm of the ``1/(n-1)``-normalized centered cross-covariance.
    """
    kc, lc, n = _centered_grams(x, y, kernel_x, kernel_y)
    return float(np.sum(kc * lc) / (n - 1) ** 2)


def hsic_permutation_test(
    x,
    y,
    kernel_x: KernelSpec = KernelSpec(),
    kernel_y: KernelSpec = KernelSpec(),
    n_perm: int = 199,
    seed: int = 0,
) -> float:
    """Permutation p-value for dependence between paired datasets.

    Rows of ``y`` are permuted with a seeded generator while the ``x`` Gram
    matrix is reused; ``p = (1 + #{permuted >= observed}) / (1 + n_perm)``,
    so p is never 0.  Deterministic given the seed.
    """
    if n_perm < 99:
        raise DomainError(f"n_perm must be at least 99, got {n_perm}")
    kc, lc, n = _centered_grams(x, y, kernel_x, kernel_y)
    observed = float(np.sum(kc * lc))
    rng = derive_rng(seed, STREAM_PERMUTATION)
    exceed = 0
    for _ in range(n_perm):
        perm = rng.permutation(n)
        permuted = float(np.sum(kc * lc[np.ix_(perm, perm)]))
        if permuted >= observed:
            exceed += 1
    return (1 + exceed) / (1 + n_perm)


def disease_operator(contrasts) -> DiseaseOperator:
    """Build the operator from a p x D matrix of standardized contrasts.

    Columns are per-condition effect vectors (feature mean differences in
    control-standard-deviation units); the Gram spectrum is the
    eigendecomposition of ``D D'``.
    """
    d = _as_matrix(contrasts, "contrasts")
    if not np.any(d != 0):
        raise DomainError("disease operator needs at least one non-zero contrast")
    gram = d @ d.T
    spectrum = eigendecompose(gram)
    return DiseaseOperator(contrasts=d, gram_eigenvalues=spectrum.eigenvalues)


def standardized_contrasts(controls, case_groups) -> np.ndarray:
    """Stack standardized effect vectors ``(mean_j - mean_0) / sd_0`` column-wise."""
    x0 = _as_matrix(controls, "controls")
    if x0.shape[0] < 2:
        raise DomainError("need at least 2 control rows")
    sd0 = x0.std(axis=0, ddof=1)
    if np.any(sd0 == 0):
        bad = np.flatnonzero(sd0 == 0)
        raise DataError(f"control features {bad.tolist()} have zero variance")
    mean0 = x0.mean(axis=0)
    columns = []
    for j, grp in enumerate(case_groups):
        g = _as_matrix(grp, f"case group {j}")
        if g.shape[1] != x0.shape[1]:
            raise DomainError(f"case group {j} dimension mismatch")
        columns.append((g.mean(axis=0) - mean0) / sd0)
    return np.column_stack(columns)


def disease_operator_rank(op: DiseaseOperator, rel_tol: float) -> int:
    """Number of Gram eigenvalues above ``rel_tol`` times the largest."""
    if not (np.isfinite(rel_tol) and rel_tol >= 0):
        raise DomainError(f"rel_tol must be non-negative, got {rel_tol}")
    lam = op.gram_eigenvalues
    if lam.size == 0 or lam[0] <= 0:
        raise DomainError("disease operator is all-zero")
    return int(np.sum(lam > rel_tol * lam[0]))


def joint_sample_ratio(r: int, d_count: int) -> float:
    """Sample-size ratio ``r / d_count`` earned by shared low-rank structure."""
    if not (1 <= r <= d_count):
        raise DomainError(f"need 1 <= r <= d_count, got r={r}, d_count={d_count}")
    return r / d_count


def hardest_disease_sample_size(energies, scale: float) -> DiseaseSampleSizes:
    """Per-condition sample requirements ``scale / energy`` and their max.

    The weakest contrast dictates the joint study size.
    """
    e = np.asarray(energies, dtype=float).ravel()
    if e.size == 0 or np.any(e <= 0) or not np.all(np.isfinite(e)):
        raise DomainError("energies must be positive finite values")
    if not (np.isfinite(scale) and scale > 0):
        raise DomainError(f"scale must be positive, got {scale}")
    per = scale / e
    return DiseaseSampleSizes(per_disease=per, required=float(per.max()))


def _whitened(x, y, reg):
    sxx = sample_covariance(x)
    syy = sample_covariance(y)
    sxy = cross_covariance(x, y)
    top = max(float(np.linalg.eigvalsh(sxx)[-1]), float(np.linalg.eigvalsh(syy)[-1]))
    if reg is None:
        resolved = 1e-6 * top
    else:
        if not (np.isfinite(reg) and reg >= 0):
            raise DomainError(f"reg must be non-negative, got {reg}")
        resolved = float(reg)
    isx = _inverse_sqrt(sxx, resolved, "x")
    isy = _inverse_sqrt(syy, resolved, "y")
    return isx @ sxy @ isy, resolved, isx, isy


def _inverse_sqrt(sigma: np.ndarray, reg: float, name: str) -> np.ndarray:
    spectrum = eigendecompose(sigma)
    lam = spectrum.eigenvalues + reg
    top = float(lam[0])
    if float(lam[-1]) <= 1e-15 * max(top, np.finfo(float).tiny):
        raise ConditioningError(
            f"covariance of {name} is rank-deficient and reg={reg:g} does not "
            "regularize it; pass a positive reg"
        )
    u = spectrum.eigenvectors
    return (u / np.sqrt(lam)) @ u.T


def _centered_grams(x, y, kernel_x: KernelSpec, kernel_y: KernelSpec):
    x = _as_matrix(_columnize(x), "x")
    y = _as_matrix(_columnize(y), "y")
    if x.shape[0] != y.shape[0]:
        raise DomainError(
            f"x and y must have the same row count, got {x.shape[0]} and {y.shape[0]}"
        )
    n = x.shape[0]
    if n < 2:
        raise DomainError(f"HSIC needs at least 2 paired rows, got {n}")
    if n > MAX_GRAM_ROWS:
        raise DomainError(
            f"dense Gram matrices are capped at {MAX_GRAM_ROWS} rows, got {n}"
        )
    return _center_gram(_gram(x, kernel_x)), _center_gram(_gram(y, kernel_y)), n


def _columnize(a) -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    return arr


def _gram(data: np.ndarray, spec: KernelSpec) -> np.ndarray:
    if spec.kind == "linear":
        return data @ data.T
    sq_dists = _pairwise_sq_dists(data)
    bw = spec.bandwidth if spec.bandwidth is not None else _median_bandwidth(data)
    return np.exp(-sq_dists / (2.0 * bw ** 2))


def _pairwise_sq_dists(data: np.ndarray) -> np.ndarray:
    norms = np.sum(data ** 2, axis=1)
    sq = norms[:, None] + norms[None, :] - 2.0 * (data @ data.T)
    np.maximum(sq, 0.0, out=sq)
    return sq


def _median_bandwidth(data: np.ndarray) -> float:
    if data.shape[0] > _BANDWIDTH_SUBSAMPLE:
        rng = derive_rng(_BANDWIDTH_SEED, STREAM_PERMUTATION, 1)
        idx = rng.choice(data.shape[0], size=_BANDWIDTH_SUBSAMPLE, replace=False)
        data = data[idx]
    sq = _pairwise_sq_dists(data)
    upper = sq[np.triu_indices(sq.shape[0], k=1)]
    bw = float(np.sqrt(np.median(upper)))
    if bw == 0.0:
        raise DataError(
            "median pairwise distance is zero (all points identical); "
            "the RBF bandwidth heuristic is degenerate"
        )
    return bw


def _center_gram(k: np.ndarray) -> np.ndarray:
    row = k.mean(axis=0)
    total = row.mean()
    return k - row[None, :] - row[:, None] + total


def _as_matrix(m, name: str) -> np.ndarray:
    arr = np.asarray(m, dtype=float)
    if arr.ndim != 2:
        raise DomainError(f"{name} must be a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{name} contains non-finite entries")
    return arr
