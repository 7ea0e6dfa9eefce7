"""Learning-curve estimation, decay-law fitting, and cross-over detection.

The workflow engine: subsample a labeled dataset at several training sizes
against one fixed holdout, fit a discriminant at each size, and record the
holdout AUC; fit the closed-form accuracy law to the resulting curve;
extrapolate it; and compare two curves for the sample size at which one
model overtakes another.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .classify import LdaModel, empirical_auc, fit_lda
from .errors import (
    ConditioningError,
    DataError,
    DegenerateFitError,
    DomainError,
    ProtocolError,
    SizingError,
)
from .rng import STREAM_CURVE, derive_rng
from .zeta import ZetaLawParams, auc_asymptote, identifiable_modes, normal_cdf

MODEL_KINDS = ("full_lda", "diagonal_lda", "ridge_lda")

_SD_FLOOR = 1e-3


class CurvePoint(NamedTuple):
    n: int
    mean_metric: float
    sd_metric: float
    repeats: int


@dataclass(frozen=True)
class LearningCurve:
    """Mean/dispersion of a metric at each training size, plus the protocol
    (seeds, split fractions, class counts) that produced it."""

    points: list[CurvePoint]
    metric_name: str
    protocol: dict

    @property
    def n_grid(self) -> tuple[int, ...]:
        return tuple(p.n for p in self.points)

    @property
    def means(self) -> np.ndarray:
        return np.array([p.mean_metric for p in self.points])


@dataclass(frozen=True)
class ModelSpec:
    """Discriminant variant for a learning curve.

    ``full_lda`` uses the full pooled covariance, ``diagonal_lda`` only its
    diagonal, and ``ridge_lda`` adds ``ridge > 0`` to every eigenvalue.
    """

    kind: str
    ridge: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in MODEL_KINDS:
            raise DomainError(f"model kind must be one of {MODEL_KINDS}, got {self.kind!r}")
        if self.kind == "ridge_lda":
            if not self.ridge > 0:
                raise DomainError("ridge_lda requires a positive ridge")
        elif self.ridge != 0.0:
            raise DomainError(f"{self.kind} does not take a ridge parameter")

    def label(self) -> str:
        if self.kind == "ridge_lda":
            return f"ridge_lda({self.ridge:g})"
        return self.kind


class Crossover(NamedTuple):
    """A persistent performance flip: ``direction`` names loser -> winner,
    ``n_star`` interpolates the crossing on a log-size axis."""

    n_star: float
    direction: str


@dataclass(frozen=True)
class ZetaFit:
    """Fitted accuracy-law parameters plus fit diagnostics."""

    params: ZetaLawParams
    residual: float
    predictions: np.ndarray
    fixed: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Extrapolation:
    n_targets: np.ndarray
    predicted: np.ndarray
    asymptote: object


def learning_curve(
    features,
    labels,
    spec: ModelSpec,
    n_grid,
    repeats: int,
    holdout_fraction: float = 0.25,
    seed: int = 0,
) -> LearningCurve:
    """Estimate mean holdout AUC at each training size in ``n_grid``.

    One class-stratified holdout is drawn per curve and shared by every
    grid point and repeat, so differences along the curve reflect training
    size only.  Each repeat draws a fresh stratified training subsample
    from the non-holdout pool with a sub-seed derived from
    ``(seed, STREAM_CURVE, 1 + grid_index, repeat)``; the subsamples do not
    depend on the model, so curves for different models under one seed are
    paired.
    """
    x = np.asarray(features, dtype=float)
    y = np.asarray(labels)
    if x.ndim != 2 or y.ndim != 1 or x.shape[0] != y.size:
        raise DomainError("features must be n x p with one label per row")
    if not np.all(np.isfinite(x)):
        raise DataError("features contain non-finite entries")
    if repeats < 2:
        raise DomainError(f"repeats must be at least 2, got {repeats}")
    if not (0.0 < holdout_fraction < 1.0):
        raise DomainError(f"holdout_fraction must lie in (0, 1), got {holdout_fraction}")
    grid = [int(n) for n in n_grid]
    if len(grid) == 0 or any(b <= a for a, b in zip(grid, grid[1:])) or grid[0] < 4:
        raise DomainError("n_grid must be strictly ascending sizes, each >= 4")
    classes = np.unique(y)
    if classes.size != 2:
        raise DataError(f"need exactly two label values, got {classes.tolist()}")
    idx0 = np.flatnonzero(y == classes[0])
    idx1 = np.flatnonzero(y == classes[1])

    holdout_rng = derive_rng(seed, STREAM_CURVE, 0)
    hold0 = max(1, round(holdout_fraction * idx0.size))
    hold1 = max(1, round(holdout_fraction * idx1.size))
    h0 = holdout_rng.choice(idx0, size=hold0, replace=False)
    h1 = holdout_rng.choice(idx1, size=hold1, replace=False)
    pool0 = np.setdiff1d(idx0, h0)
    pool1 = np.setdiff1d(idx1, h1)
    case_fraction = pool1.size / (pool0.size + pool1.size)

    splits = [_stratified_sizes(n, case_fraction) for n in grid]
    feasible = [
        n
        for n, (n0, n1) in zip(grid, splits)
        if n0 <= pool0.size and n1 <= pool1.size
    ]
    if len(feasible) != len(grid):
        max_n = _max_feasible(pool0.size, pool1.size, case_fraction)
        raise SizingError(
            f"training pool ({pool0.size} controls, {pool1.size} cases after the "
            f"holdout) cannot supply every grid size; the largest feasible "
            f"stratified size is {max_n}"
        )

    holdout_x = x[np.concatenate([h0, h1])]
    holdout_y = np.concatenate([np.zeros(h0.size, dtype=int), np.ones(h1.size, dtype=int)])
    points = []
    for i, (n, (n0, n1)) in enumerate(zip(grid, splits)):
        aucs = np.empty(repeats)
        for r in range(repeats):
            rng = derive_rng(seed, STREAM_CURVE, 1 + i, r)
            take0 = rng.choice(pool0, size=n0, replace=False)
            take1 = rng.choice(pool1, size=n1, replace=False)
            model = _fit_model(spec, x[take1], x[take0])
            scores = model.score(holdout_x)
            aucs[r] = empirical_auc(scores[holdout_y == 0], scores[holdout_y == 1])
        points.append(
            CurvePoint(
                n=n,
                mean_metric=float(np.mean(aucs)),
                sd_metric=float(np.std(aucs, ddof=1)),
                repeats=repeats,
            )
        )
    protocol = {
        "seed": int(seed),
        "holdout_fraction": holdout_fraction,
        "repeats": repeats,
        "n_grid": grid,
        "holdout_counts": {"controls": int(h0.size), "cases": int(h1.size)},
        "pool_counts": {"controls": int(pool0.size), "cases": int(pool1.size)},
        "class_labels": {"control": classes[0].item(), "case": classes[1].item()},
        "model": spec.label(),
    }
    return LearningCurve(points=points, metric_name="auc", protocol=protocol)


def fit_zeta_law(curve: LearningCurve, fixed: dict | None = None) -> ZetaFit:
    """Weighted least-squares fit of the accuracy law to a learning curve.

    Minimizes ``sum_i w_i * (predicted_i - mean_i)**2`` with weights
    ``repeats / max(sd, 1e-3)**2`` over the free parameters among beta,
    gamma, c_d (``fixed`` pins any subset; k_scale is never fitted).  A
    coarse log-spaced grid seeds a coordinate descent refined to relative
    tolerance 1e-6.  Requires more informative points (mean > 0.5) than
    free parameters; a curve flat at 0.5 is degenerate (c_d ~ 0).
    """
    fixed = dict(fixed or {})
    unknown = set(fixed) - {"beta", "gamma", "c_d"}
    if unknown:
        raise DomainError(f"cannot fix unknown parameters: {sorted(unknown)}")
    free = [name for name in ("beta", "gamma", "c_d") if name not in fixed]
    ns = np.array([p.n for p in curve.points], dtype=float)
    means = np.array([p.mean_metric for p in curve.points])
    sds = np.array([p.sd_metric for p in curve.points])
    reps = np.array([p.repeats for p in curve.points])
    weights = reps / np.maximum(sds, _SD_FLOOR) ** 2
    informative = int(np.sum(means > 0.5))
    if informative == 0:
        raise DegenerateFitError(
            "curve is flat at 0.5: no detectable signal (c_d is approximately 0)"
        )
    required = 4 if len(free) == 3 else len(free) + 1
    if informative < required:
        raise DegenerateFitError(
            f"fit of {len(free)} free parameter(s) needs at least {required} curve "
            f"points above 0.5, got {informative}"
        )

    predictor = _CurvePredictor(ns)

    def objective(point: dict) -> float:
        pred = predictor.predict(point["beta"], point["gamma"], point["c_d"])
        return float(np.sum(weights * (pred - means) ** 2))

    grids = {
        "beta": np.geomspace(0.1, 4.0, 21),
        "gamma": np.geomspace(0.05, 4.0, 21),
        "c_d": np.geomspace(0.01, 10.0, 21),
    }
    base = {
        "beta": fixed.get("beta", 1.0),
        "gamma": fixed.get("gamma", 1.0),
        "c_d": fixed.get("c_d", 1.0),
    }
    # Coarse grid pass.  The mode-count law makes the objective piecewise in
    # gamma, so the refinement below restarts from several grid cells rather
    # than trusting a single basin.
    scored: list[tuple[float, dict]] = []
    if free:
        axes = [grids[name] for name in free]
        mesh = np.meshgrid(*axes, indexing="ij")
        for values in zip(*(m.ravel() for m in mesh)):
            trial = dict(base)
            trial.update({name: float(v) for name, v in zip(free, values)})
            scored.append((objective(trial), trial))
        scored.sort(key=lambda item: item[0])
        starts = [point for _, point in scored[:8]]
    else:
        starts = [base]

    best, current = min(
        (_refine(objective, start, free) for start in starts),
        key=lambda item: item[0],
    )
    params = ZetaLawParams(
        beta=current["beta"], gamma=current["gamma"], c_d=current["c_d"]
    )
    return ZetaFit(
        params=params,
        residual=best,
        predictions=predictor.predict(params.beta, params.gamma, params.c_d),
        fixed=fixed,
    )


def extrapolate(params: ZetaLawParams, n_targets) -> Extrapolation:
    """Forward predictions at each target size plus the asymptote."""
    targets = np.asarray(list(n_targets), dtype=float)
    if targets.size == 0 or np.any(targets < 1):
        raise DomainError("extrapolation targets must be sizes >= 1")
    predictor = _CurvePredictor(targets)
    predicted = predictor.predict(params.beta, params.gamma, params.c_d, params.k_scale)
    return Extrapolation(
        n_targets=targets, predicted=predicted, asymptote=auc_asymptote(params)
    )


def detect_crossover(curve_a: LearningCurve, curve_b: LearningCurve) -> Crossover | None:
    """Find the sample size where one curve permanently overtakes the other.

    Scans the shared grid for the first interval where the sign of
    ``mean_a - mean_b`` flips and stays flipped through the end of the
    grid; ``n_star`` is the log-linear interpolation of the zero crossing.
    Returns None when either curve dominates everywhere or every flip is
    transient (single-point flips are treated as noise).
    """
    if curve_a.n_grid != curve_b.n_grid:
        raise ProtocolError(
            f"curves must share a grid, got {curve_a.n_grid} and {curve_b.n_grid}"
        )
    ns = np.asarray(curve_a.n_grid, dtype=float)
    diff = curve_a.means - curve_b.means
    signs = np.sign(diff)
    for i in range(len(ns) - 1):
        if signs[i] == 0 or signs[i + 1] != -signs[i]:
            continue
        if np.all(signs[i + 1 :] == signs[i + 1]):
            log_n = np.log(ns)
            t = log_n[i] + (0.0 - diff[i]) * (log_n[i + 1] - log_n[i]) / (
                diff[i + 1] - diff[i]
            )
            winner, loser = ("a", "b") if signs[i + 1] > 0 else ("b", "a")
            return Crossover(n_star=float(np.exp(t)), direction=f"{loser}->{winner}")
    return None


_FIT_BOUNDS = {"beta": (1e-2, 8.0), "gamma": (1e-4, 8.0), "c_d": (1e-6, 1e3)}


def _refine(objective, start: dict, free: list[str]) -> tuple[float, dict]:
    """Local refinement: coordinate-descent sweeps at a shrinking
    multiplicative step, with a joint pattern move per step level so
    correlated parameter shifts can escape kinks in the mode-count law."""
    current = dict(start)
    best = objective(current)
    step = 2.0
    while step - 1.0 > 1e-6:
        improved = True
        while improved:
            improved = False
            for name in free:
                lo, hi = _FIT_BOUNDS[name]
                for factor in np.geomspace(1.0 / step, step, 13):
                    cand = float(np.clip(current[name] * factor, lo, hi))
                    trial = dict(current)
                    trial[name] = cand
                    val = objective(trial)
                    if val < best - 1e-15:
                        best, current, improved = val, trial, True
            if len(free) > 1:
                # joint pattern move over all free axes
                offsets = np.array(
                    np.meshgrid(*[[1.0 / step, 1.0, step]] * len(free), indexing="ij")
                ).reshape(len(free), -1)
                for column in offsets.T:
                    trial = dict(current)
                    for name, factor in zip(free, column):
                        lo, hi = _FIT_BOUNDS[name]
                        trial[name] = float(np.clip(current[name] * factor, lo, hi))
                    val = objective(trial)
                    if val < best - 1e-15:
                        best, current, improved = val, trial, True
        step = 1.0 + (step - 1.0) * 0.5
    return best, current


class _CurvePredictor:
    """Forward accuracy-law evaluation with per-exponent cumulative caches."""

    def __init__(self, ns: np.ndarray):
        self._ns = ns
        self._sum_cache: dict[float, np.ndarray] = {}

    def predict(
        self, beta: float, gamma: float, c_d: float, k_scale: float = 1.0
    ) -> np.ndarray:
        ks = np.array(
            [identifiable_modes(n, gamma, k_scale) for n in self._ns], dtype=int
        )
        sums = self._cumulative(beta, int(ks.max()))
        delta_sq = c_d * sums[ks]
        return np.array([normal_cdf(math.sqrt(0.5 * d)) for d in delta_sq])

    def _cumulative(self, beta: float, k_max: int) -> np.ndarray:
        cached = self._sum_cache.get(beta)
        if cached is None or cached.size <= k_max:
            terms = np.arange(1, k_max + 1, dtype=float) ** -beta
            cached = np.concatenate([[0.0], np.cumsum(terms)])
            self._sum_cache[beta] = cached
        return cached


def _fit_model(spec: ModelSpec, cases: np.ndarray, controls: np.ndarray) -> LdaModel:
    if spec.kind == "diagonal_lda":
        return _fit_diagonal(cases, controls)
    ridge = spec.ridge if spec.kind == "ridge_lda" else 0.0
    return fit_lda(cases, controls, ridge=ridge)


def _fit_diagonal(cases: np.ndarray, controls: np.ndarray) -> LdaModel:
    n1, n0 = cases.shape[0], controls.shape[0]
    if n1 < 2 or n0 < 2:
        raise DomainError(f"need >= 2 samples per class, got n1={n1}, n0={n0}")
    v1 = cases.var(axis=0, ddof=1)
    v0 = controls.var(axis=0, ddof=1)
    pooled = ((n0 - 1) * v0 + (n1 - 1) * v1) / (n0 + n1 - 2)
    if np.any(pooled <= 0):
        raise ConditioningError("a feature has zero pooled variance")
    mean1 = cases.mean(axis=0)
    mean0 = controls.mean(axis=0)
    return LdaModel(
        mean0=mean0,
        mean1=mean1,
        sigma=np.diag(pooled),
        ridge=0.0,
        direction=(mean1 - mean0) / pooled,
    )


def _stratified_sizes(n: int, case_fraction: float) -> tuple[int, int]:
    n1 = min(max(round(n * case_fraction), 2), n - 2)
    return n - n1, n1


def _max_feasible(pool0: int, pool1: int, case_fraction: float) -> int:
    n = pool0 + pool1
    while n >= 4:
        n0, n1 = _stratified_sizes(n, case_fraction)
        if n0 <= pool0 and n1 <= pool1:
            return n
        n -= 1
    return 0
