"""Batch command-line surface.

Subcommands: ``predict`` (closed-form law), ``analyze`` (spectral
diagnostics of a labeled CSV), ``curve`` (empirical learning curves with
law fitting and cross-over detection), ``crossmodal`` (whitened operator,
CCA, HSIC), ``simulate`` (synthetic data with a ground-truth sidecar), and
``dkw`` (centile precision bounds).

Every run emits one JSON report to stdout (and optionally to ``--report``)
carrying the tool version, input digests, resolved parameters, results,
and warnings.  Exit codes: 0 success (including structured "Unreachable"
answers), 2 usage error, 3 data/format error, 4 numerical error.

Parameter resolution precedence: command-line flag, then ``--config`` file
(flat ``key = value`` lines), then the environment (``ZETALAW_SEED``,
``ZETALAW_THREADS``), then built-in defaults.  Every resolved value is
echoed in the report.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .classify import (
    contrast_decomposition,
    mahalanobis_distance_sq,
    pooled_covariance,
)
from .crossmodal import KernelSpec, cca, hsic, hsic_permutation_test, whitened_operator
from .curves import LearningCurve, ModelSpec, detect_crossover, extrapolate, fit_zeta_law, learning_curve
from .dataio import read_features_labels, read_table, write_table
from .errors import (
    ConditioningError,
    DataError,
    DegenerateFitError,
    DomainError,
)
from .report import Report, file_digest, jsonable, new_report
from .spectral import (
    eigendecompose,
    effective_rank,
    fit_power_law,
    identifiable_mode_count,
    operator_error_bound,
)
from .svgplot import write_line_chart
from .synth import ModalitySpec, build_ground_truth, sample_multimodal, sample_two_class
from .univariate import EmpiricalCdf, centile_band, dkw_epsilon, dkw_sample_size
from .zeta import (
    ZetaLawParams,
    auc_asymptote,
    classify_regime,
    identifiable_modes,
    mahalanobis_signal,
    predict_auc,
    required_sample_size,
)

ENV_SEED = "ZETALAW_SEED"
ENV_THREADS = "ZETALAW_THREADS"


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.handler(args)
    except DataError as exc:  # includes DegenerateFitError
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConditioningError, OverflowError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    text = report.to_json()
    print(text)
    if getattr(args, "report", None):
        Path(args.report).write_text(text + "\n", encoding="utf-8")
    return 0


# ---------------------------------------------------------------------------
# parameter resolution


class _Resolver:
    """Flag > config file > environment (seed/threads) > default."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config: dict[str, str] = {}
        self.resolved: dict[str, object] = {}
        config_path = getattr(args, "config", None)
        if config_path:
            self.config = _parse_config(config_path)

    def get(self, name: str, cast, default):
        flag_value = getattr(self.args, name, None)
        if flag_value is not None:
            value = flag_value
        elif name in self.config:
            value = _cast_config(self.config[name], cast, name)
        elif name == "seed" and os.environ.get(ENV_SEED):
            value = _cast_config(os.environ[ENV_SEED], cast, ENV_SEED)
        else:
            value = default
        self.resolved[name] = value
        return value

    def finish(self) -> dict:
        threads = os.environ.get(ENV_THREADS)
        if threads is not None:
            self.resolved["threads"] = _cast_config(threads, int, ENV_THREADS)
        return dict(self.resolved)


def _parse_config(path) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DataError(f"cannot read config file {path}: {exc}") from None
    for line_no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DataError(f"{path}:{line_no}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _cast_config(text: str, cast, name: str):
    try:
        if cast is bool:
            lowered = str(text).strip().lower()
            if lowered in ("true", "1", "yes"):
                return True
            if lowered in ("false", "0", "no"):
                return False
            raise ValueError(text)
        return cast(text)
    except (TypeError, ValueError):
        raise DomainError(f"cannot parse {name}={text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(float(part)) for part in str(text).split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of sizes: {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in str(text).split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers: {text!r}")


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_predict(args) -> Report:
    res = _Resolver(args)
    beta = res.get("beta", float, None)
    gamma = res.get("gamma", float, None)
    if beta is None or gamma is None:
        raise DomainError("predict requires --beta and --gamma")
    c_d = res.get("cd", float, 1.0)
    k_scale = res.get("k_scale", float, 1.0)
    margin = res.get("margin", float, 0.1)
    n_list = res.get("n", _int_list, [])
    target = res.get("target_auc", float, None)
    params = ZetaLawParams(beta=beta, gamma=gamma, c_d=c_d, k_scale=k_scale)

    report = new_report(__version__, "predict")
    rows = []
    for n in n_list:
        k = identifiable_modes(n, gamma, k_scale)
        delta_sq = mahalanobis_signal(params, n)
        rows.append(
            {"n": n, "identifiable_modes": k, "delta_sq": delta_sq, "auc": predict_auc(delta_sq)}
        )
    report.results["law"] = rows
    report.results["regime"] = classify_regime(beta, margin)
    report.results["asymptote"] = auc_asymptote(params)
    if target is not None:
        required = required_sample_size(target, params)
        report.results["required_sample_size"] = {
            "target_auc": target,
            "n": required,
        }
    report.params = res.finish()
    return report


def cmd_analyze(args) -> Report:
    res = _Resolver(args)
    data_path = res.get("data", str, None)
    label_column = res.get("label_column", str, None)
    if data_path is None or label_column is None:
        raise DomainError("analyze requires --data and --label-column")
    ridge = res.get("ridge", float, 0.0)
    delta = res.get("delta", float, 0.05)
    safety = res.get("safety", float, 0.5)
    bound_c = res.get("c", float, 1.0)
    out_dir = Path(res.get("out_dir", str, "."))
    plot = res.get("plot", bool, False)

    report = new_report(__version__, "analyze")
    report.inputs_digest[str(data_path)] = file_digest(data_path)
    names, features, labels = read_features_labels(data_path, label_column)
    constant = [n for n, col in zip(names, features.T) if np.ptp(col) == 0]
    if constant:
        raise DataError(f"features {constant} are constant; remove or perturb them")
    values = np.unique(labels)
    if values.size != 2:
        raise DataError(f"label column must carry exactly two values, got {values.tolist()}")
    controls = features[labels == values[0]]
    cases = features[labels == values[1]]
    if len(controls) < 2 or len(cases) < 2:
        raise DataError("need at least two rows per class")

    sigma = pooled_covariance(cases, controls)
    spectrum = eigendecompose(sigma)
    r_eff = effective_rank(spectrum)
    n_total = features.shape[0]
    bound = operator_error_bound(spectrum, n_total, delta, bound_c)
    k_hat = identifiable_mode_count(spectrum, bound, safety)
    contrast = cases.mean(axis=0) - controls.mean(axis=0)
    decomposition = contrast_decomposition(contrast, spectrum)
    delta_sq = mahalanobis_distance_sq(contrast, spectrum, ridge)

    results = {
        "n_controls": int(controls.shape[0]),
        "n_cases": int(cases.shape[0]),
        "dimension": int(features.shape[1]),
        "control_label": values[0].item(),
        "case_label": values[1].item(),
        "eigenvalues": spectrum.eigenvalues,
        "effective_rank": r_eff,
        "operator_error_bound": bound,
        "identifiable_modes": k_hat,
        "delta_sq": delta_sq,
        "energies": decomposition.energies,
        "cumulative_energy": decomposition.cumulative,
        "modes_used": decomposition.modes_used,
    }
    if k_hat >= 3:
        gamma_fit = fit_power_law(spectrum.eigenvalues, (1, k_hat))
        beta_fit = fit_power_law(decomposition.energies, (1, k_hat))
        results["gamma_fit"] = gamma_fit
        results["beta_fit"] = beta_fit
        results["regime"] = classify_regime(beta_fit.slope) if beta_fit.slope > 0 else None
        if beta_fit.slope <= 0:
            report.warnings.append(
                "fitted energy decay is non-positive; regime classification skipped"
            )
    else:
        report.warnings.append(
            f"only {k_hat} identifiable mode(s); power-law fits need at least 3 "
            "and were skipped"
        )
    report.results = results

    out_dir.mkdir(parents=True, exist_ok=True)
    ks = np.arange(1, spectrum.dimension + 1)
    write_table(
        out_dir / "spectrum.csv",
        ["k", "eigenvalue"],
        np.column_stack([ks, spectrum.eigenvalues]),
    )
    ku = np.arange(1, decomposition.modes_used + 1)
    write_table(
        out_dir / "energy.csv",
        ["k", "alpha", "energy", "cumulative"],
        np.column_stack(
            [ku, decomposition.alphas[: decomposition.modes_used],
             decomposition.energies, decomposition.cumulative]
        ),
    )
    if plot:
        positive = spectrum.eigenvalues > 0
        write_line_chart(
            out_dir / "spectrum.svg",
            [("eigenvalues", ks[positive].tolist(), spectrum.eigenvalues[positive].tolist())],
            title="Covariance spectrum",
            x_label="mode k",
            y_label="eigenvalue",
            log_x=True,
            log_y=True,
        )
        pos_e = decomposition.energies > 0
        if np.any(pos_e):
            write_line_chart(
                out_dir / "energy.svg",
                [("mode energy", ku[pos_e].tolist(), decomposition.energies[pos_e].tolist())],
                title="Contrast energy by mode",
                x_label="mode k",
                y_label="energy",
                log_x=True,
                log_y=True,
            )
    report.params = res.finish()
    return report


def _parse_models(text: str) -> list[ModelSpec]:
    specs = []
    for token in str(text).split(","):
        token = token.strip()
        if not token:
            continue
        if ":" in token:
            kind, ridge = token.split(":", 1)
            try:
                specs.append(ModelSpec(kind=kind.strip(), ridge=float(ridge)))
            except ValueError:
                raise DomainError(f"cannot parse model spec {token!r}") from None
        else:
            specs.append(ModelSpec(kind=token))
    if not specs:
        raise DomainError("at least one model is required")
    return specs


def cmd_curve(args) -> Report:
    res = _Resolver(args)
    data_path = res.get("data", str, None)
    label_column = res.get("label_column", str, None)
    n_grid = res.get("n_grid", _int_list, None)
    if data_path is None or label_column is None or not n_grid:
        raise DomainError("curve requires --data, --label-column and --n-grid")
    models = _parse_models(res.get("models", str, "full_lda"))
    repeats = res.get("repeats", int, 5)
    holdout = res.get("holdout", float, 0.25)
    seed = res.get("seed", int, 0)
    horizons = res.get("horizons", _int_list, [])
    gamma_override = res.get("gamma", float, None)
    delta = res.get("delta", float, 0.05)
    safety = res.get("safety", float, 0.5)
    bound_c = res.get("c", float, 1.0)
    out_dir = Path(res.get("out_dir", str, "."))
    plot = res.get("plot", bool, False)

    report = new_report(__version__, "curve")
    report.inputs_digest[str(data_path)] = file_digest(data_path)
    _, features, labels = read_features_labels(data_path, label_column)

    # Two-stage default: pin gamma from spectral diagnostics, then fit
    # beta and c_d from the curve (gamma and k_scale are not separately
    # identifiable from accuracy data alone).
    fixed: dict[str, float] = {}
    if gamma_override is not None:
        fixed["gamma"] = gamma_override
    else:
        values = np.unique(labels)
        if values.size != 2:
            raise DataError(
                f"label column must carry exactly two values, got {values.tolist()}"
            )
        sigma = pooled_covariance(features[labels == values[1]], features[labels == values[0]])
        spectrum = eigendecompose(sigma)
        bound = operator_error_bound(spectrum, features.shape[0], delta, bound_c)
        k_hat = identifiable_mode_count(spectrum, bound, safety)
        if k_hat >= 3:
            slope = fit_power_law(spectrum.eigenvalues, (1, k_hat)).slope
            if slope < 0:
                report.warnings.append(
                    f"spectral gamma estimate {slope:.3f} is negative; clamped to 0"
                )
            fixed["gamma"] = max(slope, 0.0)
        else:
            report.warnings.append(
                f"only {k_hat} identifiable mode(s); gamma is fitted from the "
                "curve instead of the spectrum"
            )

    curve_results = []
    curves: list[tuple[ModelSpec, LearningCurve]] = []
    for spec in models:
        curve = learning_curve(
            features, labels, spec, n_grid, repeats=repeats,
            holdout_fraction=holdout, seed=seed,
        )
        curves.append((spec, curve))
        entry: dict = {"model": spec.label(), "curve": curve.points, "protocol": curve.protocol}
        try:
            fit = fit_zeta_law(curve, fixed=fixed)
            entry["fit"] = {
                "params": fit.params,
                "residual": fit.residual,
                "predictions": fit.predictions,
                "fixed": fit.fixed,
            }
            if horizons:
                entry["extrapolation"] = extrapolate(fit.params, horizons)
        except DegenerateFitError as exc:
            report.warnings.append(f"{spec.label()}: {exc}")
        curve_results.append(entry)
    report.results["models"] = curve_results

    if len(curves) > 1:
        crossings = []
        for i in range(len(curves)):
            for j in range(i + 1, len(curves)):
                spec_a, curve_a = curves[i]
                spec_b, curve_b = curves[j]
                crossover = detect_crossover(curve_a, curve_b)
                entry = {
                    "model_a": spec_a.label(),
                    "model_b": spec_b.label(),
                    "crossover": crossover,
                }
                if crossover is None:
                    diffs = curve_a.means - curve_b.means
                    if np.all(diffs >= 0):
                        entry["note"] = "model_a never trails model_b"
                    elif np.all(diffs <= 0):
                        entry["note"] = "model_b never trails model_a"
                    else:
                        entry["note"] = "no persistent flip"
                crossings.append(entry)
        report.results["crossovers"] = crossings

    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for spec, curve in curves:
        for point in curve.points:
            rows.append((spec.label(), point.n, point.mean_metric, point.sd_metric, point.repeats))
    with open(out_dir / "curve.csv", "w", encoding="utf-8") as handle:
        handle.write("model,n,mean_auc,sd_auc,repeats\n")
        for row in rows:
            handle.write(",".join(str(v) for v in row) + "\n")
    if plot:
        write_line_chart(
            out_dir / "curve.svg",
            [
                (spec.label(), [p.n for p in curve.points], [p.mean_metric for p in curve.points])
                for spec, curve in curves
            ],
            title="Learning curves",
            x_label="training size n",
            y_label="holdout AUC",
            log_x=True,
        )
    report.params = res.finish()
    return report


def _parse_kernel(text: str) -> KernelSpec:
    token = str(text).strip()
    if ":" in token:
        kind, bw = token.split(":", 1)
        try:
            return KernelSpec(kind=kind.strip(), bandwidth=float(bw))
        except ValueError:
            raise DomainError(f"cannot parse kernel spec {token!r}") from None
    return KernelSpec(kind=token)


def cmd_crossmodal(args) -> Report:
    res = _Resolver(args)
    x_path = res.get("x", str, None)
    y_path = res.get("y", str, None)
    if x_path is None or y_path is None:
        raise DomainError("crossmodal requires --x and --y")
    reg = res.get("reg", float, None)
    kernel = _parse_kernel(res.get("kernel", str, "linear"))
    n_perm = res.get("n_perm", int, 199)
    seed = res.get("seed", int, 0)
    top_k = res.get("top_k", int, 10)
    out_dir = Path(res.get("out_dir", str, "."))
    plot = res.get("plot", bool, False)

    report = new_report(__version__, "crossmodal")
    report.inputs_digest[str(x_path)] = file_digest(x_path)
    report.inputs_digest[str(y_path)] = file_digest(y_path)
    _, x = read_table(x_path)
    _, y = read_table(y_path)

    spectrum = whitened_operator(x, y, reg)
    sigma = spectrum.singular_values
    k = min(x.shape[1], y.shape[1], top_k)
    cca_result = cca(x, y, k, reg)
    hsic_value = hsic(x, y, kernel, kernel)
    p_value = hsic_permutation_test(x, y, kernel, kernel, n_perm=n_perm, seed=seed)

    results: dict = {
        "singular_values": sigma,
        "whitening_regularizer": spectrum.regularizer,
        "canonical_correlations": cca_result.correlations,
        "hsic": hsic_value,
        "hsic_p_value": p_value,
    }
    fit_count = int(np.sum(sigma > 1e-6 * sigma[0])) if sigma[0] > 0 else 0
    fit_count = min(fit_count, 50)
    if fit_count >= 3:
        results["cross_decay_fit"] = fit_power_law(sigma, (1, fit_count))
    else:
        report.warnings.append(
            f"only {fit_count} non-negligible singular value(s); decay fit skipped"
        )
    report.results = results

    out_dir.mkdir(parents=True, exist_ok=True)
    ks = np.arange(1, sigma.size + 1)
    write_table(out_dir / "singulars.csv", ["k", "sigma"], np.column_stack([ks, sigma]))
    if plot:
        positive = sigma > 0
        if np.any(positive):
            write_line_chart(
                out_dir / "singulars.svg",
                [("singular values", ks[positive].tolist(), sigma[positive].tolist())],
                title="Whitened cross-covariance spectrum",
                x_label="mode k",
                y_label="sigma",
                log_x=True,
                log_y=True,
            )
    report.params = res.finish()
    return report


def _parse_modalities(tokens) -> list[ModalitySpec]:
    specs = []
    for token in tokens:
        parts = str(token).split(":")
        if len(parts) != 3:
            raise DomainError(
                f"modality spec must be dim:noise:loading, got {token!r}"
            )
        try:
            specs.append(
                ModalitySpec(
                    dimension=int(parts[0]),
                    noise_scale=float(parts[1]),
                    loading_scale=float(parts[2]),
                )
            )
        except ValueError:
            raise DomainError(f"cannot parse modality spec {token!r}") from None
    return specs


def cmd_simulate(args) -> Report:
    res = _Resolver(args)
    kind = res.get("kind", str, "two-class")
    seed = res.get("seed", int, 0)
    prefix = res.get("out_prefix", str, "synthetic")
    report = new_report(__version__, "simulate")
    written: list[str] = []
    truth: dict = {"kind": kind, "seed": seed}

    if kind == "two-class":
        beta = res.get("beta", float, None)
        gamma = res.get("gamma", float, None)
        if beta is None or gamma is None:
            raise DomainError("two-class simulation requires --beta and --gamma")
        c_d = res.get("cd", float, 1.0)
        k_scale = res.get("k_scale", float, 1.0)
        p = res.get("p", int, 100)
        n = res.get("n", int, 1000)
        n0 = res.get("n0", int, n)
        n1 = res.get("n1", int, n)
        rotate = res.get("rotate", bool, False)
        params = ZetaLawParams(beta=beta, gamma=gamma, c_d=c_d, k_scale=k_scale)
        model = build_ground_truth(p, params, rotate=rotate, seed=seed)
        features, labels = sample_two_class(model, n0, n1, seed=seed)
        data_path = f"{prefix}_data.csv"
        headers = [f"f{i + 1}" for i in range(p)] + ["label"]
        write_table(data_path, headers, np.column_stack([features, labels]))
        written.append(data_path)
        truth.update(
            {
                "beta": beta,
                "gamma": gamma,
                "c_d": c_d,
                "k_scale": k_scale,
                "p": p,
                "n0": n0,
                "n1": n1,
                "rotate": rotate,
                "delta_sq_pop": model.delta_sq_pop,
                "auc_pop": predict_auc(model.delta_sq_pop),
            }
        )
    elif kind == "multimodal":
        shared_rank = res.get("shared_rank", int, 1)
        rows = res.get("rows", int, 1000)
        tokens = res.get("modality", list, None)
        if not tokens:
            raise DomainError(
                "multimodal simulation requires at least two --modality dim:noise:loading"
            )
        specs = _parse_modalities(tokens)
        sample = sample_multimodal(shared_rank, specs, rows, seed=seed)
        for m, data in enumerate(sample.datasets):
            path = f"{prefix}_modality{m}.csv"
            write_table(path, [f"m{m}_f{i + 1}" for i in range(data.shape[1])], data)
            written.append(path)
        truth.update(
            {
                "shared_rank": shared_rank,
                "rows": rows,
                "modalities": [
                    {
                        "dimension": s.dimension,
                        "noise_scale": s.noise_scale,
                        "loading_scale": s.loading_scale,
                        "attenuation": s.attenuation,
                    }
                    for s in sample.specs
                ],
                "population_correlations": {
                    f"{i}-{j}": rho
                    for (i, j), rho in sample.population_correlations.items()
                },
            }
        )
    else:
        raise DomainError(f"unknown simulation kind {kind!r}")

    sidecar = f"{prefix}_truth.json"
    Path(sidecar).write_text(
        json.dumps(jsonable(truth), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    written.append(sidecar)
    report.results = {"files": written, "ground_truth": truth}
    report.params = res.finish()
    return report


def cmd_dkw(args) -> Report:
    res = _Resolver(args)
    n = res.get("n", int, None)
    epsilon = res.get("epsilon", float, None)
    delta = res.get("delta", float, 0.05)
    data_path = res.get("data", str, None)
    quantile = res.get("quantile", float, None)
    column = res.get("column", str, None)
    if (n is None) == (epsilon is None):
        raise DomainError("dkw requires exactly one of --n or --epsilon")

    report = new_report(__version__, "dkw")
    if n is not None:
        report.results["epsilon"] = dkw_epsilon(n, delta)
        report.results["n"] = n
    else:
        report.results["n"] = dkw_sample_size(epsilon, delta)
        report.results["epsilon"] = epsilon
    if data_path is not None:
        if quantile is None:
            raise DomainError("--data requires --quantile")
        report.inputs_digest[str(data_path)] = file_digest(data_path)
        headers, table = read_table(data_path)
        col_idx = 0 if column is None else _column_index(headers, column, data_path)
        cdf = EmpiricalCdf(table[:, col_idx])
        lo, hi = centile_band(cdf, quantile, delta)
        report.results["centile_band"] = {
            "column": headers[col_idx],
            "n": cdf.n,
            "quantile": quantile,
            "lower": lo,
            "upper": hi,
            "point_estimate": cdf.quantile(quantile),
        }
    report.params = res.finish()
    return report


def _column_index(headers: list[str], column: str, path) -> int:
    if column not in headers:
        raise DataError(f"{path}: column {column!r} not found; columns are {headers}")
    return headers.index(column)


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetalaw",
        description="Spectral sample-complexity toolkit",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--report", help="also write the JSON report to this path")

    p = sub.add_parser("predict", help="closed-form accuracy law and its inversion")
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--cd", type=float)
    p.add_argument("--k-scale", dest="k_scale", type=float)
    p.add_argument("--margin", type=float)
    p.add_argument("--n", type=_int_list, help="comma-separated sample sizes")
    p.add_argument("--target-auc", dest="target_auc", type=float)
    common(p)
    p.set_defaults(handler=cmd_predict)

    p = sub.add_parser("analyze", help="spectral diagnostics of a labeled table")
    p.add_argument("--data")
    p.add_argument("--label-column", dest="label_column")
    p.add_argument("--ridge", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--safety", type=float)
    p.add_argument("--c", type=float, help="absolute constant in the error bound")
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--plot", action="store_const", const=True)
    common(p)
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("curve", help="empirical learning curves and law fitting")
    p.add_argument("--data")
    p.add_argument("--label-column", dest="label_column")
    p.add_argument("--models", help="comma list: full_lda, diagonal_lda, ridge_lda:RIDGE")
    p.add_argument("--n-grid", dest="n_grid", type=_int_list)
    p.add_argument("--repeats", type=int)
    p.add_argument("--holdout", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--horizons", type=_int_list, help="extrapolation sizes")
    p.add_argument("--gamma", type=float, help="pin gamma instead of the spectral stage")
    p.add_argument("--delta", type=float)
    p.add_argument("--safety", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--plot", action="store_const", const=True)
    common(p)
    p.set_defaults(handler=cmd_curve)

    p = sub.add_parser("crossmodal", help="whitened operator, CCA and HSIC")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--reg", type=float)
    p.add_argument("--kernel", help="linear, rbf, or rbf:BANDWIDTH")
    p.add_argument("--n-perm", dest="n_perm", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--top-k", dest="top_k", type=int)
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--plot", action="store_const", const=True)
    common(p)
    p.set_defaults(handler=cmd_crossmodal)

    p = sub.add_parser("simulate", help="synthetic data with a ground-truth sidecar")
    p.add_argument("--kind", choices=["two-class", "multimodal"])
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--cd", type=float)
    p.add_argument("--k-scale", dest="k_scale", type=float)
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int, help="samples per class (two-class)")
    p.add_argument("--n0", type=int)
    p.add_argument("--n1", type=int)
    p.add_argument("--rotate", action="store_const", const=True)
    p.add_argument("--shared-rank", dest="shared_rank", type=int)
    p.add_argument("--rows", type=int, help="rows for multimodal data")
    p.add_argument(
        "--modality", action="append", help="dim:noise:loading (repeatable)"
    )
    p.add_argument("--seed", type=int)
    p.add_argument("--out-prefix", dest="out_prefix")
    common(p)
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("dkw", help="uniform CDF band widths and sample sizes")
    p.add_argument("--n", type=int)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--data")
    p.add_argument("--quantile", type=float)
    p.add_argument("--column")
    common(p)
    p.set_defaults(handler=cmd_dkw)

    return parser


if __name__ == "__main__":
    sys.exit(main())
