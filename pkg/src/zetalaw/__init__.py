"""Spectral sample-complexity toolkit.

Predicts how diagnostic accuracy grows with sample size from the spectral
structure of the data, inverts the law into required sample sizes,
estimates the relevant spectra from data, and validates the predictions by
simulation on synthetic data with known spectral ground truth.
"""

__version__ = "0.1.0"

from .classify import (
    ContrastDecomposition,
    LdaModel,
    abnormality_score,
    contrast_decomposition,
    empirical_auc,
    fit_lda,
    mahalanobis_distance_sq,
    pooled_covariance,
)
from .crossmodal import (
    CcaResult,
    CrossModalSpectrum,
    DiseaseOperator,
    KernelSpec,
    cca,
    cross_covariance,
    disease_operator,
    disease_operator_rank,
    hardest_disease_sample_size,
    hsic,
    hsic_permutation_test,
    joint_sample_ratio,
    standardized_contrasts,
    whitened_operator,
)
from .curves import (
    Crossover,
    CurvePoint,
    LearningCurve,
    ModelSpec,
    ZetaFit,
    detect_crossover,
    extrapolate,
    fit_zeta_law,
    learning_curve,
)
from .errors import (
    ConditioningError,
    DataError,
    DegenerateFitError,
    DivergenceError,
    DomainError,
    ProtocolError,
    SizingError,
    ZetaLawError,
)
from .rng import derive_rng, seed_sequence
from .spectral import (
    EigenSpectrum,
    PowerLawFit,
    effective_rank,
    eigendecompose,
    fit_power_law,
    identifiable_mode_count,
    operator_error_bound,
    sample_covariance,
)
from .synth import (
    GroundTruthModel,
    ModalitySpec,
    MultimodalSample,
    build_ground_truth,
    sample_multimodal,
    sample_two_class,
)
from .univariate import (
    EmpiricalCdf,
    centile_band,
    dkw_epsilon,
    dkw_sample_size,
    uniform_sup_deviation,
)
from .zeta import (
    DIVERGENT_TO_ONE,
    UNREACHABLE,
    Regime,
    ZetaLawParams,
    auc_asymptote,
    classify_regime,
    harmonic_partial_sum,
    identifiable_modes,
    mahalanobis_signal,
    normal_cdf,
    normal_quantile,
    predict_auc,
    required_sample_size,
    riemann_zeta,
)
