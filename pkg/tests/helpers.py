"""Shared independent oracles for the test suites.

These deliberately avoid the library's own code paths: normal CDF values
come from scipy, zeta values from direct long summation, and the forward
accuracy law is re-evaluated point by point for brute-force inversion
checks.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtr


def zeta_direct_oracle(beta: float, terms: int = 10**7) -> float:
    """Direct summation of ``terms`` terms plus the integral tail bound
    ``integral_M^inf x**-beta dx = M**(1-beta)/(beta-1)``."""
    js = np.arange(1, terms + 1, dtype=float)
    tail = terms ** (1.0 - beta) / (beta - 1.0)
    return float(np.sum(js**-beta) + tail)


def forward_auc_oracle(ns, beta, gamma, c_d, k_scale=1.0) -> np.ndarray:
    """Forward accuracy law evaluated independently (scipy normal CDF)."""
    ns = np.asarray(ns, dtype=float)
    ks = np.floor(k_scale * ns ** (1.0 / (2.0 * (gamma + 1.0))) + 0.5).astype(np.int64)
    np.maximum(ks, 1, out=ks)
    kmax = int(ks.max())
    csum = np.concatenate(
        [[0.0], np.cumsum(np.arange(1, kmax + 1, dtype=float) ** -beta)]
    )
    return ndtr(np.sqrt(0.5 * c_d * csum[ks]))


def brute_force_min_n(
    target_auc: float, beta: float, gamma: float, c_d: float,
    k_scale: float = 1.0, n_max: int = 10**6,
):
    """Smallest n in 1..n_max whose forward-law accuracy reaches the target,
    found by exhaustive scan; None when no n in range reaches it."""
    auc = forward_auc_oracle(np.arange(1, n_max + 1), beta, gamma, c_d, k_scale)
    hits = np.flatnonzero(auc >= target_auc)
    return int(hits[0] + 1) if hits.size else None


def pairwise_auc_oracle(controls, cases) -> float:
    """AUC by exhaustive pair enumeration with half-credit ties."""
    controls = np.asarray(controls, dtype=float)
    cases = np.asarray(cases, dtype=float)
    wins = 0.0
    for c in cases:
        wins += np.sum(c > controls) + 0.5 * np.sum(c == controls)
    return wins / (controls.size * cases.size)
