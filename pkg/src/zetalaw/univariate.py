"""One-dimensional reference-range machinery.

Empirical CDFs, the uniform concentration band implied by the
Dvoretzky-Kiefer-Wolfowitz inequality (``P(sup|F_n - F| > eps) <=
2*exp(-2*n*eps**2)``), and the sample sizes needed to pin a centile down to
a given precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError, DomainError


@dataclass(frozen=True)
class EmpiricalCdf:
    """Right-continuous step CDF of an observed sample."""

    sorted_samples: np.ndarray
    n: int = field(init=False)

    def __post_init__(self) -> None:
        samples = np.asarray(self.sorted_samples, dtype=float)
        if samples.ndim != 1 or samples.size == 0:
            raise DomainError("EmpiricalCdf needs a non-empty 1-D sample")
        if not np.all(np.isfinite(samples)):
            raise DataError("samples contain non-finite values")
        samples = np.sort(samples)
        object.__setattr__(self, "sorted_samples", samples)
        object.__setattr__(self, "n", int(samples.size))

    def evaluate(self, x) -> np.ndarray | float:
        """F_n(x) = (#samples <= x) / n."""
        counts = np.searchsorted(self.sorted_samples, x, side="right")
        return counts / self.n

    def quantile(self, q: float) -> float:
        """Left-continuous inverse ``inf{x : F_n(x) >= q}`` (type-1).

        Arguments q <= 0 clamp to the smallest sample; q must be <= 1.
        """
        if q > 1.0:
            raise DomainError(f"quantile level must be <= 1, got {q}")
        if q <= 0.0:
            return float(self.sorted_samples[0])
        idx = math.ceil(self.n * q) - 1
        return float(self.sorted_samples[idx])


def dkw_epsilon(n: int, delta: float) -> float:
    """Half-width of the uniform CDF band holding with probability >= 1 - delta.

    ``eps = sqrt(ln(2/delta) / (2n))``; quartering the width costs a 4x
    larger sample.
    """
    n = _positive_int(n, "n")
    if not (0.0 < delta <= 1.0):
        raise DomainError(f"delta must lie in (0, 1], got {delta}")
    return math.sqrt(math.log(2.0 / delta) / (2.0 * n))


def dkw_sample_size(epsilon: float, delta: float) -> int:
    """Smallest n for which the uniform band of half-width ``epsilon`` holds
    with probability >= 1 - delta: ``ceil(ln(2/delta) / (2*epsilon**2))``."""
    if not (math.isfinite(epsilon) and epsilon > 0):
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    if not (0.0 < delta < 1.0):
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    return math.ceil(math.log(2.0 / delta) / (2.0 * epsilon ** 2))


def centile_band(cdf: EmpiricalCdf, q: float, delta: float) -> tuple[float, float]:
    """Interval of x-values whose empirical CDF is within the DKW band of q.

    ``lo = inf{x : F_n(x) >= q - eps}`` and ``hi = inf{x : F_n(x) >= q + eps}``
    with ``eps = dkw_epsilon(n, delta)``.  When ``q - eps <= 0`` the lower
    edge clamps to the smallest sample; when ``q + eps >= 1`` the upper edge
    is the +infinity sentinel.  The point-estimate quantile always lies
    inside the band.
    """
    if not (0.0 < q < 1.0):
        raise DomainError(f"quantile level must lie in (0, 1), got {q}")
    eps = dkw_epsilon(cdf.n, delta)
    lo = cdf.quantile(q - eps)
    hi = math.inf if q + eps >= 1.0 else cdf.quantile(q + eps)
    return lo, hi


def uniform_sup_deviation(samples) -> float:
    """Exact ``sup_x |F_n(x) - x|`` against the standard uniform CDF.

    The supremum of a step-vs-continuous difference is attained at the
    jumps, so it equals ``max_i max(i/n - U_(i), U_(i) - (i-1)/n)`` over the
    order statistics.
    """
    u = np.sort(np.asarray(samples, dtype=float))
    if u.ndim != 1 or u.size == 0:
        raise DomainError("need a non-empty 1-D sample")
    n = u.size
    i = np.arange(1, n + 1)
    return float(np.max(np.maximum(i / n - u, u - (i - 1) / n)))


def _positive_int(value, name: str) -> int:
    if isinstance(value, bool) or not (
        isinstance(value, int) or (isinstance(value, float) and value.is_integer())
    ):
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    value = int(value)
    if value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value}")
    return value
