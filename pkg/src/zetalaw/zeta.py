"""Closed-form learning-curve arithmetic for power-law spectra.

The forward law implemented here: with ``K`` reliably estimable modes the
squared class separation is ``c_d * sum_{k<=K} k**-beta``; the number of
reliable modes grows with sample size as ``K(n) = k_scale *
n**(1/(2*(gamma+1)))`` (rounded to nearest); and accuracy follows the
Gaussian link ``auc = Phi(sqrt(separation / 2))``.  The module provides the
truncated power-law sums, their zeta-function limit, the forward prediction,
its inversion to a required sample size, and the qualitative regime
classification based on the decay exponent.

Everything here is plain ``math``-module arithmetic.  The normal CDF, its
inverse, and the zeta limit are implemented locally (error function,
rational approximation plus one Newton step, Euler-Maclaurin tail) so the
numerical contract does not lean on any third-party special-function
library.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

from .errors import DivergenceError, DomainError

_SQRT2 = math.sqrt(2.0)
_BELOW_ONE = math.nextafter(1.0, 0.0)

# Above this mode count the incremental scan in required_sample_size hands
# over to an Euler-Maclaurin continuation of the partial sums.
_DIRECT_SCAN_LIMIT = 2_000_000


class _Answer:
    """Tagged non-numeric answer, printable in reports."""

    __slots__ = ("tag",)

    def __init__(self, tag: str):
        self.tag = tag

    def __repr__(self) -> str:
        return self.tag


#: Returned by auc_asymptote when the mode-energy sums grow without bound
#: (beta <= 1): accuracy tends to 1 in the infinite-sample limit.
DIVERGENT_TO_ONE = _Answer("DivergentToOne")

#: Returned by required_sample_size when no finite sample size reaches the
#: requested accuracy.
UNREACHABLE = _Answer("Unreachable")


class Regime(enum.Enum):
    """Qualitative signal structure implied by the decay exponent beta."""

    CONCENTRATED = "Concentrated"
    DISTRIBUTED = "Distributed"
    DIFFUSE = "Diffuse"


@dataclass(frozen=True)
class ZetaLawParams:
    """Parameters of a predicted learning curve.

    beta     decay exponent of per-mode signal energy (must be > 0)
    gamma    decay exponent of the covariance eigenvalues (>= 0)
    c_d      overall signal scale (>= 0)
    k_scale  proportionality constant in the mode-count law (> 0)
    """

    beta: float
    gamma: float
    c_d: float = 1.0
    k_scale: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise DomainError(f"beta must be a positive real, got {self.beta}")
        if not (math.isfinite(self.gamma) and self.gamma >= 0):
            raise DomainError(f"gamma must be non-negative, got {self.gamma}")
        if not (math.isfinite(self.c_d) and self.c_d >= 0):
            raise DomainError(f"c_d must be non-negative, got {self.c_d}")
        if not (math.isfinite(self.k_scale) and self.k_scale > 0):
            raise DomainError(f"k_scale must be positive, got {self.k_scale}")


def harmonic_partial_sum(beta: float, k: int) -> float:
    """Generalized harmonic number ``H_k = sum_{j=1..k} j**-beta``.

    Computed by direct summation (exactly rounded via ``math.fsum``), so the
    cost is O(k).  Strictly increasing in ``k``; always >= 1.
    """
    if not (math.isfinite(beta) and beta > 0):
        raise DomainError(f"beta must be a positive real, got {beta}")
    k = _as_count(k, "k")
    return math.fsum(j ** -beta for j in range(1, k + 1))


@functools.lru_cache(maxsize=128)
def _zeta_cached(beta: float, tol: float) -> float:
    # Partial sum length per the documented rule; the Euler-Maclaurin tail
    # below makes the analytic remainder beta/12 * M**-(beta+1) (next term
    # is O(beta**3 * M**-(beta+3))), far below tol for every M >= 20.
    log_m = -math.log(tol) / (beta - 1.0)
    if log_m >= math.log(1e6):
        m = 10 ** 6
    else:
        m = min(10 ** 6, max(20, math.ceil(math.exp(log_m))))
    partial = math.fsum(j ** -beta for j in range(1, m + 1))
    tail = (
        m ** (1.0 - beta) / (beta - 1.0)
        - 0.5 * m ** -beta
        + (beta / 12.0) * m ** (-beta - 1.0)
    )
    return partial + tail


def riemann_zeta(beta: float, tol: float = 1e-10) -> float:
    """``zeta(beta)`` for ``beta > 1`` to within ``tol`` of the true value.

    Uses a direct partial sum plus a first-order Euler-Maclaurin tail
    correction; effective accuracy bottoms out around 1e-13 (float64).
    Raises DivergenceError for ``beta <= 1``.
    """
    if not math.isfinite(beta):
        raise DomainError(f"beta must be finite, got {beta}")
    if beta <= 1:
        raise DivergenceError(
            f"zeta series diverges for beta <= 1 (got beta={beta})"
        )
    if not (math.isfinite(tol) and tol > 0):
        raise DomainError(f"tol must be positive, got {tol}")
    return _zeta_cached(float(beta), float(tol))


def identifiable_modes(n: float, gamma: float, k_scale: float = 1.0) -> int:
    """Number of reliable modes at sample size ``n``.

    ``round(k_scale * n**(1/(2*(gamma+1))))`` with round-half-up, clamped
    below at 1.  Non-decreasing in ``n``.
    """
    if not (math.isfinite(gamma) and gamma >= 0):
        raise DomainError(f"gamma must be non-negative, got {gamma}")
    if not (math.isfinite(k_scale) and k_scale > 0):
        raise DomainError(f"k_scale must be positive, got {k_scale}")
    if not n >= 1:
        raise DomainError(f"sample size must be >= 1, got {n}")
    exponent = 1.0 / (2.0 * (gamma + 1.0))
    return max(1, math.floor(k_scale * float(n) ** exponent + 0.5))


def mahalanobis_signal(params: ZetaLawParams, n: float) -> float:
    """Predicted squared separation at sample size ``n``: the truncated
    power-law sum scaled by ``c_d``.  Non-decreasing in ``n``."""
    k = identifiable_modes(n, params.gamma, params.k_scale)
    return params.c_d * harmonic_partial_sum(params.beta, k)


def predict_auc(delta_sq: float) -> float:
    """Gaussian-link accuracy ``Phi(sqrt(delta_sq / 2))``.

    Strictly increasing; 0 maps to 0.5; the result is clamped just below
    1.0 so the open upper bound survives float rounding.
    """
    if not (math.isfinite(delta_sq) and delta_sq >= 0):
        raise DomainError(f"delta_sq must be non-negative, got {delta_sq}")
    return min(normal_cdf(math.sqrt(0.5 * delta_sq)), _BELOW_ONE)


def auc_asymptote(params: ZetaLawParams):
    """Infinite-sample accuracy: ``Phi(sqrt(c_d * zeta(beta) / 2))`` for
    ``beta > 1``; DIVERGENT_TO_ONE when the sums grow without bound.

    With ``c_d == 0`` the curve is flat at 0.5 for any beta.
    """
    if params.c_d == 0:
        return 0.5
    if params.beta <= 1:
        return DIVERGENT_TO_ONE
    return predict_auc(params.c_d * riemann_zeta(params.beta))


def required_sample_size(target_auc: float, params: ZetaLawParams):
    """Smallest sample size whose forward prediction reaches ``target_auc``.

    Inverts the forward law in two steps: find the smallest mode count K
    whose cumulative energy meets the separation target, then the smallest
    n with ``identifiable_modes(n) >= K`` (closed form
    ``ceil((K/k_scale - 1/2)**(2*(gamma+1)))``, verified by a +/-1 scan).
    Returns UNREACHABLE when the accuracy target exceeds the asymptote
    (``beta > 1``) or when ``c_d == 0``.
    """
    if not (math.isfinite(target_auc) and 0.5 < target_auc < 1.0):
        raise DomainError(
            f"target_auc must lie strictly between 0.5 and 1, got {target_auc}"
        )
    if params.c_d == 0:
        return UNREACHABLE
    dsq_target = 2.0 * normal_quantile(target_auc) ** 2
    if params.beta > 1:
        limit = params.c_d * riemann_zeta(params.beta)
        if not dsq_target < limit:
            return UNREACHABLE
    k_needed = _smallest_mode_count(params.beta, dsq_target / params.c_d)
    if identifiable_modes(1, params.gamma, params.k_scale) >= k_needed:
        return 1
    exponent = 2.0 * (params.gamma + 1.0)
    base = k_needed / params.k_scale - 0.5
    approx = base ** exponent
    if math.isinf(approx):
        raise OverflowError(
            f"required sample size for K={k_needed} modes overflows float range"
        )
    n = max(1, math.ceil(approx))
    if n < 2 ** 53:  # exact float integers: the boundary scan is meaningful
        while n > 1 and identifiable_modes(n - 1, params.gamma, params.k_scale) >= k_needed:
            n -= 1
        while identifiable_modes(n, params.gamma, params.k_scale) < k_needed:
            n += 1
    return n


def classify_regime(beta: float, margin: float = 0.1) -> Regime:
    """Threshold classification of the decay exponent.

    Concentrated when ``beta > 1 + margin``, Diffuse when
    ``beta < 1 - margin``, Distributed in between.
    """
    if not (math.isfinite(beta) and beta > 0):
        raise DomainError(f"beta must be a positive real, got {beta}")
    if not (math.isfinite(margin) and margin >= 0):
        raise DomainError(f"margin must be non-negative, got {margin}")
    if abs(beta - 1.0) <= margin:
        return Regime.DISTRIBUTED
    if beta > 1.0:
        return Regime.CONCENTRATED
    return Regime.DIFFUSE


def normal_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function."""
    return 0.5 * math.erfc(-x / _SQRT2)


# Acklam's rational approximation to the normal quantile (peak relative
# error ~1.15e-9 before refinement).
_ACK_A = (
    -3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
    1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00,
)
_ACK_B = (
    -5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
    6.680131188771972e01, -1.328068155288572e01,
)
_ACK_C = (
    -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
    -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00,
)
_ACK_D = (
    7.784695709041462e-03, 3.224671290700398e-01,
    2.445134137142996e00, 3.754408661907416e00,
)
_ACK_SPLIT = 0.02425


def normal_quantile(p: float) -> float:
    """Standard normal quantile, accurate to well below 1e-10.

    Acklam's rational approximation refined by one Newton step on the
    exact CDF.
    """
    if not (math.isfinite(p) and 0.0 < p < 1.0):
        raise DomainError(f"probability must lie strictly in (0, 1), got {p}")
    a, b, c, d = _ACK_A, _ACK_B, _ACK_C, _ACK_D
    if p < _ACK_SPLIT:
        q = math.sqrt(-2.0 * math.log(p))
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / (
            (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
        )
    elif p <= 1.0 - _ACK_SPLIT:
        q = p - 0.5
        r = q * q
        x = (
            (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5])
            * q
            / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0)
        )
    else:
        q = math.sqrt(-2.0 * math.log1p(-p))
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / (
            (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
        )
    # One Newton step; 1 - p is exact for p >= 0.5, so work on the side
    # that avoids cancellation.
    pdf = math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)
    if pdf > 0.0:
        if p >= 0.5:
            err = 0.5 * math.erfc(x / _SQRT2) - (1.0 - p)
            x += err / pdf
        else:
            err = 0.5 * math.erfc(-x / _SQRT2) - p
            x -= err / pdf
    return x


def _as_count(value, name: str) -> int:
    if isinstance(value, bool) or not (
        isinstance(value, int) or (isinstance(value, float) and value.is_integer())
    ):
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    value = int(value)
    if value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value}")
    return value


def _smallest_mode_count(beta: float, target: float) -> int:
    """Smallest K with ``H_K^(beta) >= target`` (target assumed reachable)."""
    if target <= 1.0:
        return 1
    partial = 0.0
    k = 0
    while k < _DIRECT_SCAN_LIMIT:
        k += 1
        partial += k ** -beta
        if partial >= target:
            return k
    # Asymptotic continuation anchored at the last exact partial sum.  At
    # this scale single-term increments are below float resolution, so the
    # returned K is minimal up to the accuracy of the continuation.
    anchor_k, anchor_h = k, partial

    def h_em(x: float) -> float:
        if beta == 1.0:
            body = math.log(x / anchor_k)
        else:
            body = (x ** (1.0 - beta) - anchor_k ** (1.0 - beta)) / (1.0 - beta)
        corr = 0.5 * (x ** -beta - anchor_k ** -beta) + (beta / 12.0) * (
            anchor_k ** (-beta - 1.0) - x ** (-beta - 1.0)
        )
        return anchor_h + body + corr

    hi = 2.0 * anchor_k
    while h_em(hi) < target:
        hi *= 2.0
        if math.isinf(hi):
            raise OverflowError(
                "mode count needed for this target overflows float range"
            )
    lo = hi / 2.0
    while hi - lo > 1.0:
        mid = 0.5 * (lo + hi)
        if h_em(mid) >= target:
            hi = mid
        else:
            lo = mid
    return math.ceil(hi)
