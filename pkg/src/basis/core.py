"""
Basis functions of the alpha-Baskakov Durrmeyer operators.

Two families are provided: the alpha-Baskakov weights p_{n,k}^alpha(x) and
the Beta-type kernel densities mu_{n,k}^rho(t). Both are evaluated in log
space so that n + k in the thousands neither overflows nor underflows.

The weight bracket splits into three signed terms,

    p_{n,k}^alpha(x) = alpha * l_k + (1 - alpha) * ((1 + x) * l_k - x * l_{k-2}),

with l_k = C(n+k-1, k) x^k / (1+x)^(n+k) the classical Baskakov weight. The
x^(k-1) prefactor is absorbed into each term, so x = 0 needs no division.
"""

import logging
import math
from typing import Callable, NamedTuple, Optional

import numpy as np
from scipy.special import betaln, gammaln, xlogy

from src.config import settings
from src.errors import DomainError, NonConvergenceError, TruncationCapError
from src.models import KernelIndex, OperatorParams

logger = logging.getLogger(__name__)

# Exact integer binomials up to this upper index; log-gamma beyond
_EXACT_BINOM_LIMIT = 1000

# Smallest look-ahead window appended after the truncation index
_MIN_WINDOW = 32

# The neglected weight mass must be this far below eps before K is read off
_TAIL_MARGIN = 1e-3


class SeriesSum(NamedTuple):
    value: float
    terms: int
    tail: float


def _check_point(value: float, name: str) -> None:
    if not value >= 0.0:
        raise DomainError(f"{name} must be >= 0, got {value}")


def _check_index(k: int) -> None:
    if int(k) != k or k < 0:
        raise DomainError(f"kernel index must be a non-negative integer, got {k}")


def binom_ext(a: int, b: int) -> float:
    """Binomial coefficient C(a, b), zero whenever b < 0 or b > a."""
    if b < 0 or b > a:
        return 0.0
    if a <= _EXACT_BINOM_LIMIT:
        return float(math.comb(a, b))
    return float(np.exp(gammaln(a + 1) - gammaln(b + 1) - gammaln(a - b + 1)))


def baskakov_weights(n: int, x: float, ks) -> np.ndarray:
    """Classical Baskakov weights l_{n,k}(x); indices k < 0 give 0."""
    ks = np.asarray(ks, dtype=float)
    out = np.zeros(ks.shape)
    valid = ks >= 0
    k = ks[valid]
    log_l = (
        gammaln(n + k)
        - gammaln(k + 1.0)
        - gammaln(n)
        + xlogy(k, x)
        - (n + k) * np.log1p(x)
    )
    out[valid] = np.exp(log_l)
    return out


def alpha_weights(params: OperatorParams, x: float, ks) -> np.ndarray:
    """Vectorised p_{n,k}^alpha(x) over an array of indices."""
    _check_point(x, "x")
    ks = np.asarray(ks, dtype=np.int64)
    l_k = baskakov_weights(params.n, x, ks)
    if params.alpha == 1.0:
        return l_k
    l_km2 = baskakov_weights(params.n, x, ks - 2)
    alpha = params.alpha
    return alpha * l_k + (1.0 - alpha) * ((1.0 + x) * l_k - x * l_km2)


def alpha_weight(params: OperatorParams, k: KernelIndex, x: float) -> float:
    """p_{n,k}^alpha(x) for a single index."""
    _check_index(k)
    return float(alpha_weights(params, x, [k])[0])


def alpha_weight_direct(params: OperatorParams, k: KernelIndex, x: float) -> float:
    """
    p_{n,k}^alpha(x) evaluated literally from the bracketed three-binomial form.

    Reference evaluation for moderate n + k only; x must be positive because
    the x^(k-1) prefactor is singular at 0 for k = 0.
    """
    _check_index(k)
    if not x > 0.0:
        raise DomainError(f"direct evaluation needs x > 0, got {x}")
    n, alpha = params.n, params.alpha
    c = binom_ext(n + k - 1, k)
    bracket = (
        alpha * x / (1.0 + x) * c
        - (1.0 - alpha) * (1.0 + x) * binom_ext(n + k - 3, k - 2)
        + (1.0 - alpha) * x * c
    )
    return x ** (k - 1) / (1.0 + x) ** (n + k - 1) * bracket


def kernel_density(params: OperatorParams, k: KernelIndex, t: float) -> float:
    """mu_{n,k}^rho(t) = t^(k rho) / (B(k rho + 1, n rho) (1+t)^(n rho + k rho + 1))."""
    _check_index(k)
    _check_point(t, "t")
    a = k * params.rho + 1.0
    b = params.n_rho
    log_mu = xlogy(a - 1.0, t) - betaln(a, b) - (a + b) * math.log1p(t)
    return float(np.exp(log_mu))


def kernel_raw_moments(params: OperatorParams, ks, m: int) -> np.ndarray:
    """int_0^inf t^m mu_{n,k}^rho(t) dt for every k in ks (a ratio of Beta functions)."""
    params.require_moment(m)
    ks = np.asarray(ks, dtype=float)
    out = np.ones(ks.shape)
    for j in range(m):
        out *= (ks * params.rho + 1.0 + j) / (params.n_rho - 1.0 - j)
    return out


def kernel_raw_moment(params: OperatorParams, k: KernelIndex, m: int) -> float:
    _check_index(k)
    if int(m) != m or m < 0:
        raise DomainError(f"moment order must be a non-negative integer, got {m}")
    if m == 0:
        return 1.0
    return float(kernel_raw_moments(params, [k], m)[0])


def _rounding_slack(n: int, x: float, weights: np.ndarray) -> np.ndarray:
    """
    Floating-point allowance on each partial sum of the weights.

    Each weight is exp of a log-gamma sum of size about L, so it carries a
    relative error near L ulp; summing k + 1 of them adds k + 1 ulp more.
    """
    k_top = len(weights) - 1
    log_size = gammaln(n + k_top) + (n + k_top) * math.log1p(x) + 1.0
    ks = np.arange(len(weights), dtype=float)
    return np.finfo(float).eps * (ks + 1.0 + log_size) * np.cumsum(np.abs(weights))


def truncation_index(
    params: OperatorParams,
    x: float,
    eps: float,
    k_max: Optional[int] = None,
) -> int:
    """
    Smallest K after which every partial sum of the weights stays within eps of 1.

    For alpha = 1 the weights are positive and this is the first K with
    sum_{k<=K} p_{n,k}(x) >= 1 - eps. For alpha < 1 some weights are
    negative and the partial sums may overshoot 1 near the mode, so the
    index is read off only once the remaining mass is provably negligible.

    Raises:
        TruncationCapError: if more than k_max terms would be needed.
    """
    _check_point(x, "x")
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    k_max = settings.k_max if k_max is None else k_max
    if x == 0.0:
        return 0

    n = params.n
    ratio = x / (1.0 + x)
    spread = math.sqrt(n * x * (1.0 + x))
    stop = min(k_max, int(n * x + 12.0 * spread) + _MIN_WINDOW)

    while True:
        weights = alpha_weights(params, x, np.arange(stop + 1))
        partial = np.cumsum(weights)
        slack = _rounding_slack(n, x, weights)

        # l_{k+1}/l_k = ratio (n+k)/(k+1) decreases in k, so past the mode the
        # remaining classical weights are dominated by a geometric series.
        decay = ratio * (n + stop) / (stop + 1.0)
        if decay < 1.0:
            l_last = baskakov_weights(n, x, [stop - 1, stop])
            beyond_l = l_last[1] * decay / (1.0 - decay)
            beyond = (1.0 + x) * beyond_l + x * (l_last.sum() + beyond_l)
            if beyond <= eps * _TAIL_MARGIN:
                off = np.flatnonzero(np.abs(1.0 - partial) > eps + slack)
                if off.size and off[-1] == stop:
                    raise NonConvergenceError(
                        f"weights at x={x:g} sum to {partial[-1]:.17g}, "
                        f"not within eps={eps:g} of 1"
                    )
                return int(off[-1]) + 1 if off.size else 0

        if stop >= k_max:
            raise TruncationCapError(k_max, float(partial[-1]), x)
        stop = min(k_max, 2 * stop)


def weighted_series(
    params: OperatorParams,
    x: float,
    values: Callable[[np.ndarray], np.ndarray],
    eps: float,
    k_max: Optional[int] = None,
) -> SeriesSum:
    """
    Truncated sum_k p_{n,k}^alpha(x) * values(k).

    The weights alone bound the tail only for bounded values, so after the
    truncation index further windows are appended until one contributes
    less than eps * max(1, |sum|). That last window is the tail estimate.
    """
    k_max = settings.k_max if k_max is None else k_max
    k_stop = truncation_index(params, x, eps, k_max)

    def block(lo: int, hi: int) -> np.ndarray:
        ks = np.arange(lo, hi + 1)
        weights = alpha_weights(params, x, ks)
        live = weights != 0.0
        contributions = np.zeros(ks.shape)
        if live.any():
            contributions[live] = weights[live] * values(ks[live])
        if not np.all(np.isfinite(contributions)):
            raise NonConvergenceError(f"non-finite series term at x={x:g}")
        return contributions

    total = float(block(0, k_stop).sum())
    window = max(_MIN_WINDOW, (k_stop + 1) // 8)
    while True:
        lo, hi = k_stop + 1, min(k_stop + window, k_max)
        if lo > hi:
            raise TruncationCapError(k_max, total, x)
        contributions = block(lo, hi)
        total += float(contributions.sum())
        k_stop = hi
        tail = float(np.abs(contributions).sum())
        if tail <= eps * max(1.0, abs(total)):
            logger.debug("series at x=%g: %d terms, tail %.3g", x, k_stop + 1, tail)
            return SeriesSum(total, k_stop + 1, tail)
