"""
Moments of A_n^{alpha,rho}.

Closed forms for A(e_i; x), i <= 2, and for the first two central moments
Gamma_n(x) = A(t - x; x) and Delta_n(x) = A((t - x)^2; x), together with a
series oracle that sums exact kernel moments against the weights. The
oracle does not use any of the closed-form algebra, so agreement between
the two is a real check of the formulas.
"""

import logging
import math
from typing import Literal, Optional, Sequence

import numpy as np

from src.basis import kernel_raw_moments, weighted_series
from src.errors import DomainError, FormulaMismatchError
from src.models import (
    EvalOptions,
    FourthMomentStudy,
    MomentReport,
    OperatorParams,
)

logger = logging.getLogger(__name__)


def _check_x(x: float) -> None:
    if not x >= 0.0:
        raise DomainError(f"x must be >= 0, got {x}")


def raw_moment_closed(params: OperatorParams, x: float, i: int) -> float:
    """A(e_i; x) for i in {0, 1, 2}."""
    _check_x(x)
    if i not in (0, 1, 2):
        raise DomainError(f"closed raw moments exist for i in {{0, 1, 2}}, got {i}")
    params.require_moment(i)
    n, alpha, rho = params.n, params.alpha, params.rho
    nr = params.n_rho

    if i == 0:
        return 1.0
    if i == 1:
        return (rho * n * x - 2.0 * rho * (1.0 - alpha) * x + 1.0) / (nr - 1.0)
    quadratic = rho**2 * n**2 + (4.0 * alpha - 3.0) * rho**2 * n
    linear = rho**2 * (n + 4.0 * alpha - 4.0) + 3.0 * rho * n - 6.0 * rho * (1.0 - alpha)
    return (x**2 * quadratic + x * linear + 2.0) / ((nr - 1.0) * (nr - 2.0))


def central_moment_closed(params: OperatorParams, x: float, order: int) -> float:
    """Gamma_n(x) for order 1, Delta_n(x) for order 2."""
    _check_x(x)
    if order not in (1, 2):
        raise DomainError(f"closed central moments exist for orders 1 and 2, got {order}")
    params.require_moment(order)
    alpha, rho = params.alpha, params.rho
    nr = params.n_rho

    if order == 1:
        return (x * (1.0 - 2.0 * rho * (1.0 - alpha)) + 1.0) / (nr - 1.0)
    quadratic = nr * (rho + 1.0) - 8.0 * rho * (1.0 - alpha) + 2.0
    linear = nr * (rho + 1.0) - 4.0 * rho**2 * (1.0 - alpha) - 6.0 * rho * (1.0 - alpha) + 4.0
    return (x**2 * quadratic + x * linear + 2.0) / ((nr - 1.0) * (nr - 2.0))


def fourth_moment_numerator(alpha: float, rho: float, x: float) -> float:
    return (
        rho**2 * (1.0 + rho) ** 2 * x**2 * (1.0 + x) ** 2
        - 96.0 * (1.0 - alpha) * rho**3 * x**3
        + 24.0 * rho**3 * x**3
    )


def central_moment4_leading(params: OperatorParams, x: float) -> float:
    """
    Leading-order expression for A((t - x)^4; x), without the O(1/n^3) remainder.

    Informational only: it is not an exact fourth moment.
    """
    _check_x(x)
    params.require_moment(4)
    nr = params.n_rho
    denominator = (nr - 1.0) * (nr - 2.0) * (nr - 3.0) * (nr - 4.0)
    return fourth_moment_numerator(params.alpha, params.rho, x) * params.n**2 / denominator


def _options(opts: Optional[EvalOptions]) -> EvalOptions:
    return opts or EvalOptions()


def raw_moment_oracle(
    params: OperatorParams, x: float, m: int, opts: Optional[EvalOptions] = None
) -> float:
    """sum_k p_{n,k}^alpha(x) * int t^m mu_{n,k}^rho(t) dt, truncated to series_eps."""
    _check_x(x)
    if int(m) != m or m < 0:
        raise DomainError(f"moment order must be a non-negative integer, got {m}")
    params.require_moment(m)
    opts = _options(opts)
    series = weighted_series(
        params,
        x,
        lambda ks: kernel_raw_moments(params, ks, m),
        opts.series_eps,
        opts.k_max,
    )
    return series.value


def central_moment_oracle(
    params: OperatorParams, x: float, m: int, opts: Optional[EvalOptions] = None
) -> float:
    """
    A((t - x)^m; x) from exact kernel moments.

    The binomial expansion sum_j C(m, j) (-x)^(m-j) E_k[t^j] is applied per
    index k before weighting, so the large raw moments never cancel against
    each other at the level of the whole series.
    """
    _check_x(x)
    if int(m) != m or m < 0:
        raise DomainError(f"moment order must be a non-negative integer, got {m}")
    params.require_moment(m)
    opts = _options(opts)

    def centred(ks: np.ndarray) -> np.ndarray:
        total = np.zeros(np.shape(ks))
        for j in range(m + 1):
            total += math.comb(m, j) * (-x) ** (m - j) * kernel_raw_moments(params, ks, j)
        return total

    return weighted_series(params, x, centred, opts.series_eps, opts.k_max).value


def moment_report(
    params: OperatorParams,
    x: float,
    order: int,
    kind: Literal["raw", "central"] = "raw",
    opts: Optional[EvalOptions] = None,
    strict: bool = False,
) -> MomentReport:
    """
    Compare a closed-form moment with the oracle.

    Central order 4 compares the leading-order expression and is reported
    as informational. A disagreement beyond tolerance is logged; with
    `strict` it raises FormulaMismatchError instead.
    """
    informational = False
    if kind == "raw":
        closed = raw_moment_closed(params, x, order)
        oracle = raw_moment_oracle(params, x, order, opts)
    elif kind == "central" and order == 4:
        closed = central_moment4_leading(params, x)
        oracle = central_moment_oracle(params, x, 4, opts)
        informational = True
    elif kind == "central":
        closed = central_moment_closed(params, x, order)
        oracle = central_moment_oracle(params, x, order, opts)
    else:
        raise DomainError(f"kind must be 'raw' or 'central', got {kind!r}")

    report = MomentReport(
        params=params,
        x=x,
        order=order,
        kind=kind,
        closed_form=closed,
        oracle=oracle,
        informational=informational,
    )
    if report.mismatch:
        message = (
            f"formula mismatch: {kind} moment of order {order} at x={x:g} "
            f"(n={params.n}, alpha={params.alpha:g}, rho={params.rho:g}): "
            f"closed form {closed:.17g}, oracle {oracle:.17g}, rel gap {report.rel_gap:.3g}"
        )
        logger.warning(message)
        if strict:
            raise FormulaMismatchError(message)
    return report


def fourth_moment_study(
    alpha: float,
    rho: float,
    x: float,
    n_list: Sequence[int],
    opts: Optional[EvalOptions] = None,
) -> FourthMomentStudy:
    """
    Track n^2 * A((t - x)^4; x) along n_list.

    The leading expression predicts the limit numerator / rho^4; the study
    records how far the oracle's limit sits from it without asserting equality.
    """
    if not n_list:
        raise DomainError("n_list must not be empty")
    scaled = []
    for n in n_list:
        params = OperatorParams(n=n, alpha=alpha, rho=rho)
        scaled.append(n**2 * central_moment_oracle(params, x, 4, opts))
    ratios = [b / a for a, b in zip(scaled, scaled[1:])]
    printed = fourth_moment_numerator(alpha, rho, x) / rho**4

    study = FourthMomentStudy(
        alpha=alpha,
        rho=rho,
        x=x,
        n_list=list(n_list),
        scaled_oracle=scaled,
        successive_ratios=ratios,
        printed_coefficient=printed,
    )
    logger.info(
        "fourth moment at alpha=%g rho=%g x=%g: n^2 mu_4 -> %.6g, leading coefficient %.6g (ratio %.4g)",
        alpha, rho, x, scaled[-1], printed, study.oracle_over_printed,
    )
    return study
