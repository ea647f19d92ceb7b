"""
Quantitative approximation estimates for A_n^{alpha,rho}.

Each bound is checked pointwise: the measured error |A(f;x) - f(x)| comes
from operator evaluation, the right-hand side from the closed central
moments and a grid modulus on a window around x.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from src.errors import DomainError
from src.models import (
    BoundReport,
    EvalOptions,
    FunctionSpec,
    Interval,
    KFunctionalReport,
    OperatorParams,
    VoronovskajaReport,
)
from src.moments import central_moment_closed
from src.operators import error_curve, evaluate_operator, worker_count

from .moduli import c2_norm, modulus, second_modulus

logger = logging.getLogger(__name__)

# Voronovskaja runs sum to series_eps / (n rho - 1), but never below this
_MIN_SERIES_EPS = 1e-14


def _require_bounded(f: FunctionSpec) -> None:
    if not f.bounded:
        raise DomainError(f"{f.label} is not bounded on [0, inf)")


def bound_interval(params: OperatorParams, x: float) -> Interval:
    """[0, x + 3 sqrt(Delta_n(x)) + 1], where the operator mass at x concentrates."""
    delta2 = central_moment_closed(params, x, 2)
    return Interval(lo=0.0, hi=x + 3.0 * math.sqrt(delta2) + 1.0)


def _measured_error(
    params: OperatorParams, f: FunctionSpec, x: float, opts: Optional[EvalOptions]
) -> float:
    return evaluate_operator(params, f, x, opts).abs_err


def bound_modulus(
    params: OperatorParams,
    f: FunctionSpec,
    x: float,
    iv: Optional[Interval] = None,
    opts: Optional[EvalOptions] = None,
) -> BoundReport:
    """|A(f;x) - f(x)| <= 2 omega(f; sqrt(Delta_n(x))) for bounded f."""
    _require_bounded(f)
    delta2 = central_moment_closed(params, x, 2)
    iv = iv or bound_interval(params, x)
    rhs = 2.0 * modulus(f, iv, math.sqrt(delta2))
    return BoundReport(
        theorem="modulus",
        x=x,
        lhs=_measured_error(params, f, x, opts),
        rhs=rhs,
    )


def bound_lipschitz(
    params: OperatorParams,
    M: float,
    gamma: float,
    f: FunctionSpec,
    x: float,
    opts: Optional[EvalOptions] = None,
) -> BoundReport:
    """|A(f;x) - f(x)| <= M Delta_n(x)^(gamma/2) for f in Lip_M^gamma."""
    if not M > 0.0:
        raise DomainError(f"M must be > 0, got {M}")
    if not 0.0 < gamma <= 1.0:
        raise DomainError(f"gamma must lie in (0, 1], got {gamma}")
    delta2 = central_moment_closed(params, x, 2)
    return BoundReport(
        theorem="lipschitz",
        x=x,
        lhs=_measured_error(params, f, x, opts),
        rhs=M * delta2 ** (gamma / 2.0),
    )


def bound_c2(params: OperatorParams, f_c2_norm: float, x: float) -> float:
    """(|Gamma_n(x)| + Delta_n(x)/2) * ||f||_{C_B^2}."""
    if not f_c2_norm >= 0.0:
        raise DomainError(f"norm must be >= 0, got {f_c2_norm}")
    gamma_n = central_moment_closed(params, x, 1)
    delta2 = central_moment_closed(params, x, 2)
    return (abs(gamma_n) + delta2 / 2.0) * f_c2_norm


def bound_c2_report(
    params: OperatorParams,
    f: FunctionSpec,
    x: float,
    iv: Optional[Interval] = None,
    opts: Optional[EvalOptions] = None,
) -> BoundReport:
    _require_bounded(f)
    iv = iv or bound_interval(params, x)
    return BoundReport(
        theorem="c2",
        x=x,
        lhs=_measured_error(params, f, x, opts),
        rhs=bound_c2(params, c2_norm(f, iv), x),
    )


def kfunctional_quantities(
    params: OperatorParams,
    f: FunctionSpec,
    x: float,
    iv: Optional[Interval] = None,
    opts: Optional[EvalOptions] = None,
) -> KFunctionalReport:
    """
    Terms of the K-functional estimate at delta = |Gamma_n|/2 + Delta_n/4.

    The estimate carries an unspecified constant, so nothing is checked here.
    """
    _require_bounded(f)
    iv = iv or bound_interval(params, x)
    argument = (
        abs(central_moment_closed(params, x, 1)) / 2.0
        + central_moment_closed(params, x, 2) / 4.0
    )
    sup = f.sup_norm()
    if not math.isfinite(sup):
        sup = float(np.abs(f.value(iv.grid())).max())
    return KFunctionalReport(
        x=x,
        lhs=_measured_error(params, f, x, opts),
        argument=argument,
        omega2=second_modulus(f, iv, math.sqrt(argument)),
        min_term=min(1.0, argument) * sup,
    )


def voronovskaja_limit(alpha: float, rho: float, x: float, f1: float, f2: float) -> float:
    """lim (n rho - 1)(A(f;x) - f(x)) given f'(x) = f1 and f''(x) = f2."""
    return (x * (1.0 - 2.0 * rho * (1.0 - alpha)) + 1.0) * f1 + (rho + 1.0) * x * (x + 1.0) * f2 / 2.0


def voronovskaja_sequence(
    alpha: float,
    rho: float,
    f: FunctionSpec,
    x: float,
    n_list: Sequence[int],
    opts: Optional[EvalOptions] = None,
    threads: Optional[int] = None,
) -> list[float]:
    """r_n = (n rho - 1)(A(f;x) - f(x)) for each n, in input order."""
    if not n_list:
        raise DomainError("n_list must not be empty")
    opts = opts or EvalOptions()

    def scaled(n: int) -> float:
        params = OperatorParams(n=n, alpha=alpha, rho=rho)
        factor = params.n_rho - 1.0
        # the error is multiplied by n rho - 1, so the series must be that much tighter
        local = opts.model_copy(
            update={"series_eps": max(opts.series_eps / max(1.0, factor), _MIN_SERIES_EPS)}
        )
        value = evaluate_operator(params, f, x, local)
        return factor * (value.value - value.f_val)

    with ThreadPoolExecutor(max_workers=worker_count(threads)) as executor:
        return list(executor.map(scaled, n_list))


def voronovskaja_report(
    alpha: float,
    rho: float,
    f: FunctionSpec,
    x: float,
    n_list: Sequence[int],
    opts: Optional[EvalOptions] = None,
) -> VoronovskajaReport:
    limit = voronovskaja_limit(alpha, rho, x, f.derivative(x, 1), f.derivative(x, 2))
    sequence = voronovskaja_sequence(alpha, rho, f, x, n_list, opts)
    report = VoronovskajaReport(
        alpha=alpha,
        rho=rho,
        x=x,
        limit=limit,
        n_list=list(n_list),
        sequence=sequence,
    )
    logger.debug("voronovskaja %s at x=%g: fitted constant %.4g", f.label, x, report.fitted_constant)
    return report


def weighted_gap(
    params: OperatorParams,
    i: int,
    grid: Sequence[float],
    opts: Optional[EvalOptions] = None,
) -> float:
    """max over the grid of |A(e_i;x) - x^i| / (1 + x^2)."""
    if i not in (0, 1, 2):
        raise DomainError(f"weighted gap is defined for i in {{0, 1, 2}}, got {i}")
    params.require_moment(i)
    table = error_curve(params, FunctionSpec.monomial(i), grid, opts)
    return max(row.abs_err / (1.0 + row.x**2) for row in table.rows)
