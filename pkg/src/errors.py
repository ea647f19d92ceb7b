"""
Exception hierarchy.

Each class carries the exit status the CLI reports for it.
"""

from typing import Optional


class ApproximationError(Exception):
    """Base class for every failure raised by the toolkit."""

    exit_code = 1


class DomainError(ApproximationError, ValueError):
    """An argument lies outside the domain of the operation."""

    exit_code = 3


class MomentExistenceError(DomainError):
    """The Beta integral behind a moment of this order diverges."""

    def __init__(self, order: float, n_rho: float):
        self.order = order
        self.n_rho = n_rho
        super().__init__(
            f"moment of order {order:g} requires n*rho > {order:g}, got n*rho = {n_rho:g}"
        )


class NonConvergenceError(ApproximationError, ArithmeticError):
    """A numerical procedure did not reach its tolerance."""

    exit_code = 4


class TruncationCapError(NonConvergenceError):
    def __init__(self, k_max: int, partial_sum: float, x: float):
        self.k_max = k_max
        self.partial_sum = partial_sum
        self.x = x
        super().__init__(
            f"series at x={x:g} not converged within k_max={k_max} terms "
            f"(partial sum {partial_sum:.17g})"
        )


class QuadratureError(NonConvergenceError):
    def __init__(self, k: int, value: float, abserr: float, message: str = ""):
        self.k = k
        self.value = value
        self.abserr = abserr
        detail = f": {message}" if message else ""
        super().__init__(
            f"quadrature for kernel index k={k} did not converge "
            f"(value {value:.6g}, error estimate {abserr:.3g}){detail}"
        )


class EvaluationError(ApproximationError):
    """Wraps a failure with the grid point (and rho) it happened at."""

    def __init__(self, cause: ApproximationError, x: float, rho: Optional[float] = None):
        self.cause = cause
        self.x = x
        self.rho = rho
        self.exit_code = cause.exit_code
        where = f"x={x:g}" if rho is None else f"rho={rho:g}, x={x:g}"
        super().__init__(f"evaluation failed at {where}: {cause}")


class FormulaMismatchError(ApproximationError):
    """A closed-form moment disagrees with the series oracle."""

    exit_code = 5
