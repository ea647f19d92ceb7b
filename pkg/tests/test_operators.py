import math

import numpy as np
import pytest
from scipy.special import gammaln

from src.errors import DomainError, EvaluationError, MomentExistenceError, TruncationCapError
from src.models import EvalOptions, FunctionSpec, OperatorParams
from src.moments import raw_moment_closed
from src.operators import (
    alpha_baskakov,
    apply_operator,
    error_curve,
    evaluate_operator,
    inner_integral,
)


def sqrt_at_origin(n_rho: float) -> float:
    """A(sqrt; 0) = Gamma(3/2) Gamma(n rho - 1/2) / Gamma(n rho), for every alpha."""
    return math.exp(gammaln(1.5) + gammaln(n_rho - 0.5) - gammaln(n_rho))


class TestInnerIntegral:
    def test_constant(self):
        params = OperatorParams(n=5, alpha=0.5, rho=0.7)
        assert inner_integral(params, 3, FunctionSpec.polynomial([2.5])) == pytest.approx(2.5)

    def test_quadrature_matches_exact_polynomial(self):
        params = OperatorParams(n=10, alpha=0.5, rho=1.5)
        square = FunctionSpec.from_callable(lambda t: t * t, growth=2.0, label="square")
        exact = inner_integral(params, 3, FunctionSpec.monomial(2))
        assert inner_integral(params, 3, square) == pytest.approx(exact, rel=1e-8)
        assert exact == pytest.approx((4.5 + 1) * (4.5 + 2) / (14.0 * 13.0))

    def test_sqrt_first_index(self):
        params = OperatorParams(n=20, alpha=0.3, rho=1.0)
        assert inner_integral(params, 0, FunctionSpec.named("sqrt")) == pytest.approx(
            sqrt_at_origin(20.0), rel=1e-9
        )

    def test_rejects_divergent_moment(self):
        with pytest.raises(MomentExistenceError):
            inner_integral(OperatorParams(n=2, alpha=1.0, rho=1.0), 0, FunctionSpec.monomial(2))


class TestEvaluateOperator:
    def test_reproduces_constants(self):
        params = OperatorParams(n=7, alpha=0.2, rho=0.9)
        for x in (0.0, 0.5, 3.0):
            assert apply_operator(params, FunctionSpec.polynomial([3.5]), x) == pytest.approx(
                3.5, abs=1e-15
            )

    def test_classical_first_moment(self, classical, tight):
        assert apply_operator(classical, FunctionSpec.monomial(1), 1.0, tight) == pytest.approx(
            21 / 19, rel=1e-12
        )

    def test_classical_second_moment(self, classical, tight):
        assert apply_operator(classical, FunctionSpec.monomial(2), 1.0, tight) == pytest.approx(
            502 / 342, rel=1e-11
        )

    def test_linearity(self, tight):
        params = OperatorParams(n=15, alpha=0.4, rho=2.0)
        x = 1.7
        e1 = apply_operator(params, FunctionSpec.monomial(1), x, tight)
        e2 = apply_operator(params, FunctionSpec.monomial(2), x, tight)
        combined = apply_operator(params, FunctionSpec.polynomial([0.0, 3.0, 2.0]), x, tight)
        assert combined == pytest.approx(2 * e2 + 3 * e1, rel=1e-11)

    @pytest.mark.parametrize("rho, expected", [(0.5, 0.2914), (1.0, 0.2020), (5.0, 0.0890)])
    def test_sqrt_at_origin(self, rho, expected):
        params = OperatorParams(n=20, alpha=0.1, rho=rho)
        value = apply_operator(params, FunctionSpec.named("sqrt"), 0.0)
        assert value == pytest.approx(sqrt_at_origin(20 * rho), rel=1e-8)
        assert value == pytest.approx(expected, abs=1e-3)

    def test_positivity_for_non_negative_quadratics(self):
        params = OperatorParams(n=5, alpha=0.0, rho=1.0)
        f = FunctionSpec.polynomial([1.0, 2.0, 3.0])
        for x in np.linspace(0.0, 5.0, 11):
            assert apply_operator(params, f, float(x)) > 0.0

    def test_diagnostics(self):
        params = OperatorParams(n=20, alpha=0.5, rho=1.0)
        result = evaluate_operator(params, FunctionSpec.named("expneg"), 1.0)
        assert result.terms > 20
        assert result.tail <= 1e-10
        assert result.abs_err == pytest.approx(abs(result.value - math.exp(-1.0)))

    def test_rejects_negative_x(self):
        with pytest.raises(DomainError):
            apply_operator(OperatorParams(n=5, alpha=1.0, rho=1.0), FunctionSpec.monomial(1), -1.0)

    def test_sqrt_needs_half_moment(self):
        with pytest.raises(MomentExistenceError):
            apply_operator(OperatorParams(n=1, alpha=1.0, rho=0.5), FunctionSpec.named("sqrt"), 1.0)

    @pytest.mark.parametrize("x", [0.5, 2.0, 3.0])
    def test_near_machine_precision_tolerance(self, x):
        params = OperatorParams(n=100, alpha=0.3, rho=1.0)
        opts = EvalOptions(series_eps=1e-14)
        assert apply_operator(params, FunctionSpec.monomial(2), x, opts) == pytest.approx(
            raw_moment_closed(params, x, 2), rel=1e-11
        )

    def test_truncation_cap(self):
        with pytest.raises(TruncationCapError):
            apply_operator(
                OperatorParams(n=20, alpha=1.0, rho=1.0),
                FunctionSpec.monomial(1),
                3.0,
                EvalOptions(k_max=5),
            )


class TestPointwiseVariant:
    def test_first_moment(self, tight):
        params = OperatorParams(n=10, alpha=0.4, rho=1.0)
        x = 1.5
        expected = x - 2 * (1 - 0.4) * x / 10
        assert alpha_baskakov(params, FunctionSpec.monomial(1), x, tight) == pytest.approx(
            expected, rel=1e-11
        )

    def test_classical_second_moment(self, tight):
        params = OperatorParams(n=10, alpha=1.0, rho=1.0)
        x = 0.8
        expected = x**2 + x * (1 + x) / 10
        assert alpha_baskakov(params, FunctionSpec.monomial(2), x, tight) == pytest.approx(
            expected, rel=1e-11
        )


class TestErrorCurve:
    def test_rows_follow_grid(self):
        params = OperatorParams(n=20, alpha=0.7, rho=1.0)
        grid = np.linspace(0.0, 2.0, 9)
        table = error_curve(params, FunctionSpec.polynomial([2.0, 5.0, 1.0]), grid)
        assert [row.x for row in table.rows] == list(grid)
        assert table.function == "poly:2,5,1"
        for row in table.rows:
            assert row.abs_err == abs(row.f_val - row.approx)

    def test_thread_count_does_not_change_results(self):
        params = OperatorParams(n=20, alpha=0.1, rho=0.5)
        grid = np.linspace(0.0, 1.5, 7)
        f = FunctionSpec.named("sqrt")
        serial = error_curve(params, f, grid, threads=1)
        parallel = error_curve(params, f, grid, threads=4)
        assert serial.rows == parallel.rows

    def test_max_error_and_argmax(self):
        params = OperatorParams(n=20, alpha=1.0, rho=1.0)
        table = error_curve(params, FunctionSpec.monomial(2), [0.5, 1.0, 2.0])
        errors = [row.abs_err for row in table.rows]
        assert table.max_err == max(errors)
        assert table.argmax_x == 2.0

    def test_failures_are_tagged(self):
        params = OperatorParams(n=20, alpha=1.0, rho=1.0)
        with pytest.raises(EvaluationError) as excinfo:
            error_curve(params, FunctionSpec.monomial(1), [0.0, 2.0, 3.0], EvalOptions(k_max=5))
        assert excinfo.value.x == 2.0
        assert excinfo.value.rho == 1.0
        assert isinstance(excinfo.value.cause, TruncationCapError)
        assert excinfo.value.exit_code == 4

    @pytest.mark.parametrize("grid", [[], [1.0, 1.0], [2.0, 1.0], [-0.5, 1.0]])
    def test_rejects_bad_grids(self, grid):
        with pytest.raises(DomainError):
            error_curve(OperatorParams(n=5, alpha=1.0, rho=1.0), FunctionSpec.monomial(1), grid)


PRESET_SETTINGS = [
    (20, alpha, rho)
    for alpha, rhos in ((0.1, (1.0, 5.0, 0.5)), (1.0, (1.0, 5.0, 0.5)), (0.7, (1.0, 5.0, 0.3)))
    for rho in rhos
]


class TestPolynomialAndQuadraturePaths:
    @pytest.mark.parametrize("n, alpha, rho", PRESET_SETTINGS)
    def test_agree_on_quadratic(self, n, alpha, rho):
        params = OperatorParams(n=n, alpha=alpha, rho=rho)
        exact = FunctionSpec.polynomial([2.0, 5.0, 1.0])
        numeric = FunctionSpec.from_callable(lambda t: t * t + 5.0 * t + 2.0, growth=2.0, label="quadratic")
        for x in (0.0, 0.5, 1.5, 3.0):
            assert apply_operator(params, numeric, x) == pytest.approx(
                apply_operator(params, exact, x), rel=1e-8
            )


class TestConvergenceInN:
    def test_sqrt_error_decreases(self):
        grid = np.linspace(0.0, 3.0, 16)
        f = FunctionSpec.named("sqrt")
        errors = [
            error_curve(OperatorParams(n=n, alpha=0.5, rho=1.0), f, grid).max_err
            for n in (10, 50, 250)
        ]
        assert errors[0] > errors[1] > errors[2]
