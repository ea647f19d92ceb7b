import math
from pathlib import Path
from typing import Annotated, Callable, Literal, Optional, Union

import numpy as np
from numpy.polynomial import polynomial as npoly
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_validator,
    model_validator,
)

from src.config import settings
from src.errors import DomainError, MomentExistenceError

# Closed-form vs oracle agreement required of the moment formulas
MOMENT_TOLERANCE = 1e-8

# Slack allowed when comparing a measured error with a theorem bound
BOUND_SLACK = 1e-12

KernelIndex = Annotated[int, Field(ge=0, description="Series index k")]

Number = Union[float, np.ndarray]


class OperatorParams(BaseModel):
    """The triple (n, alpha, rho) indexing one operator A_n^{alpha,rho}."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Operator index")
    alpha: float = Field(..., ge=0.0, le=1.0, description="Shape parameter of the weights")
    rho: float = Field(..., gt=0.0, description="Durrmeyer kernel parameter")

    @property
    def n_rho(self) -> float:
        return self.n * self.rho

    def require_moment(self, order: float) -> None:
        """Raise unless the kernel moment of this order exists (n*rho > order)."""
        if not self.n_rho > order:
            raise MomentExistenceError(order, self.n_rho)

    def with_n(self, n: int) -> "OperatorParams":
        return OperatorParams(n=n, alpha=self.alpha, rho=self.rho)


def _sqrt_d1(t):
    return 0.5 / np.sqrt(t)


def _sqrt_d2(t):
    return -0.25 * np.power(t, -1.5)


# name -> (f, f', f'', growth exponent, bounded, sup over [0, inf))
_NAMED = {
    "sqrt": (np.sqrt, _sqrt_d1, _sqrt_d2, 0.5, False, math.inf),
    "expneg": (
        lambda t: np.exp(-t),
        lambda t: -np.exp(-t),
        lambda t: np.exp(-t),
        0.0,
        True,
        1.0,
    ),
    "ratio": (
        lambda t: t / (1.0 + t),
        lambda t: 1.0 / (1.0 + t) ** 2,
        lambda t: -2.0 / (1.0 + t) ** 3,
        0.0,
        True,
        1.0,
    ),
}

NamedFunction = Literal["sqrt", "expneg", "ratio"]


class FunctionSpec(BaseModel):
    """
    Target function of the operator.

    Either a polynomial given by ascending-power coefficients, one of the
    named builtins (sqrt, expneg, ratio), or an arbitrary scalar evaluator.
    Polynomials are integrated exactly against the kernel; everything else
    goes through quadrature.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: Literal["polynomial", "named", "callable"]
    coefficients: tuple[float, ...] = ()
    name: Optional[NamedFunction] = None
    evaluator: Optional[Callable[[float], float]] = Field(default=None, exclude=True)
    callable_growth: float = Field(default=0.0, ge=0.0)
    callable_bounded: bool = False
    callable_label: str = "callable"

    @model_validator(mode="after")
    def _check_kind(self) -> "FunctionSpec":
        if self.kind == "polynomial":
            if not self.coefficients:
                raise ValueError("polynomial needs at least one coefficient")
            if not all(math.isfinite(c) for c in self.coefficients):
                raise ValueError("polynomial coefficients must be finite")
        elif self.kind == "named" and self.name is None:
            raise ValueError("named function needs a name")
        elif self.kind == "callable" and self.evaluator is None:
            raise ValueError("callable function needs an evaluator")
        return self

    # Constructors

    @classmethod
    def polynomial(cls, coefficients) -> "FunctionSpec":
        return cls(kind="polynomial", coefficients=tuple(float(c) for c in coefficients))

    @classmethod
    def monomial(cls, degree: int) -> "FunctionSpec":
        return cls.polynomial([0.0] * degree + [1.0])

    @classmethod
    def named(cls, name: str) -> "FunctionSpec":
        return cls(kind="named", name=name)

    @classmethod
    def from_callable(
        cls,
        fn: Callable[[float], float],
        growth: float = 0.0,
        bounded: bool = False,
        label: str = "callable",
    ) -> "FunctionSpec":
        return cls(
            kind="callable",
            evaluator=fn,
            callable_growth=growth,
            callable_bounded=bounded,
            callable_label=label,
        )

    @classmethod
    def parse(cls, text: str) -> "FunctionSpec":
        """Parse the CLI syntax: sqrt | expneg | ratio | e<i> | poly:c0,c1,..."""
        text = text.strip()
        if text in _NAMED:
            return cls.named(text)
        if text.startswith("e") and text[1:].isdigit():
            return cls.monomial(int(text[1:]))
        if text.startswith("poly:"):
            try:
                coefficients = [float(c) for c in text[len("poly:"):].split(",")]
            except ValueError as e:
                raise DomainError(f"bad polynomial coefficients in {text!r}") from e
            return cls.polynomial(coefficients)
        raise DomainError(
            f"unknown function {text!r}; use sqrt, expneg, ratio, e<i> or poly:c0,c1,..."
        )

    # Properties

    @property
    def is_polynomial(self) -> bool:
        return self.kind == "polynomial"

    @property
    def degree(self) -> Optional[int]:
        if not self.is_polynomial:
            return None
        nonzero = [i for i, c in enumerate(self.coefficients) if c != 0.0]
        return nonzero[-1] if nonzero else 0

    @property
    def growth(self) -> float:
        """Exponent g with |f(t)| = O(t^g) as t -> inf."""
        if self.is_polynomial:
            return float(self.degree)
        if self.kind == "named":
            return _NAMED[self.name][3]
        return self.callable_growth

    @property
    def bounded(self) -> bool:
        if self.is_polynomial:
            return self.degree == 0
        if self.kind == "named":
            return _NAMED[self.name][4]
        return self.callable_bounded

    @property
    def label(self) -> str:
        if self.is_polynomial:
            return "poly:" + ",".join(f"{c:g}" for c in self.coefficients)
        if self.kind == "named":
            return self.name
        return self.callable_label

    # Evaluation

    def value(self, t: Number) -> Number:
        if self.is_polynomial:
            out = npoly.polyval(t, self.coefficients)
        elif self.kind == "named":
            out = _NAMED[self.name][0](t)
        elif np.ndim(t) == 0:
            out = self.evaluator(float(t))
        else:
            out = np.array([self.evaluator(float(s)) for s in np.asarray(t)], dtype=float)
        return float(out) if np.ndim(out) == 0 else np.asarray(out, dtype=float)

    def derivative(self, x: float, order: int) -> float:
        """Analytic first or second derivative at x."""
        if order not in (1, 2):
            raise DomainError(f"derivative order must be 1 or 2, got {order}")
        if self.is_polynomial:
            return float(npoly.polyval(x, npoly.polyder(self.coefficients, order)))
        if self.kind == "named":
            if self.name == "sqrt" and x <= 0.0:
                raise DomainError("sqrt is not differentiable at x = 0")
            return float(_NAMED[self.name][order](x))
        raise DomainError(f"no analytic derivatives for {self.label}")

    def sup_norm(self) -> float:
        """sup |f| over [0, inf) when known in closed form."""
        if self.is_polynomial:
            return abs(self.coefficients[0]) if self.degree == 0 else math.inf
        if self.kind == "named":
            return _NAMED[self.name][5]
        return math.inf


class EvalOptions(BaseModel):
    """Tolerances shared by series truncation and quadrature."""

    model_config = ConfigDict(frozen=True)

    series_eps: float = Field(default_factory=lambda: settings.series_eps, gt=0.0, lt=1.0)
    quad_rel_tol: float = Field(default_factory=lambda: settings.quad_rel_tol, gt=0.0, lt=1.0)
    k_max: int = Field(default_factory=lambda: settings.k_max, ge=1)


class OperatorValue(BaseModel):
    """A(f;x) together with its series diagnostics."""

    x: float
    f_val: float
    value: float
    terms: int = Field(..., description="Number of series terms summed")
    tail: float = Field(..., description="Magnitude of the last look-ahead window")

    @computed_field
    @property
    def abs_err(self) -> float:
        return abs(self.f_val - self.value)


class CurveRow(BaseModel):
    x: float
    f_val: float
    approx: float
    abs_err: float


class CurveTable(BaseModel):
    """Grid of (x, f(x), A(f;x), |f - A|) rows for one parameter setting."""

    params: OperatorParams
    function: str
    rows: list[CurveRow]

    @model_validator(mode="after")
    def _check_rows(self) -> "CurveTable":
        xs = [row.x for row in self.rows]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("curve grid must be strictly increasing")
        for row in self.rows:
            if not math.isclose(row.abs_err, abs(row.f_val - row.approx), rel_tol=1e-12, abs_tol=1e-15):
                raise ValueError(f"abs_err inconsistent at x={row.x}")
        return self

    @property
    def max_err(self) -> float:
        return max(row.abs_err for row in self.rows)

    @property
    def argmax_x(self) -> float:
        return max(self.rows, key=lambda row: row.abs_err).x


class MomentReport(BaseModel):
    """Closed-form vs oracle value of one raw or central moment at a point."""

    params: OperatorParams
    x: float
    order: int
    kind: Literal["raw", "central"]
    closed_form: float
    oracle: float
    informational: bool = Field(
        default=False,
        description="Closed form is only a leading-order expression; never flagged",
    )

    @computed_field
    @property
    def rel_gap(self) -> float:
        return abs(self.closed_form - self.oracle) / max(1.0, abs(self.oracle))

    @computed_field
    @property
    def mismatch(self) -> bool:
        return not self.informational and self.rel_gap > MOMENT_TOLERANCE


class FourthMomentStudy(BaseModel):
    """Oracle n^2 * mu_4 against the printed leading coefficient."""

    alpha: float
    rho: float
    x: float
    n_list: list[int]
    scaled_oracle: list[float]
    successive_ratios: list[float]
    printed_coefficient: float

    @computed_field
    @property
    def oracle_over_printed(self) -> float:
        if self.printed_coefficient == 0.0:
            return math.nan
        return self.scaled_oracle[-1] / self.printed_coefficient


class Interval(BaseModel):
    """Finite window [lo, hi] sampled at `resolution` points for sup estimates."""

    model_config = ConfigDict(frozen=True)

    lo: float = Field(..., ge=0.0)
    hi: float
    resolution: int = Field(default_factory=lambda: settings.modulus_resolution, ge=2)

    @model_validator(mode="after")
    def _check_order(self) -> "Interval":
        if not self.lo < self.hi:
            raise ValueError(f"interval needs lo < hi, got [{self.lo}, {self.hi}]")
        return self

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.resolution - 1)

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.resolution)


class BoundReport(BaseModel):
    """Measured |A(f;x) - f(x)| against a theorem's bound."""

    theorem: str
    x: float
    lhs: float
    rhs: float

    @computed_field
    @property
    def satisfied(self) -> bool:
        return self.lhs <= self.rhs + BOUND_SLACK


class KFunctionalReport(BaseModel):
    """Quantities of the K-functional estimate; the constant Q is unknown."""

    x: float
    lhs: float
    argument: float
    omega2: float
    min_term: float


class VoronovskajaReport(BaseModel):
    alpha: float
    rho: float
    x: float
    limit: float
    n_list: list[int]
    sequence: list[float]

    @computed_field
    @property
    def gaps(self) -> list[float]:
        return [abs(r - self.limit) for r in self.sequence]

    @computed_field
    @property
    def fitted_constant(self) -> float:
        return max(n * gap for n, gap in zip(self.n_list, self.gaps))


class ExperimentSpec(BaseModel):
    """One figure-style experiment: several rho values on a shared grid."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    function: FunctionSpec
    n: int = Field(..., ge=1)
    alpha: float = Field(..., ge=0.0, le=1.0)
    rho_list: tuple[float, ...]
    x_range: tuple[float, float, int] = (0.0, 3.0, 61)
    output_path: Optional[Path] = None

    @field_validator("rho_list")
    @classmethod
    def _check_rhos(cls, rhos: tuple[float, ...]) -> tuple[float, ...]:
        if not rhos:
            raise ValueError("rho_list must not be empty")
        return rhos

    @model_validator(mode="after")
    def _check_ranges(self) -> "ExperimentSpec":
        for rho in self.rho_list:
            if not rho > 0.0 or not self.n * rho > 2.0:
                raise ValueError(f"rho={rho} needs rho > 0 and n*rho > 2")
        lo, hi, points = self.x_range
        if not 0.0 <= lo < hi or points < 2:
            raise ValueError(f"x_range needs 0 <= lo < hi and points >= 2, got {self.x_range}")
        return self

    def grid(self) -> np.ndarray:
        lo, hi, points = self.x_range
        return np.linspace(lo, hi, points)

    def params_for(self, rho: float) -> OperatorParams:
        return OperatorParams(n=self.n, alpha=self.alpha, rho=rho)


class RhoSummary(BaseModel):
    rho: float
    max_err: float
    argmax_x: float


class ExperimentSummary(BaseModel):
    settings: dict
    per_rho: list[RhoSummary]
    argmin_rho: float
    tables: list[CurveTable] = Field(default_factory=list, exclude=True)

    @model_validator(mode="after")
    def _check_argmin(self) -> "ExperimentSummary":
        rhos = [entry.rho for entry in self.per_rho]
        if self.argmin_rho not in rhos:
            raise ValueError(f"argmin_rho {self.argmin_rho} not among {rhos}")
        for entry, table in zip(self.per_rho, self.tables):
            if entry.max_err != table.max_err:
                raise ValueError(f"max_err for rho={entry.rho} disagrees with its table")
        return self
