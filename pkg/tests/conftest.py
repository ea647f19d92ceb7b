import pytest

from src.models import EvalOptions, OperatorParams


@pytest.fixture
def tight() -> EvalOptions:
    """Series tolerance close to double precision."""
    return EvalOptions(series_eps=1e-13)


@pytest.fixture
def classical() -> OperatorParams:
    """alpha = rho = 1 reduces to the classical Baskakov-Durrmeyer operator."""
    return OperatorParams(n=20, alpha=1.0, rho=1.0)
