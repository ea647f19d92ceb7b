"""
Grid estimates of moduli of continuity.

All estimates take offsets that are whole multiples of the grid step, so they
are lower bounds of the true suprema that tighten as the resolution grows.
"""

import logging

import numpy as np
from scipy.ndimage import maximum_filter1d, minimum_filter1d

from src.errors import DomainError
from src.models import FunctionSpec, Interval

logger = logging.getLogger(__name__)


def _offset_steps(iv: Interval, delta: float) -> int:
    if not delta > 0.0:
        raise DomainError(f"delta must be > 0, got {delta}")
    # The 1e-9 absorbs rounding when delta is an exact multiple of the step
    return int(np.floor(delta / iv.step + 1e-9))


def _grid_values(f: FunctionSpec, iv: Interval) -> np.ndarray:
    values = np.asarray(f.value(iv.grid()), dtype=float)
    if not np.all(np.isfinite(values)):
        raise DomainError(f"{f.label} is not finite on [{iv.lo:g}, {iv.hi:g}]")
    return values


def modulus(f: FunctionSpec, iv: Interval, delta: float) -> float:
    """omega(f; delta) = sup |f(x) - f(y)| over grid pairs with |x - y| <= delta."""
    steps = _offset_steps(iv, delta)
    values = _grid_values(f, iv)
    if steps == 0:
        return 0.0
    if steps + 1 >= values.size:
        return float(values.max() - values.min())

    # max - min over every run of steps + 1 consecutive points
    size = steps + 1
    spread = maximum_filter1d(values, size, mode="nearest") - minimum_filter1d(
        values, size, mode="nearest"
    )
    return float(spread.max())


def second_modulus(f: FunctionSpec, iv: Interval, delta: float) -> float:
    """omega_2(f; delta) = sup |f(x+h) - 2 f(x) + f(x-h)| over grid h <= delta."""
    steps = _offset_steps(iv, delta)
    values = _grid_values(f, iv)
    best = 0.0
    for j in range(1, min(steps, (values.size - 1) // 2) + 1):
        second = values[2 * j:] - 2.0 * values[j:-j] + values[: -2 * j]
        best = max(best, float(np.abs(second).max()))
    return best


def c2_norm(f: FunctionSpec, iv: Interval) -> float:
    """sup|f| + sup|f'| + sup|f''| over the grid, from analytic derivatives."""
    xs = iv.grid()
    values = _grid_values(f, iv)
    first = np.array([f.derivative(float(x), 1) for x in xs])
    second = np.array([f.derivative(float(x), 2) for x in xs])
    return float(np.abs(values).max() + np.abs(first).max() + np.abs(second).max())
