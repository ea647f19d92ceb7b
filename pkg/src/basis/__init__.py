from .core import (
    SeriesSum,
    alpha_weight,
    alpha_weight_direct,
    alpha_weights,
    baskakov_weights,
    binom_ext,
    kernel_density,
    kernel_raw_moment,
    kernel_raw_moments,
    truncation_index,
    weighted_series,
)

__all__ = [
    "SeriesSum",
    "alpha_weight",
    "alpha_weight_direct",
    "alpha_weights",
    "baskakov_weights",
    "binom_ext",
    "kernel_density",
    "kernel_raw_moment",
    "kernel_raw_moments",
    "truncation_index",
    "weighted_series",
]
