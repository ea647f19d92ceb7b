from .evaluate import (
    alpha_baskakov,
    apply_operator,
    error_curve,
    evaluate_operator,
    inner_integral,
    worker_count,
)

__all__ = [
    "alpha_baskakov",
    "apply_operator",
    "error_curve",
    "evaluate_operator",
    "inner_integral",
    "worker_count",
]
