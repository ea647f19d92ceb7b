from .bounds import (
    bound_c2,
    bound_c2_report,
    bound_interval,
    bound_lipschitz,
    bound_modulus,
    kfunctional_quantities,
    voronovskaja_limit,
    voronovskaja_report,
    voronovskaja_sequence,
    weighted_gap,
)
from .moduli import c2_norm, modulus, second_modulus

__all__ = [
    "bound_c2",
    "bound_c2_report",
    "bound_interval",
    "bound_lipschitz",
    "bound_modulus",
    "c2_norm",
    "kfunctional_quantities",
    "modulus",
    "second_modulus",
    "voronovskaja_limit",
    "voronovskaja_report",
    "voronovskaja_sequence",
    "weighted_gap",
]
