from .closed import (
    central_moment4_leading,
    central_moment_closed,
    central_moment_oracle,
    fourth_moment_numerator,
    fourth_moment_study,
    moment_report,
    raw_moment_closed,
    raw_moment_oracle,
)

__all__ = [
    "central_moment4_leading",
    "central_moment_closed",
    "central_moment_oracle",
    "fourth_moment_numerator",
    "fourth_moment_study",
    "moment_report",
    "raw_moment_closed",
    "raw_moment_oracle",
]
