from .schemas import (
    BOUND_SLACK,
    MOMENT_TOLERANCE,
    BoundReport,
    CurveRow,
    CurveTable,
    EvalOptions,
    ExperimentSpec,
    ExperimentSummary,
    FourthMomentStudy,
    FunctionSpec,
    Interval,
    KernelIndex,
    KFunctionalReport,
    MomentReport,
    OperatorParams,
    OperatorValue,
    RhoSummary,
    VoronovskajaReport,
)

__all__ = [
    "BOUND_SLACK",
    "MOMENT_TOLERANCE",
    "BoundReport",
    "CurveRow",
    "CurveTable",
    "EvalOptions",
    "ExperimentSpec",
    "ExperimentSummary",
    "FourthMomentStudy",
    "FunctionSpec",
    "Interval",
    "KernelIndex",
    "KFunctionalReport",
    "MomentReport",
    "OperatorParams",
    "OperatorValue",
    "RhoSummary",
    "VoronovskajaReport",
]
