from . import analysis, evaluate, figures, moments

COMMAND_MODULES = (evaluate, moments, analysis, figures)

__all__ = ["COMMAND_MODULES", "analysis", "evaluate", "figures", "moments"]
