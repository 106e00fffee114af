from .diagnostics import (
    PointDiagnostics,
    SeparationDiagnostics,
    fit_growth_exponent,
    lsep_bound_ratio,
    measure_diagnostics,
    measure_point,
)
from .thresholds import (
    EvalBoundInput,
    eval_upper_threshold,
    eval_zero_threshold,
    separation_budget,
    sqrt_gap_threshold,
)


__all__ = [
    "EvalBoundInput",
    "PointDiagnostics",
    "SeparationDiagnostics",
    "eval_upper_threshold",
    "eval_zero_threshold",
    "fit_growth_exponent",
    "lsep_bound_ratio",
    "measure_diagnostics",
    "measure_point",
    "separation_budget",
    "sqrt_gap_threshold",
]
