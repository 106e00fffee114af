from .compare import (
    ComparisonResult,
    ComparisonVerdict,
    SqrtSumInstance,
    aggregate_gap_report,
    compare,
    difference_ball,
    system_for,
)


__all__ = [
    "ComparisonResult",
    "ComparisonVerdict",
    "SqrtSumInstance",
    "aggregate_gap_report",
    "compare",
    "difference_ball",
    "system_for",
]
