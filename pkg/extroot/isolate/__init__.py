from .aberth import approximate_roots
from .clusters import budget_isolate, cluster_isolate, rouche_count, sort_roots
from .integer import IntegerOracle, isolate_integer_poly
from .refine import approximate_point, refine_root


__all__ = [
    "IntegerOracle",
    "approximate_point",
    "approximate_roots",
    "budget_isolate",
    "cluster_isolate",
    "isolate_integer_poly",
    "refine_root",
    "rouche_count",
    "sort_roots",
]
