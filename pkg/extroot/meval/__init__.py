from .evaluation import EvalGrid, coefficient_poly_eval, grid_eval, naive_eval, precision_demand
from .points import eval_at_point, fiber_coefficients
from .remainder_tree import AxisEvaluator


__all__ = [
    "AxisEvaluator",
    "EvalGrid",
    "coefficient_poly_eval",
    "eval_at_point",
    "fiber_coefficients",
    "grid_eval",
    "naive_eval",
    "precision_demand",
]
