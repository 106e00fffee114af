from .ball_poly import BallPolyUni, rouche_dominates
from .multivariate import IntPolyMulti, SizeProfile, polynomial_ring, truncate_in_y
from .parser import parse_polynomial, parse_univariate
from .univariate import (
    IntPolyUni,
    cauchy_root_radius,
    mahler_bracket,
    normalized_derivative,
    norms,
    squarefree_factors,
)


__all__ = [
    "BallPolyUni",
    "IntPolyMulti",
    "IntPolyUni",
    "SizeProfile",
    "cauchy_root_radius",
    "mahler_bracket",
    "normalized_derivative",
    "norms",
    "parse_polynomial",
    "parse_univariate",
    "polynomial_ring",
    "rouche_dominates",
    "squarefree_factors",
    "truncate_in_y",
]
