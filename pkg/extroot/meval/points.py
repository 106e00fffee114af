"""Evaluation at algebraic grid points, refining the point until the requested accuracy is met."""

from typing import Callable, TypeVar

from loguru import logger

from ..arith.ball import ComplexBall
from ..configuration import ExtrootConfig
from ..data_types import AlgebraicPoint
from ..errors import OracleExhausted, PrecisionDemandUnmet
from ..isolate.refine import approximate_point
from ..poly.ball_poly import BallPolyUni
from ..poly.multivariate import IntPolyMulti
from .evaluation import EvalGrid, coefficient_poly_eval, grid_eval


T = TypeVar("T")


def _with_refinement(
    point: AlgebraicPoint,
    L: int,
    config: ExtrootConfig,
    evaluate: Callable[[tuple[ComplexBall, ...]], T],
) -> T:
    bits = max(config.start_prec, L)
    while True:
        balls = approximate_point(point, bits, config)
        try:
            return evaluate(balls)
        except PrecisionDemandUnmet as e:
            bits = max(2 * bits, e.required_bits)
            logger.debug(f"refining point {point.index} to {bits} bits for 2^-{L} accuracy")
        if bits > config.threshold_ceiling:
            raise OracleExhausted(bits, config.threshold_ceiling)


def eval_at_point(f: IntPolyMulti, point: AlgebraicPoint, L: int, config: ExtrootConfig | None = None) -> ComplexBall:
    """Ball of radius < 2^-L around f(x) for a Y-free ``f``."""
    config = config or ExtrootConfig()
    origin = (0,) * point.n

    def evaluate(balls: tuple[ComplexBall, ...]) -> ComplexBall:
        return grid_eval(f, EvalGrid(tuple((b,) for b in balls), L))[origin]

    return _with_refinement(point, L, config, evaluate)


def fiber_coefficients(
    F: IntPolyMulti, point: AlgebraicPoint, L: int, config: ExtrootConfig | None = None
) -> BallPolyUni:
    """F_x(Y) with every coefficient ball of radius < 2^-L."""
    config = config or ExtrootConfig()
    return _with_refinement(point, L, config, lambda balls: coefficient_poly_eval(F, balls, L))
