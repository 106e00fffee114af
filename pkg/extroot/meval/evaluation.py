"""Approximate multipoint evaluation of integer polynomials on grids of complex balls."""

from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from loguru import logger

from ..arith.ball import BALL_ZERO, ComplexBall
from ..arith.dyadic import Dyadic, ceil_log2
from ..errors import PrecisionDemandUnmet
from ..poly.ball_poly import BallPolyUni
from ..poly.multivariate import IntPolyMulti
from .remainder_tree import AxisEvaluator


# work precision is doubled at most this many times before the inputs are blamed
_WORK_PREC_RETRIES = 3


@dataclass(frozen=True)
class EvalGrid:
    axes: tuple[tuple[ComplexBall, ...], ...]
    target_prec: int

    def __post_init__(self):
        if not self.axes or any(len(axis) == 0 for axis in self.axes):
            raise ValueError("every grid axis needs at least one point")

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(axis) for axis in self.axes)


def _axis_bits(grid: EvalGrid) -> int:
    """Gamma: every axis value has modulus below 2^Gamma."""
    return max(0, max(b.mag_upper().magnitude_bits() for axis in grid.axes for b in axis))


def precision_demand(f: IntPolyMulti, grid: EvalGrid) -> int:
    """Per-axis accuracy (bits) under which ``grid_eval`` meets its target.

    L + tau + n ceil(log2(d+1)) + ceil(log2(d+1)) + d (Gamma + 1) + ceil(log2 n) + 4.
    """
    n = len(grid.axes)
    d = max(1, f.total_degree)
    gamma = _axis_bits(grid)
    return (
        grid.target_prec
        + f.bitsize
        + n * ceil_log2(d + 1)
        + ceil_log2(d + 1)
        + d * (gamma + 1)
        + ceil_log2(max(1, n))
        + 4
    )


def _restrict(f: IntPolyMulti, width: int) -> dict[tuple[int, ...], int]:
    if width == f.n + 1:
        return dict(f.terms)
    if width == f.n:
        if f.deg_y > 0:
            raise ValueError("polynomial involves Y but the grid has no Y axis")
        return {m[:-1]: c for m, c in f.terms.items()}
    raise ValueError(f"grid has {width} axes, polynomial has {f.n} variables (+Y)")


def _eliminate(
    terms: dict[tuple[int, ...], ComplexBall],
    axes: Sequence[Sequence[ComplexBall]],
    prec: int,
    evaluator: AxisEvaluator,
) -> dict[tuple[int, ...], ComplexBall]:
    """Values of a ball-coefficient polynomial on the grid, eliminating the last axis first."""
    if not axes:
        return {(): terms.get((), BALL_ZERO)}
    last = axes[-1]
    by_prefix: dict[tuple[int, ...], dict[int, ComplexBall]] = defaultdict(dict)
    for monomial, c in terms.items():
        by_prefix[monomial[:-1]][monomial[-1]] = c
    # one axis call per (n-1)-prefix
    reduced: list[dict[tuple[int, ...], ComplexBall]] = [dict() for _ in last]
    for prefix, univariate in by_prefix.items():
        coeffs = [univariate.get(e, BALL_ZERO) for e in range(max(univariate) + 1)]
        for j, value in enumerate(evaluator(coeffs, last, prec)):
            reduced[j][prefix] = value
    out: dict[tuple[int, ...], ComplexBall] = {}
    for j, sub_terms in enumerate(reduced):
        for index, value in _eliminate(sub_terms, axes[:-1], prec, evaluator).items():
            out[index + (j,)] = value
    return out


def grid_eval(
    f: IntPolyMulti,
    grid: EvalGrid,
    evaluator: AxisEvaluator | None = None,
) -> dict[tuple[int, ...], ComplexBall]:
    """Balls of radius < 2^-L containing f at every grid point, indexed by grid position."""
    evaluator = evaluator or AxisEvaluator()
    width = len(grid.axes)
    terms = {m: ComplexBall.exact(c) for m, c in _restrict(f, width).items()}
    target = Dyadic.pow2(-grid.target_prec)
    d = max(1, f.total_degree)
    work_prec = grid.target_prec + f.bitsize + d * (_axis_bits(grid) + 1) + 2 * ceil_log2(d + 1) + 32
    for attempt in range(_WORK_PREC_RETRIES + 1):
        if not terms:
            return {index: BALL_ZERO for index in product(*(range(len(a)) for a in grid.axes))}
        values = _eliminate(terms, grid.axes, work_prec, evaluator)
        if all(v.radius < target for v in values.values()):
            return values
        logger.debug(f"grid_eval: radius above 2^-{grid.target_prec} at {work_prec} bits (attempt {attempt})")
        work_prec *= 2
    raise PrecisionDemandUnmet(precision_demand(f, grid), grid.target_prec)


def naive_eval(f: IntPolyMulti, point: Sequence[ComplexBall], work_prec: int) -> ComplexBall:
    """Per-point Horner evaluation, Y first and then X_n, ..., X_1."""
    terms = _restrict(f, len(point))

    def horner_last(sub: dict[tuple[int, ...], int], coords: Sequence[ComplexBall]) -> ComplexBall:
        if not coords:
            return ComplexBall.exact(sub.get((), 0))
        groups: dict[int, dict[tuple[int, ...], int]] = defaultdict(dict)
        for monomial, c in sub.items():
            groups[monomial[-1]][monomial[:-1]] = c
        acc = BALL_ZERO
        for e in range(max(groups, default=0), -1, -1):
            acc = acc.mul(coords[-1], work_prec)
            if e in groups:
                acc = acc.add(horner_last(groups[e], coords[:-1]), work_prec)
        return acc

    return horner_last(terms, list(point))


def coefficient_poly_eval(F: IntPolyMulti, x: Sequence[ComplexBall], L: int) -> BallPolyUni:
    """F_x(Y) with every coefficient ball of radius < 2^-L."""
    grid = EvalGrid(tuple((b,) for b in x), L)
    evaluator = AxisEvaluator()
    origin = (0,) * len(x)
    coeffs = []
    for i in range(F.deg_y + 1):
        f_i = F.coefficient_in_y(i)
        coeffs.append(grid_eval(f_i, grid, evaluator)[origin] if not f_i.is_zero else BALL_ZERO)
    return BallPolyUni(tuple(coeffs))
