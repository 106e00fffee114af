"""Measured separation quantities of the fibers F_x and their multiplicity-weighted sums.

For every grid point x with fiber F_x of degree ell and isolated roots y (multiplicity m_y):

    log M(F_x)  = log2 |lc(F_x)| + sum_y m_y log2 max(1, |y|)
    lGDisc(F_x) = sum_y m_y |log2 |F_x^[m_y](y)||
    lsep(F_x)   = sum_y m_y |log2 sep(y)|,  sep(y) = distance to the nearest other root

Logs are base 2 and taken at a fixed mpmath precision on disc centers.
"""

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from loguru import logger
from mpmath.ctx_mp import MPContext

from ..arith.ball import ComplexBall
from ..arith.convert import dyadic_from_mpf, new_context, to_mpc, to_mpf
from ..arith.dyadic import ZERO, Dyadic
from ..configuration import ExtrootConfig
from ..data_types import AlgebraicPoint, IsolatedRoot
from ..errors import InsufficientPrecision
from ..meval.points import fiber_coefficients
from ..poly.multivariate import IntPolyMulti


@dataclass(frozen=True)
class PointDiagnostics:
    index: tuple[int, ...]
    mult: int
    degree: int
    log_mahler: Dyadic
    lgdisc: Dyadic
    lsep: Dyadic

    def bound_ratio(self) -> float:
        """lsep / (ell^2 + ell * max(0, log M) + lGDisc); 0 for fibers without roots."""
        ell = self.degree
        if ell <= 0:
            return 0.0
        denominator = ell * ell + ell * max(0.0, float(self.log_mahler)) + float(self.lgdisc)
        return float(self.lsep) / denominator


@dataclass
class SeparationDiagnostics:
    prec: int
    per_point: list[PointDiagnostics] = field(default_factory=list)
    log_mahler_sum: Dyadic = ZERO
    lgdisc_sum: Dyadic = ZERO
    lsep_sum: Dyadic = ZERO

    def add(self, entry: PointDiagnostics):
        self.per_point.append(entry)
        self.log_mahler_sum = self.log_mahler_sum + entry.log_mahler * entry.mult
        self.lgdisc_sum = self.lgdisc_sum + entry.lgdisc * entry.mult
        self.lsep_sum = self.lsep_sum + entry.lsep * entry.mult

    def bound_ratios(self) -> list[float]:
        return lsep_bound_ratio(self)


def lsep_bound_ratio(diagnostics: SeparationDiagnostics) -> list[float]:
    return [entry.bound_ratio() for entry in diagnostics.per_point]


def _log2_abs(ctx: MPContext, value: ComplexBall, what: str):
    if not value.excludes_zero():
        raise InsufficientPrecision(f"{what} ball contains 0: {value}")
    return ctx.log(abs(to_mpc(ctx, value)), 2)


def _separation(ctx: MPContext, roots: Sequence[IsolatedRoot], i: int):
    """Distance from root i to its nearest sibling (center to center)."""
    me = roots[i].disc
    nearest = min(me.distance_sq(other.disc) for j, other in enumerate(roots) if j != i)
    # centers stand in for roots only when the discs are small against the gap
    if me.radius * me.radius * 16 >= nearest:
        raise InsufficientPrecision(f"disc radius {me.radius} not below a quarter of the root separation")
    return ctx.sqrt(to_mpf(ctx, nearest))


def measure_point(
    F: IntPolyMulti,
    point: AlgebraicPoint,
    roots: Sequence[IsolatedRoot],
    prec: int,
    config: ExtrootConfig | None = None,
) -> PointDiagnostics:
    config = config or ExtrootConfig()
    degree = sum(r.multiplicity for r in roots)
    if not roots:
        return PointDiagnostics(point.index, point.mult, degree, ZERO, ZERO, ZERO)
    ctx = new_context(prec)
    fiber = fiber_coefficients(F, point, prec + 8, config).truncate(degree)
    work_prec = prec + 2 * degree + 16
    log_mahler = _log2_abs(ctx, fiber.leading, "leading coefficient")
    lgdisc = ctx.zero
    lsep = ctx.zero
    for i, root in enumerate(roots):
        m = root.multiplicity
        modulus = abs(to_mpc(ctx, root.disc))
        if modulus > 1:
            log_mahler += m * ctx.log(modulus, 2)
        value = fiber.normalized_derivative(m).evaluate(root.disc, work_prec)
        lgdisc += m * abs(_log2_abs(ctx, value, f"F_x^[{m}] at root {i}"))
        if len(roots) > 1:
            lsep += m * abs(ctx.log(_separation(ctx, roots, i), 2))
    return PointDiagnostics(
        point.index,
        point.mult,
        degree,
        dyadic_from_mpf(log_mahler),
        dyadic_from_mpf(lgdisc),
        dyadic_from_mpf(lsep),
    )


def measure_diagnostics(
    F: IntPolyMulti,
    grid: Sequence[AlgebraicPoint],
    roots_per_point: Mapping[tuple[int, ...], Sequence[IsolatedRoot]],
    prec: int,
    config: ExtrootConfig | None = None,
) -> SeparationDiagnostics:
    """Per-point measurements and their multiplicity-weighted sums over the grid."""
    diagnostics = SeparationDiagnostics(prec)
    for point in grid:
        diagnostics.add(measure_point(F, point, roots_per_point.get(point.index, ()), prec, config))
    logger.info(
        f"diagnostics: sum log M = {float(diagnostics.log_mahler_sum):.3f}, "
        f"sum lGDisc = {float(diagnostics.lgdisc_sum):.3f}, sum lsep = {float(diagnostics.lsep_sum):.3f}"
    )
    return diagnostics


def fit_growth_exponent(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Slope of the least-squares line through (log x, log y)."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise ValueError("need at least two (x, y) pairs of equal length")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("growth fit needs positive samples")
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)
