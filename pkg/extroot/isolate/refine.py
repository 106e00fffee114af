"""Refinement of isolating discs and of algebraic grid points."""

from loguru import logger

from ..arith.ball import ComplexBall
from ..arith.convert import new_context, point_ball, to_mpc
from ..arith.dyadic import Dyadic
from ..configuration import ExtrootConfig
from ..data_types import AlgebraicPoint, CoefficientOracle, IsolatedRoot
from ..poly.ball_poly import BallPolyUni
from ..poly.univariate import IntPolyUni, normalized_derivative, squarefree_factors
from .clusters import cluster_isolate, rouche_count


_NEWTON_SWEEPS = 64


def _newton(poly: IntPolyUni, start: ComplexBall, bits: int):
    """Newton iteration from ``start`` at a precision doubling up to ``bits``."""
    prec = 64
    ctx = new_context(prec)
    z = to_mpc(ctx, start)
    coeffs = poly.highest_first()
    while True:
        ctx.prec = prec + 32
        z = ctx.mpc(z)
        tolerance = ctx.ldexp(1, -prec)
        for _ in range(_NEWTON_SWEEPS):
            p, dp = ctx.polyval(coeffs, z, derivative=True)
            if dp == 0:
                return None
            step = p / dp
            z = z - step
            if abs(step) < tolerance:
                break
        else:
            return None
        if prec >= bits:
            return z
        prec = min(2 * prec, bits)


def _pick_inside(candidates: list[IsolatedRoot], old: ComplexBall) -> IsolatedRoot | None:
    inside = [r for r in candidates if old.contains(r.disc)]
    return inside[0] if len(inside) == 1 else None


def _integer_oracle(f: IntPolyUni) -> CoefficientOracle:
    from .integer import IntegerOracle

    return IntegerOracle(f)


def refine_root(
    r: IsolatedRoot,
    f: IntPolyUni | CoefficientOracle,
    target_radius: Dyadic,
    config: ExtrootConfig | None = None,
    degree: int | None = None,
    distinct: int | None = None,
) -> IsolatedRoot:
    """Same root, disc radius <= target_radius, new disc inside the old one.

    Exact polynomials are refined by Newton on the squarefree factor (or on f^[m-1] when no factor is
    known) and re-certified by the Rouché test; oracles, and Newton failures, fall back to cluster
    isolation at the target radius.
    """
    if r.disc.radius <= target_radius:
        return r
    config = config or ExtrootConfig()
    if isinstance(f, IntPolyUni):
        if r.factor is not None:
            certify_poly, m, newton_poly = r.factor, 1, r.factor
        else:
            certify_poly, m = f, r.multiplicity
            newton_poly = normalized_derivative(f, m - 1) if m > 1 else f
        bits = max(64, -target_radius.ceil_log2() + 8) if target_radius > 0 else 64
        z = _newton(newton_poly, r.disc, bits)
        if z is not None:
            center = point_ball(z, bits + 8)
            radius = target_radius
            if r.disc.contains(ComplexBall(center.re_center, center.im_center, radius)) and rouche_count(
                BallPolyUni.from_int_poly(certify_poly), center, radius, m, bits + 2 * certify_poly.degree + 32
            ):
                return IsolatedRoot(ComplexBall(center.re_center, center.im_center, radius), r.multiplicity, r.factor)
        logger.debug("Newton refinement not certified, falling back to cluster isolation")
        base = r.factor if r.factor is not None else f
        oracle, degree = _integer_oracle(base), base.degree
        distinct = base.degree if r.factor is not None else sum(g.degree for g, _ in squarefree_factors(base)[1])
    else:
        oracle = f
        if degree is None or distinct is None:
            raise ValueError("refining against an oracle needs its degree and distinct-root count")
    target = target_radius
    for _ in range(64):
        candidates = cluster_isolate(oracle, degree, distinct, config, target_radius=target)
        chosen = _pick_inside(candidates, r.disc)
        if chosen is not None:
            multiplicity = r.multiplicity if isinstance(f, IntPolyUni) else chosen.multiplicity
            return IsolatedRoot(chosen.disc, multiplicity, r.factor)
        target = target.scale_2exp(-4)
    raise ValueError("refinement lost track of the root")


def approximate_point(
    point: AlgebraicPoint,
    bits: int,
    config: ExtrootConfig | None = None,
) -> tuple[ComplexBall, ...]:
    """Coordinate balls of ``point`` with radius < 2^-bits, cached on the point."""
    target = Dyadic.pow2(-bits - 1)
    balls = []
    for axis, coord in enumerate(point.coords):
        current = point.refined.get(axis, coord)
        if current.disc.radius > target:
            if current.factor is None:
                raise ValueError(f"axis {axis} root carries no squarefree factor to refine against")
            current = refine_root(current, current.factor, target, config)
            point.refined[axis] = current
        balls.append(current.disc)
    return tuple(balls)
