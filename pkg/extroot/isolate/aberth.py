"""Aberth-Ehrlich simultaneous iteration at a fixed mpmath working precision."""

import random
from typing import Sequence

from loguru import logger
from mpmath.ctx_mp import MPContext


def initial_approximations(ctx: MPContext, coeffs: Sequence, seed: int) -> list:
    """Perturbed equispaced points on a circle of the Cauchy radius (coefficients highest first)."""
    degree = len(coeffs) - 1
    lead = abs(coeffs[0])
    radius = 1 + max(abs(c) for c in coeffs[1:]) / lead
    # start inside the Cauchy disc, where the roots live
    radius = radius / 2
    rng = random.Random(seed)
    phase = rng.random()
    points = []
    for k in range(degree):
        angle = 2 * ctx.pi * (k + phase + 0.25 * rng.random()) / degree
        points.append(ctx.mpc(radius * ctx.cos(angle), radius * ctx.sin(angle)))
    return points


def aberth_iterate(
    ctx: MPContext,
    coeffs: Sequence,
    roots: list,
    max_iter: int,
    tolerance,
) -> tuple[list, object]:
    """Gauss-Seidel Aberth sweeps until every correction is below ``tolerance`` or ``max_iter`` sweeps.

    Returns the approximations and the last maximal correction.
    """
    degree = len(roots)
    largest = ctx.inf
    for sweep in range(max_iter):
        largest = ctx.zero
        for i in range(degree):
            z = roots[i]
            p, dp = ctx.polyval(coeffs, z, derivative=True)
            if p == 0:
                continue
            if dp == 0:
                # stationary point: nudge off it
                roots[i] = z + ctx.ldexp(1, -ctx.prec // 2) * ctx.mpc(1, 1)
                largest = ctx.inf
                continue
            newton = p / dp
            repulsion = ctx.zero
            for j in range(degree):
                if j != i:
                    diff = z - roots[j]
                    if diff != 0:
                        repulsion += 1 / diff
            denom = 1 - newton * repulsion
            step = newton / denom if denom != 0 else newton
            roots[i] = z - step
            largest = max(largest, abs(step))
        if largest < tolerance:
            logger.debug(f"aberth converged after {sweep + 1} sweeps at {ctx.prec} bits")
            break
    return roots, largest


def approximate_roots(
    ctx: MPContext,
    coeffs: Sequence,
    seed: int,
    warm_start: list | None = None,
    max_iter: int | None = None,
) -> list:
    """All roots of the polynomial with mpc coefficients ``coeffs`` (highest degree first)."""
    degree = len(coeffs) - 1
    if degree < 1:
        return []
    if degree == 1:
        return [-coeffs[1] / coeffs[0]]
    if warm_start is not None and len(warm_start) == degree:
        roots = [ctx.mpc(z) for z in warm_start]
    else:
        roots = initial_approximations(ctx, coeffs, seed)
    if max_iter is None:
        max_iter = 48 + 4 * degree + ctx.prec // 4
    roots, _ = aberth_iterate(ctx, coeffs, roots, max_iter, ctx.ldexp(1, -ctx.prec + 8))
    return roots
