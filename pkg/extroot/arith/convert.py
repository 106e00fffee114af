"""Bridges between dyadic balls and mpmath numbers.

Every caller owns a private ``MPContext`` so precision changes never leak across threads.
"""

from mpmath.ctx_mp import MPContext

from .ball import ComplexBall
from .dyadic import ZERO, Dyadic


def new_context(prec: int) -> MPContext:
    ctx = MPContext()
    ctx.prec = prec
    return ctx


def to_mpf(ctx: MPContext, x: Dyadic):
    return ctx.ldexp(ctx.mpf(x.mantissa), x.exponent)


def to_mpc(ctx: MPContext, ball: ComplexBall):
    return ctx.mpc(to_mpf(ctx, ball.re_center), to_mpf(ctx, ball.im_center))


def dyadic_from_mpf(x) -> Dyadic:
    sign, man, exp, _ = x._mpf_
    if not man:
        return ZERO
    return Dyadic(-int(man) if sign else int(man), int(exp))


def point_ball(z, bits: int) -> ComplexBall:
    """Zero-radius ball at ``z`` (mpc or mpf) rounded to the absolute grid 2^-bits."""
    re = dyadic_from_mpf(z.real).round_abs(bits)
    im = dyadic_from_mpf(z.imag).round_abs(bits) if hasattr(z, "imag") else ZERO
    return ComplexBall(re, im, ZERO)
