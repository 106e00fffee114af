from .ball import BALL_ONE, BALL_ZERO, ComplexBall, Sign, ZeroTest, ball_op, ball_sqrt_int, sign_or_unknown
from .dyadic import ONE, ZERO, Dyadic, ceil_log2, divide, round_to


__all__ = [
    "BALL_ONE",
    "BALL_ZERO",
    "ComplexBall",
    "Dyadic",
    "ONE",
    "Sign",
    "ZERO",
    "ZeroTest",
    "ball_op",
    "ball_sqrt_int",
    "ceil_log2",
    "divide",
    "round_to",
    "sign_or_unknown",
]
