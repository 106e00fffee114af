"""Explicit zero-test thresholds and worst-case precision budgets.

All formulas are non-asymptotic: a bit count returned here is directly usable as a certified cutoff.
"""

from dataclasses import dataclass
from math import comb

from loguru import logger

from ..arith.dyadic import ceil_log2
from ..constants import THRESHOLD_CEILING
from ..errors import ThresholdOverflow
from ..poly.multivariate import SizeProfile


@dataclass(frozen=True)
class EvalBoundInput:
    """Profile of the grid plus the size (delta, sigma) of the polynomial b evaluated on it."""

    profile: SizeProfile
    delta: int
    sigma: int

    def __post_init__(self):
        if self.delta < 0 or self.sigma < 1:
            raise ValueError(f"invalid polynomial size (delta={self.delta}, sigma={self.sigma})")


def _check(name: str, value: int, ceiling: int) -> int:
    if value > ceiling:
        raise ThresholdOverflow(name, value, ceiling)
    return value


def eval_zero_threshold(inp: EvalBoundInput, ceiling: int = THRESHOLD_CEILING) -> int:
    """L* such that b(x) != 0 implies |b(x)| > 2^-L* at every grid root x.

    Height of the eliminating resultant times the Cauchy lower bound on its nonzero roots, with
    ceil(log2(M^n delta + 2)) + 1 guard bits for the degree factor.
    """
    p, delta, sigma = inp.profile, max(1, inp.delta), inp.sigma
    n, M, lam = p.n, p.M, p.Lambda
    height = n * M ** (n - 1) * delta * (lam + ceil_log2(M + 1) + 1) + M**n * (
        sigma + n * ceil_log2(delta + 1) + n + 1
    )
    value = height + ceil_log2(M**n * delta + 2) + 1
    return _check("L*", value, ceiling)


def eval_upper_threshold(inp: EvalBoundInput, ceiling: int = THRESHOLD_CEILING) -> int:
    """U with |b(x)| <= 2^U at every grid root: C(delta+n, n) 2^sigma prod max(1, |x_i|)^delta.

    Each |x_i| <= 1 + 2^Lambda <= 2^(Lambda + ceil(log2(M+1))) by the Cauchy bound.
    """
    p = inp.profile
    n = p.n
    value = ceil_log2(comb(inp.delta + n, n)) + inp.sigma + n * inp.delta * (p.Lambda + ceil_log2(p.M + 1))
    return _check("U", value, ceiling)


def sqrt_gap_threshold(n: int, tau: int, ceiling: int = THRESHOLD_CEILING) -> int:
    """G with |sum sqrt(a_i) - sum sqrt(b_i)| > 2^-G whenever the difference is nonzero (a_i, b_i <= 2^tau).

    The product of the nonzero values over all 2^(2n) sign patterns is a nonzero rational integer and
    every other factor is at most (2n) 2^(tau/2).
    """
    if n < 1 or tau < 1:
        raise ValueError(f"sqrt_gap_threshold needs n >= 1 and tau >= 1, got n={n}, tau={tau}")
    value = ((1 << (2 * n)) - 1) * ((tau + 1) // 2 + ceil_log2(2 * n + 1) + 1) + 1
    return _check("G", value, ceiling)


def separation_budget(profile: SizeProfile, sres_bitsize: int, ceiling: int = THRESHOLD_CEILING) -> int:
    """Fixed precision budget B for the non-adaptive solver mode.

    The zero threshold of a polynomial of total degree 2d^2 and the measured subresultant bitsize,
    which bounds the Y-resultant construction used to separate the fiber roots.
    """
    budget = eval_zero_threshold(EvalBoundInput(profile, 2 * profile.d**2, max(1, sres_bitsize)), ceiling)
    logger.debug(f"separation budget B = {budget} bits for {profile}")
    return budget
