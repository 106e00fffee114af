"""Degree detection and distinct-root counting of the fibers F_x(Y) at grid points."""

from typing import Callable

from loguru import logger

from ..arith.ball import ZeroTest
from ..bounds.thresholds import EvalBoundInput, eval_zero_threshold
from ..configuration import ExtrootConfig
from ..constants import DEGREE_MINUS_INFINITY
from ..data_types import AlgebraicPoint
from ..errors import InstanceTooLarge, InsufficientPrecision, ThresholdOverflow
from ..meval.points import eval_at_point
from ..poly.multivariate import IntPolyMulti, SizeProfile
from .sequence import SresSequence, sres_of_truncation


SresProvider = Callable[[int], SresSequence]


def certified_nonzero(f: IntPolyMulti, point: AlgebraicPoint, threshold: int, config: ExtrootConfig) -> bool:
    """Decide f(x) != 0 for a Y-free ``f``, given that any nonzero value exceeds 2^-threshold."""
    if f.is_zero:
        return False
    if f.is_constant():
        return True
    stop = threshold + 2
    bits = min(config.start_prec, stop)
    while True:
        test = eval_at_point(f, point, bits, config).zero_test(threshold)
        if test == ZeroTest.NONZERO:
            return True
        if test == ZeroTest.ZERO_CERTIFIED:
            return False
        if bits >= stop:
            raise InsufficientPrecision(f"value still undecided at {bits} bits against threshold {threshold}")
        bits = min(2 * bits, stop)
        logger.debug(f"zero test undecided at point {point.index}, retrying at {bits} bits")


def degree_at(
    F: IntPolyMulti,
    point: AlgebraicPoint,
    profile: SizeProfile,
    config: ExtrootConfig | None = None,
) -> int:
    """deg F_x: the largest i with f_i(x) != 0, or DEGREE_MINUS_INFINITY when F_x vanishes."""
    config = config or ExtrootConfig()
    threshold = eval_zero_threshold(EvalBoundInput(profile, profile.d, profile.tau), config.threshold_ceiling)
    for i in range(F.deg_y, -1, -1):
        if certified_nonzero(F.coefficient_in_y(i), point, threshold, config):
            return i
    return DEGREE_MINUS_INFINITY


def count_distinct_roots(
    F: IntPolyMulti,
    point: AlgebraicPoint,
    profile: SizeProfile,
    *,
    degree: int | None = None,
    sres: SresProvider | None = None,
    config: ExtrootConfig | None = None,
) -> tuple[int, int]:
    """(k, ell): ell = deg F_x and k the number of its distinct complex roots.

    The first j with sres_j(x) != 0 is the degree of gcd(F_x, F_x'), so k = ell - j. Each zero test
    uses a threshold sized by the measured degree and bitsize of that sres_j.
    """
    config = config or ExtrootConfig()
    ell = degree if degree is not None else degree_at(F, point, profile, config)
    if ell <= 0:
        return 0, ell
    if ell == 1:
        return 1, 1
    sequence = sres(ell) if sres is not None else sres_of_truncation(F, ell)
    for j in range(ell):
        s_j = sequence[j]
        if s_j.is_zero:
            continue
        try:
            threshold = eval_zero_threshold(
                EvalBoundInput(profile, max(1, s_j.total_degree), s_j.bitsize), config.threshold_ceiling
            )
        except ThresholdOverflow as e:
            raise InstanceTooLarge(f"sres_{j} zero test: {e}") from e
        if certified_nonzero(s_j, point, threshold, config):
            logger.debug(f"point {point.index}: first nonzero sres index {j}, {ell - j} distinct of {ell}")
            return ell - j, ell
    # sres_(ell-1) = ell * f_ell(x) never vanishes when ell = deg F_x
    raise InsufficientPrecision(f"no nonzero subresultant at point {point.index} for ell = {ell}")
