"""Certified sign of sum(sqrt(a_i)) - sum(sqrt(b_i)) for nonnegative integers."""

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Sequence

from loguru import logger

from ..arith.ball import BALL_ZERO, ComplexBall, Sign, ball_sqrt_int
from ..arith.convert import dyadic_from_mpf, new_context
from ..arith.dyadic import Dyadic, ceil_log2
from ..bounds.thresholds import sqrt_gap_threshold
from ..configuration import ExtrootConfig
from ..constants import MAX_SQRTSUM_PATTERN_N
from ..errors import InputError, InstanceTooLarge, InsufficientPrecision
from ..poly.multivariate import IntPolyMulti
from ..poly.univariate import IntPolyUni
from ..solver.system import SystemSpec


class ComparisonVerdict(str, Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


@dataclass(frozen=True)
class SqrtSumInstance:
    a: tuple[int, ...]
    b: tuple[int, ...]
    tau: int

    @classmethod
    def of(cls, a: Sequence[int], b: Sequence[int]) -> "SqrtSumInstance":
        a, b = [int(v) for v in a], [int(v) for v in b]
        if any(v < 0 for v in a + b):
            raise InputError("square-root sums take nonnegative integers only")
        n = max(len(a), len(b), 1)
        a += [0] * (n - len(a))
        b += [0] * (n - len(b))
        tau = max(1, ceil_log2(max(a + b + [1])))
        return cls(tuple(a), tuple(b), tau)

    @property
    def n(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class ComparisonResult:
    verdict: ComparisonVerdict
    bits_used: int
    threshold_G: int

    def to_document(self) -> dict:
        return {"verdict": self.verdict.value, "bits_used": self.bits_used, "threshold_G": self.threshold_G}


def difference_ball(inst: SqrtSumInstance, bits: int) -> ComplexBall:
    """Ball around sum sqrt(a_i) - sum sqrt(b_i), radius at most n 2^-bits."""
    work_prec = bits + inst.tau + 16
    acc = BALL_ZERO
    for v in inst.a:
        acc = acc.add(ball_sqrt_int(v, bits), work_prec)
    for v in inst.b:
        acc = acc.sub(ball_sqrt_int(v, bits), work_prec)
    return acc


_VERDICTS = {
    Sign.POSITIVE: ComparisonVerdict.GREATER,
    Sign.NEGATIVE: ComparisonVerdict.LESS,
    Sign.ZERO_CERTIFIED: ComparisonVerdict.EQUAL,
}


def compare(inst: SqrtSumInstance, config: ExtrootConfig | None = None) -> ComparisonResult:
    """Less/Equal/Greater; Equal only once the difference is below the gap threshold 2^-G."""
    config = config or ExtrootConfig()
    G = sqrt_gap_threshold(inst.n, inst.tau, config.threshold_ceiling)
    # past this many bits the 2n rounding errors sum below 2^-(G+2)
    stop = G + ceil_log2(2 * inst.n) + 2
    bits = min(config.start_prec, stop)
    while True:
        sign = difference_ball(inst, bits).sign_or_unknown(G)
        if sign in _VERDICTS:
            logger.debug(f"sqrtsum decided {sign.value} at {bits} bits (G = {G})")
            return ComparisonResult(_VERDICTS[sign], bits, G)
        if bits >= stop:
            raise InsufficientPrecision(f"difference undecided at {bits} bits with G = {G}")
        bits = min(2 * bits, stop)


def aggregate_gap_report(inst: SqrtSumInstance, prec: int, config: ExtrootConfig | None = None) -> Dyadic:
    """Sum over all 2^(2n) sign patterns of |log2 |sum e_i sqrt(a_i) - sum f_i sqrt(b_i)||, zeros skipped."""
    n = inst.n
    if n > MAX_SQRTSUM_PATTERN_N:
        raise InstanceTooLarge(f"{2 ** (2 * n)} sign patterns for n = {n} (limit n <= {MAX_SQRTSUM_PATTERN_N})")
    ctx = new_context(prec)
    roots_a = [ctx.sqrt(v) for v in inst.a]
    roots_b = [ctx.sqrt(v) for v in inst.b]
    total = ctx.zero
    skipped = 0
    for signs in product((1, -1), repeat=2 * n):
        eps, eta = signs[:n], signs[n:]
        # sum e_i sqrt(a_i) = sum f_i sqrt(b_i) rearranged into two nonnegative sums
        left = [v for v, e in zip(inst.a, eps) if e > 0] + [v for v, f in zip(inst.b, eta) if f < 0]
        right = [v for v, e in zip(inst.a, eps) if e < 0] + [v for v, f in zip(inst.b, eta) if f > 0]
        if compare(SqrtSumInstance.of(left, right), config).verdict == ComparisonVerdict.EQUAL:
            skipped += 1
            continue
        value = ctx.fsum(e * r for e, r in zip(eps, roots_a)) - ctx.fsum(f * r for f, r in zip(eta, roots_b))
        total += abs(ctx.log(abs(value), 2))
    logger.debug(f"aggregate gap over {4**n} patterns, {skipped} exact zeros skipped")
    return dyadic_from_mpf(total)


def system_for(inst: SqrtSumInstance) -> SystemSpec:
    """X_i^2 = a_i, X_(n+i)^2 = b_i, (Y - sum_i X_i)(Y - sum_i X_(n+i)) = 0."""
    n = inst.n
    width = 2 * n + 1

    def unit(slot: int) -> tuple[int, ...]:
        return tuple(1 if k == slot else 0 for k in range(width))

    F_list = [IntPolyUni((-v, 0, 1), f"X{i}") for i, v in enumerate(inst.a + inst.b, start=1)]
    y = IntPolyMulti(2 * n, {unit(2 * n): 1})
    sum_a = IntPolyMulti(2 * n, {unit(i): 1 for i in range(n)})
    sum_b = IntPolyMulti(2 * n, {unit(n + i): 1 for i in range(n)})
    return SystemSpec(tuple(F_list), (y - sum_a) * (y - sum_b))
