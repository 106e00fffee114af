from dataclasses import dataclass
from math import comb

from ..arith.ball import BALL_ZERO, ComplexBall
from ..arith.dyadic import ZERO, Dyadic
from .univariate import IntPolyUni


@dataclass(frozen=True)
class BallPolyUni:
    """Polynomial with ball coefficients (lowest degree first); stands for every polynomial inside the balls."""

    coeffs: tuple[ComplexBall, ...]
    known_leading_nonzero: bool = False

    @classmethod
    def from_int_poly(cls, f: IntPolyUni) -> "BallPolyUni":
        return cls(tuple(ComplexBall.exact(c) for c in f.coeffs), known_leading_nonzero=not f.is_zero)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> ComplexBall:
        return self.coeffs[-1]

    def max_radius(self) -> Dyadic:
        return max((c.radius for c in self.coeffs), default=ZERO)

    def evaluate(self, z: ComplexBall, prec: int) -> ComplexBall:
        acc = BALL_ZERO
        for c in reversed(self.coeffs):
            acc = acc.mul(z, prec).add(c, prec)
        return acc

    def scale_2exp(self, k: int) -> "BallPolyUni":
        return BallPolyUni(tuple(c.scale_2exp(k) for c in self.coeffs), self.known_leading_nonzero)

    def normalized_derivative(self, k: int) -> "BallPolyUni":
        # wide enough that scaling by the binomials is exact
        prec = 2 * len(self.coeffs) + max(
            (max(abs(c.re_center.mantissa).bit_length(), abs(c.im_center.mantissa).bit_length()) for c in self.coeffs),
            default=1,
        )
        coeffs = tuple(self.coeffs[j + k].mul_int(comb(j + k, k), prec) for j in range(len(self.coeffs) - k))
        return BallPolyUni(coeffs, self.known_leading_nonzero)

    def taylor_shift(self, c: ComplexBall, prec: int) -> "BallPolyUni":
        """Coefficients of p(c + t) by repeated synthetic division."""
        work = list(self.coeffs)
        d = len(work) - 1
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                work[j] = work[j].add(work[j + 1].mul(c, prec), prec)
        return BallPolyUni(tuple(work), self.known_leading_nonzero)

    def truncate(self, ell: int) -> "BallPolyUni":
        return BallPolyUni(self.coeffs[: ell + 1], self.known_leading_nonzero)


def rouche_dominates(shifted: BallPolyUni, radius: Dyadic, m: int) -> bool:
    """Pellet-type test on the Taylor shift at a disc center.

    True when |b_m| R^m > sum_{j != m} |b_j| R^j, which certifies that every polynomial inside the
    coefficient balls has exactly m roots (with multiplicity) in the closed disc of radius R.
    """
    if m > shifted.degree:
        return False
    dominant = shifted.coeffs[m].mag_lower()
    if dominant <= 0:
        return False
    lhs = dominant
    rhs = ZERO
    power = Dyadic(1)
    for j, b in enumerate(shifted.coeffs):
        if j == m:
            lhs = lhs * power
        else:
            rhs = rhs + b.mag_upper() * power
        power = power * radius
    return lhs > rhs
