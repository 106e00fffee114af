"""Complex ball arithmetic over dyadic centers with rigorous radii."""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from ..constants import RADIUS_BITS
from ..errors import DivisorContainsZero
from .dyadic import ONE, ZERO, Dyadic, divide


class Sign(str, Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    ZERO_CERTIFIED = "ZeroCertified"
    UNKNOWN = "Unknown"


class ZeroTest(str, Enum):
    NONZERO = "NonZero"
    ZERO_CERTIFIED = "ZeroCertified"
    UNKNOWN = "Unknown"


def _round_center(x: Dyadic, work_prec: int) -> tuple[Dyadic, Dyadic]:
    """Nearest rounding at ``work_prec`` mantissa bits plus the exact rounding error."""
    rounded = x.round(work_prec, "nearest")
    return rounded, abs(x - rounded)


def _round_radius(r: Dyadic) -> Dyadic:
    return r.round(RADIUS_BITS, "ceil")


@dataclass(frozen=True)
class ComplexBall:
    re_center: Dyadic = ZERO
    im_center: Dyadic = ZERO
    radius: Dyadic = ZERO

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError(f"negative ball radius {self.radius}")

    @classmethod
    def exact(cls, re: Dyadic | int, im: Dyadic | int = 0) -> "ComplexBall":
        return cls(Dyadic.of(re), Dyadic.of(im), ZERO)

    @classmethod
    def from_fraction(cls, q: Fraction, prec: int) -> "ComplexBall":
        """Real ball of radius at most 2^-prec around the rational ``q``."""
        center = Dyadic.from_fraction(q, prec + 1)
        err = abs(q - center.to_fraction())
        if err == 0:
            return cls(center, ZERO, ZERO)
        return cls(center, ZERO, Dyadic.pow2(-prec - 1))

    @classmethod
    def _rounded(cls, re: Dyadic, im: Dyadic, rad: Dyadic, work_prec: int) -> "ComplexBall":
        re_r, re_err = _round_center(re, work_prec)
        im_r, im_err = _round_center(im, work_prec)
        return cls(re_r, im_r, _round_radius(rad + re_err + im_err))

    @property
    def is_exact(self) -> bool:
        return self.radius.is_zero

    @property
    def is_real(self) -> bool:
        return self.im_center.is_zero

    def center_norm_sq(self) -> Dyadic:
        return self.re_center * self.re_center + self.im_center * self.im_center

    def mag_upper(self) -> Dyadic:
        """Upper bound of |z| over the ball."""
        return _round_radius(self.center_norm_sq().sqrt_upper() + self.radius)

    def mag_lower(self) -> Dyadic:
        """Lower bound of |z| over the ball; nonpositive when the ball may contain 0."""
        return self.center_norm_sq().sqrt_lower() - self.radius

    def excludes_zero(self) -> bool:
        return self.center_norm_sq() > self.radius * self.radius

    def __neg__(self) -> "ComplexBall":
        return ComplexBall(-self.re_center, -self.im_center, self.radius)

    def conj(self) -> "ComplexBall":
        return ComplexBall(self.re_center, -self.im_center, self.radius)

    def add(self, other: "ComplexBall", work_prec: int) -> "ComplexBall":
        return ComplexBall._rounded(
            self.re_center + other.re_center,
            self.im_center + other.im_center,
            self.radius + other.radius,
            work_prec,
        )

    def sub(self, other: "ComplexBall", work_prec: int) -> "ComplexBall":
        return self.add(-other, work_prec)

    def mul(self, other: "ComplexBall", work_prec: int) -> "ComplexBall":
        a, b = self.re_center, self.im_center
        c, d = other.re_center, other.im_center
        re = a * c - b * d
        im = a * d + b * c
        if self.radius.is_zero and other.radius.is_zero:
            rad = ZERO
        else:
            ma = self.center_norm_sq().sqrt_upper()
            mb = other.center_norm_sq().sqrt_upper()
            rad = ma * other.radius + mb * self.radius + self.radius * other.radius
        return ComplexBall._rounded(re, im, rad, work_prec)

    def inverse(self, work_prec: int) -> "ComplexBall":
        norm = self.center_norm_sq()
        if norm <= self.radius * self.radius:
            raise DivisorContainsZero()
        re, re_err = divide(self.re_center, norm, work_prec)
        im, im_err = divide(-self.im_center, norm, work_prec)
        rad = re_err + im_err
        if not self.radius.is_zero:
            # |1/b - 1/c| <= r / (|c| (|c| - r)) for |b - c| <= r < |c|
            c_lo = norm.sqrt_lower()
            denom = c_lo * (c_lo - self.radius)
            if denom <= 0:
                raise DivisorContainsZero()
            q, q_err = divide(self.radius, denom, RADIUS_BITS + 2)
            rad = rad + q + q_err
        return ComplexBall._rounded(re, im, rad, work_prec)

    def div(self, other: "ComplexBall", work_prec: int) -> "ComplexBall":
        return self.mul(other.inverse(work_prec + 8), work_prec)

    def mul_int(self, k: int, work_prec: int) -> "ComplexBall":
        return ComplexBall._rounded(self.re_center * k, self.im_center * k, self.radius * abs(k), work_prec)

    def scale_2exp(self, k: int) -> "ComplexBall":
        return ComplexBall(self.re_center.scale_2exp(k), self.im_center.scale_2exp(k), self.radius.scale_2exp(k))

    def inflate(self, extra: Dyadic) -> "ComplexBall":
        return ComplexBall(self.re_center, self.im_center, _round_radius(self.radius + extra))

    def distance_sq(self, other: "ComplexBall") -> Dyadic:
        dr = self.re_center - other.re_center
        di = self.im_center - other.im_center
        return dr * dr + di * di

    def contains_point(self, re: Fraction, im: Fraction = Fraction(0)) -> bool:
        dr = re - self.re_center.to_fraction()
        di = im - self.im_center.to_fraction()
        r = self.radius.to_fraction()
        return dr * dr + di * di <= r * r

    def contains(self, other: "ComplexBall") -> bool:
        """Whether ``other`` lies inside this ball (exact test)."""
        slack = self.radius - other.radius
        return slack >= 0 and self.distance_sq(other) <= slack * slack

    def is_disjoint(self, other: "ComplexBall") -> bool:
        reach = self.radius + other.radius
        return self.distance_sq(other) > reach * reach

    def sign_or_unknown(self, threshold: int) -> Sign:
        """Sign of a real ball; ZeroCertified needs a threshold below which no nonzero value can lie."""
        if not self.is_real:
            raise ValueError("sign_or_unknown needs a ball centered on the real axis")
        if self.re_center - self.radius > 0:
            return Sign.POSITIVE
        if self.re_center + self.radius < 0:
            return Sign.NEGATIVE
        if abs(self.re_center) + self.radius < Dyadic.pow2(-threshold):
            return Sign.ZERO_CERTIFIED
        return Sign.UNKNOWN

    def zero_test(self, threshold: int) -> ZeroTest:
        if self.excludes_zero():
            return ZeroTest.NONZERO
        if self.mag_upper() < Dyadic.pow2(-threshold):
            return ZeroTest.ZERO_CERTIFIED
        return ZeroTest.UNKNOWN

    def to_complex(self) -> complex:
        return complex(float(self.re_center), float(self.im_center))

    def __str__(self) -> str:
        return f"({self.re_center} + {self.im_center}i) ± {self.radius}"


BALL_ZERO = ComplexBall()
BALL_ONE = ComplexBall(ONE)

_OPS = {
    "add": ComplexBall.add,
    "sub": ComplexBall.sub,
    "mul": ComplexBall.mul,
    "div": ComplexBall.div,
}


def ball_op(kind: str, a: ComplexBall, b: ComplexBall, work_prec: int) -> ComplexBall:
    try:
        op = _OPS[kind]
    except KeyError as e:
        raise ValueError(f"unknown ball operation {kind!r}") from e
    return op(a, b, work_prec)


def sign_or_unknown(x: ComplexBall, threshold: int) -> Sign:
    return x.sign_or_unknown(threshold)


def ball_sqrt_int(a: int, prec: int) -> ComplexBall:
    """Real ball around sqrt(a) with radius at most 2^(-prec-1); exact when a*4^prec is a square."""
    if a < 0:
        raise ValueError(f"square root of negative integer {a}")
    scaled = a << (2 * prec)
    s = math.isqrt(scaled)
    if s * s == scaled:
        return ComplexBall(Dyadic(s, -prec))
    return ComplexBall(Dyadic(2 * s + 1, -prec - 1), ZERO, Dyadic.pow2(-prec - 1))
