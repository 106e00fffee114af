"""Exact binary floating values ``mantissa * 2^exponent``."""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union


RoundingMode = str  # "nearest" | "floor" | "ceil" | "up" | "down"

_DYADIC_RE = re.compile(r"^\s*(-?\d+)\s*(?:\*\s*2\s*\^\s*(-?\d+))?\s*$")


def ceil_log2(x: int) -> int:
    """Smallest t >= 0 with 2^t >= x, for a positive integer x."""
    if x <= 0:
        raise ValueError(f"ceil_log2 needs a positive integer, got {x}")
    return (x - 1).bit_length()


def _shift_round(m: int, shift: int, mode: RoundingMode) -> int:
    """m / 2^shift rounded to an integer (shift > 0)."""
    if mode == "floor":
        return m >> shift
    if mode == "ceil":
        return -((-m) >> shift)
    if mode == "nearest":
        return (m + (1 << (shift - 1))) >> shift
    if mode == "up":
        return m >> shift if m < 0 else -((-m) >> shift)
    if mode == "down":
        return -((-m) >> shift) if m < 0 else m >> shift
    raise ValueError(f"unknown rounding mode {mode!r}")


@total_ordering
@dataclass(frozen=True)
class Dyadic:
    mantissa: int = 0
    exponent: int = 0

    def __post_init__(self):
        m, e = int(self.mantissa), int(self.exponent)
        if m == 0:
            e = 0
        else:
            tz = (m & -m).bit_length() - 1
            if tz:
                m >>= tz
                e += tz
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "exponent", e)

    # Construction

    @classmethod
    def of(cls, value: Union["Dyadic", int]) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        raise TypeError(f"cannot build a Dyadic from {type(value).__name__}")

    @classmethod
    def pow2(cls, k: int) -> "Dyadic":
        return cls(1, k)

    @classmethod
    def from_fraction(cls, q: Fraction, prec: int, mode: RoundingMode = "nearest") -> "Dyadic":
        """Round ``q`` to the absolute grid 2^-prec."""
        num, den = q.numerator, q.denominator
        scaled = num << prec
        if mode == "floor":
            m = scaled // den
        elif mode == "ceil":
            m = -((-scaled) // den)
        else:
            m = (2 * scaled + den) // (2 * den)
        return cls(m, -prec)

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        match = _DYADIC_RE.match(text)
        if not match:
            raise ValueError(f"not a dyadic literal: {text!r}")
        return cls(int(match.group(1)), int(match.group(2) or 0))

    # Inspection

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0

    @property
    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    def magnitude_bits(self) -> int:
        """Smallest t with |x| < 2^t (0 for zero)."""
        if self.mantissa == 0:
            return 0
        return self.exponent + abs(self.mantissa).bit_length()

    def ceil_log2(self) -> int:
        """Smallest integer t with 2^t >= x, for x > 0."""
        if self.mantissa <= 0:
            raise ValueError(f"ceil_log2 needs a positive value, got {self}")
        if self.mantissa == 1:
            return self.exponent
        return self.exponent + self.mantissa.bit_length()

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa << self.exponent)
        return Fraction(self.mantissa, 1 << -self.exponent)

    def __float__(self) -> float:
        m, e = self.mantissa, self.exponent
        excess = abs(m).bit_length() - 60
        if excess > 0:
            m >>= excess
            e += excess
        return math.ldexp(float(m), e)

    def __str__(self) -> str:
        return f"{self.mantissa}*2^{self.exponent}"

    # Exact ring operations

    def __add__(self, other: Union["Dyadic", int]) -> "Dyadic":
        other = Dyadic.of(other)
        if self.mantissa == 0:
            return other
        if other.mantissa == 0:
            return self
        e = min(self.exponent, other.exponent)
        return Dyadic((self.mantissa << (self.exponent - e)) + (other.mantissa << (other.exponent - e)), e)

    __radd__ = __add__

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.mantissa, self.exponent)

    def __sub__(self, other: Union["Dyadic", int]) -> "Dyadic":
        return self + (-Dyadic.of(other))

    def __rsub__(self, other: int) -> "Dyadic":
        return Dyadic.of(other) - self

    def __mul__(self, other: Union["Dyadic", int]) -> "Dyadic":
        other = Dyadic.of(other)
        return Dyadic(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __abs__(self) -> "Dyadic":
        return self if self.mantissa >= 0 else -self

    def scale_2exp(self, k: int) -> "Dyadic":
        return Dyadic(self.mantissa, self.exponent + k)

    def __lt__(self, other: Union["Dyadic", int]) -> bool:
        return (self - Dyadic.of(other)).mantissa < 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.mantissa == other.mantissa and self.exponent == other.exponent

    def __hash__(self) -> int:
        return hash((self.mantissa, self.exponent))

    # Rounding

    def round(self, prec: int, mode: RoundingMode = "nearest") -> "Dyadic":
        """Keep at most ``prec`` mantissa bits (relative rounding)."""
        shift = abs(self.mantissa).bit_length() - prec
        if shift <= 0:
            return self
        return Dyadic(_shift_round(self.mantissa, shift, mode), self.exponent + shift)

    def round_abs(self, bits: int, mode: RoundingMode = "nearest") -> "Dyadic":
        """Round to the absolute grid 2^-bits."""
        shift = -bits - self.exponent
        if shift <= 0:
            return self
        return Dyadic(_shift_round(self.mantissa, shift, mode), -bits)

    def sqrt_upper(self, bits: int = 40) -> "Dyadic":
        return _sqrt(self, bits, upper=True)

    def sqrt_lower(self, bits: int = 40) -> "Dyadic":
        return _sqrt(self, bits, upper=False)


ZERO = Dyadic(0)
ONE = Dyadic(1)


def divide(a: Dyadic, b: Dyadic, prec: int) -> tuple[Dyadic, Dyadic]:
    """Quotient a/b truncated toward -inf to about ``prec`` significant bits.

    Returns ``(q, err)`` with ``0 <= a/b - q <= err``; ``err`` is zero when the division is exact.
    """
    if b.mantissa == 0:
        raise ZeroDivisionError("division by a zero dyadic")
    ma, mb = a.mantissa, b.mantissa
    if mb < 0:
        ma, mb = -ma, -mb
    shift = max(0, prec + mb.bit_length() - abs(ma).bit_length() + 2)
    q, r = divmod(ma << shift, mb)
    exponent = a.exponent - b.exponent - shift
    err = ZERO if r == 0 else Dyadic(1, exponent)
    return Dyadic(q, exponent), err


def round_to(x: Dyadic, prec: int) -> Dyadic:
    """Absolute ``prec``-bit approximation: |result - x| <= 2^(-prec-2) < 2^-prec."""
    if prec < 1:
        raise ValueError(f"prec must be >= 1, got {prec}")
    return x.round_abs(prec + 1, "nearest")


def _sqrt(x: Dyadic, bits: int, upper: bool) -> Dyadic:
    if x.mantissa < 0:
        raise ValueError(f"square root of a negative dyadic {x}")
    if x.mantissa == 0:
        return ZERO
    m, e = x.mantissa, x.exponent
    if e & 1:
        m <<= 1
        e -= 1
    excess = m.bit_length() - 2 * bits
    if excess > 0:
        excess += excess & 1
        m = -((-m) >> excess) if upper else m >> excess
        e += excess
    elif excess < 0:
        pad = -excess + ((-excess) & 1)
        m <<= pad
        e -= pad
    r = math.isqrt(m)
    if upper and r * r != m:
        r += 1
    return Dyadic(r, e // 2)
