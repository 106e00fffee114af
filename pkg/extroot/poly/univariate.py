from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import sympy

from ..arith.dyadic import ONE, Dyadic, ceil_log2, divide
from ..constants import DEGREE_MINUS_INFINITY
from ..errors import ZeroPolynomial


@dataclass(frozen=True)
class IntPolyUni:
    """Dense integer polynomial; ``coeffs[i]`` multiplies ``var_tag^i``."""

    coeffs: tuple[int, ...]
    var_tag: str = "X"

    def __post_init__(self):
        coeffs = [int(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_sympy(cls, poly: sympy.Poly, var_tag: str | None = None) -> "IntPolyUni":
        coeffs = [int(c) for c in reversed(poly.all_coeffs())]
        return cls(tuple(coeffs), var_tag or str(poly.gen))

    def to_sympy(self) -> sympy.Poly:
        x = sympy.Symbol(self.var_tag)
        return sympy.Poly(list(reversed(self.coeffs)) or [0], x, domain=sympy.ZZ)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else DEGREE_MINUS_INFINITY

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolyUni":
        return IntPolyUni(tuple(i * c for i, c in enumerate(self.coeffs))[1:], self.var_tag)

    def __mul__(self, other: "IntPolyUni") -> "IntPolyUni":
        return IntPolyUni.from_sympy(self.to_sympy() * other.to_sympy(), self.var_tag)

    def __pow__(self, k: int) -> "IntPolyUni":
        return IntPolyUni.from_sympy(self.to_sympy() ** k, self.var_tag)

    def highest_first(self) -> list[int]:
        return list(reversed(self.coeffs))

    def __str__(self) -> str:
        return str(self.to_sympy().as_expr()).replace("**", "^")


def norms(f: IntPolyUni) -> tuple[int, int, int, int]:
    """(l1, squared l2, linf, bitsize) of the coefficient vector."""
    if f.is_zero:
        raise ZeroPolynomial()
    l1 = sum(abs(c) for c in f.coeffs)
    l2_sq = sum(c * c for c in f.coeffs)
    linf = max(abs(c) for c in f.coeffs)
    return l1, l2_sq, linf, max(1, ceil_log2(linf))


def bitsize(coeffs: Sequence[int]) -> int:
    nonzero = [abs(c) for c in coeffs if c]
    return max(1, ceil_log2(max(nonzero))) if nonzero else 1


def mahler_bracket(f: IntPolyUni) -> tuple[Dyadic, Dyadic]:
    """2^-d ||f||_1 <= M(f) <= ||f||_2, the upper end rounded upward."""
    l1, l2_sq, _, _ = norms(f)
    return Dyadic(l1, -f.degree), Dyadic(l2_sq).sqrt_upper()


def cauchy_root_radius(f: IntPolyUni) -> Dyadic:
    """Upper-rounded 1 + ||f||_inf / |lc(f)|; bounds the modulus of every complex root."""
    if f.degree < 1:
        raise ValueError(f"Cauchy bound needs a nonconstant polynomial, got degree {f.degree}")
    _, _, linf, _ = norms(f)
    q, err = divide(Dyadic(linf), Dyadic(abs(f.leading_coefficient)), 32)
    return ONE + q + err


def normalized_derivative(f, k: int):
    """f^[k] = f^(k) / k!, coefficientwise C(j+k, k) * a_(j+k).

    Works on ``IntPolyUni`` (exact) and ``BallPolyUni`` (ball coefficients scaled by exact integers).
    """
    if k < 0 or k > max(f.degree, 0):
        raise ValueError(f"derivative order {k} outside [0, {f.degree}]")
    if isinstance(f, IntPolyUni):
        return IntPolyUni(tuple(comb(j + k, k) * f.coeffs[j + k] for j in range(len(f.coeffs) - k)), f.var_tag)
    return f.normalized_derivative(k)


def squarefree_factors(f: IntPolyUni) -> tuple[int, list[tuple[IntPolyUni, int]]]:
    """Squarefree decomposition over the integers: f = content * prod g_i^i."""
    if f.is_zero:
        raise ZeroPolynomial()
    content, factors = f.to_sympy().sqf_list()
    return int(content), [(IntPolyUni.from_sympy(g, f.var_tag), int(i)) for g, i in factors]
