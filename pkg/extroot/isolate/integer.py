"""Isolation of all complex roots of an exact integer polynomial."""

from fractions import Fraction

from loguru import logger

from ..arith.ball import ComplexBall
from ..configuration import ExtrootConfig
from ..data_types import IsolatedRoot
from ..errors import ZeroPolynomial
from ..poly.ball_poly import BallPolyUni
from ..poly.univariate import IntPolyUni, squarefree_factors
from .clusters import cluster_isolate, sort_roots
from .refine import refine_root


class IntegerOracle:
    """Coefficient oracle of an integer polynomial, scaled by 2^-s so that 1/2 < |lc| <= 1."""

    def __init__(self, f: IntPolyUni):
        if f.is_zero:
            raise ZeroPolynomial()
        self.f = f
        self.shift = (abs(f.leading_coefficient) - 1).bit_length()
        self._poly = BallPolyUni.from_int_poly(f).scale_2exp(-self.shift)

    def __call__(self, rho: int) -> BallPolyUni:
        return self._poly


def _linear_root(g: IntPolyUni, prec: int) -> IsolatedRoot:
    b, a = g.coeffs
    return IsolatedRoot(ComplexBall.from_fraction(Fraction(-b, a), prec), 1)


def _separate(roots: list[IsolatedRoot], config: ExtrootConfig) -> list[IsolatedRoot]:
    """Shrink discs of roots from different factors until they are pairwise disjoint."""
    while True:
        overlapping = set()
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                if not roots[i].disc.is_disjoint(roots[j].disc):
                    overlapping.update((i, j))
        if not overlapping:
            return roots
        for i in overlapping:
            root = roots[i]
            target = root.disc.radius.scale_2exp(-1)
            roots[i] = refine_root(IsolatedRoot(root.disc, 1, root.factor), root.factor, target, config)
            roots[i] = IsolatedRoot(roots[i].disc, root.multiplicity, root.factor)


def isolate_integer_poly(f: IntPolyUni, config: ExtrootConfig | None = None) -> list[IsolatedRoot]:
    """Disjoint discs around the distinct roots of ``f``, multiplicities summing to deg f.

    Each root carries the squarefree factor it is a simple root of. Output is sorted by
    (real part, imaginary part) of the disc centers.
    """
    config = config or ExtrootConfig()
    if f.is_zero:
        raise ZeroPolynomial()
    if f.degree == 0:
        return []
    _, factors = squarefree_factors(f)
    roots: list[IsolatedRoot] = []
    for g, multiplicity in factors:
        if g.degree == 1:
            found = [_linear_root(g, config.start_prec)]
        else:
            found = cluster_isolate(IntegerOracle(g), g.degree, g.degree, config)
        roots.extend(IsolatedRoot(r.disc, multiplicity, g) for r in found)
    if len(factors) > 1:
        roots = _separate(roots, config)
    logger.debug(f"isolated {len(roots)} distinct roots of a degree-{f.degree} polynomial")
    return sort_roots(roots)
