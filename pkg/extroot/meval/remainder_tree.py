"""Univariate multipoint evaluation along one grid axis.

Small axes use Horner per point. Larger axes reduce the polynomial through a product tree of
(t - p_i) factors and finish each leaf batch with Horner, all in ball arithmetic.
"""

import threading
from typing import Sequence

from ..arith.ball import BALL_ONE, BALL_ZERO, ComplexBall
from ..constants import HORNER_CUTOFF


Coeffs = list[ComplexBall]  # lowest degree first


def horner(coeffs: Sequence[ComplexBall], z: ComplexBall, prec: int) -> ComplexBall:
    acc = BALL_ZERO
    for c in reversed(coeffs):
        acc = acc.mul(z, prec).add(c, prec)
    return acc


def _poly_mul(a: Coeffs, b: Coeffs, prec: int) -> Coeffs:
    out = [BALL_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j].add(x.mul(y, prec), prec)
    return out


def _rem_monic(f: Coeffs, g: Coeffs, prec: int) -> Coeffs:
    """Remainder of f modulo the monic g."""
    dg = len(g) - 1
    work = list(f)
    for top in range(len(work) - 1, dg - 1, -1):
        lead = work[top]
        if lead.is_exact and lead.re_center.is_zero and lead.im_center.is_zero:
            continue
        for k in range(dg):
            idx = top - dg + k
            work[idx] = work[idx].sub(lead.mul(g[k], prec), prec)
        work[top] = BALL_ZERO
    return work[:dg] if dg else [BALL_ZERO]


class _Node:
    __slots__ = ("poly", "left", "right", "points")

    def __init__(self, points: Sequence[ComplexBall], prec: int, cutoff: int):
        self.points = points
        if len(points) < max(2, cutoff):
            self.left = self.right = None
            self.poly = None
            return
        mid = len(points) // 2
        self.left = _Node(points[:mid], prec, cutoff)
        self.right = _Node(points[mid:], prec, cutoff)
        self.poly = _poly_mul(self.left.modulus(prec), self.right.modulus(prec), prec)

    def modulus(self, prec: int) -> Coeffs:
        if self.poly is not None:
            return self.poly
        poly = [BALL_ONE]
        for p in self.points:
            poly = _poly_mul(poly, [-p, BALL_ONE], prec)
        self.poly = poly
        return poly

    def evaluate(self, f: Coeffs, prec: int) -> list[ComplexBall]:
        if self.left is None:
            return [horner(f, p, prec) for p in self.points]
        out = []
        for child in (self.left, self.right):
            modulus = child.modulus(prec)
            reduced = _rem_monic(f, modulus, prec) if len(f) >= len(modulus) else f
            out.extend(child.evaluate(reduced, prec))
        return out


def remainder_tree_eval(
    coeffs: Sequence[ComplexBall],
    points: Sequence[ComplexBall],
    prec: int,
    cutoff: int = HORNER_CUTOFF,
) -> list[ComplexBall]:
    """Values at every point; subtrees with fewer than ``cutoff`` points finish by Horner."""
    return _Node(list(points), prec, cutoff).evaluate(list(coeffs), prec)


class AxisEvaluator:
    """Evaluates one univariate ball polynomial at all points of an axis; counts the calls."""

    def __init__(self, cutoff: int = HORNER_CUTOFF):
        if cutoff < 2:
            raise ValueError(f"cutoff must be at least 2, got {cutoff}")
        self.cutoff = cutoff
        self.calls = 0
        self._lock = threading.Lock()

    def __call__(self, coeffs: Sequence[ComplexBall], points: Sequence[ComplexBall], prec: int) -> list[ComplexBall]:
        with self._lock:
            self.calls += 1
        if len(points) < self.cutoff:
            return [horner(coeffs, p, prec) for p in points]
        return remainder_tree_eval(coeffs, points, prec, self.cutoff)
