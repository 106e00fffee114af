"""Principal subresultant coefficients with respect to Y."""

from dataclasses import dataclass

from loguru import logger
from sympy import ZZ
from sympy.polys.densebasic import dmp_degree, dmp_from_dict, dmp_to_dict
from sympy.polys.euclidtools import dmp_inner_subresultants

from ..errors import DegreeOrder
from ..poly.multivariate import IntPolyMulti, truncate_in_y


@dataclass(frozen=True)
class SresSequence:
    """``coeffs[j]`` is sres_j in Z[X1..Xn] (Y-free), for j = 0..ell-1."""

    ell: int
    coeffs: tuple[IntPolyMulti, ...]

    def __getitem__(self, j: int) -> IntPolyMulti:
        return self.coeffs[j]

    def __len__(self) -> int:
        return len(self.coeffs)


def _to_dense(P: IntPolyMulti):
    # Y leads in sympy's recursive layout
    terms = {(m[-1],) + m[:-1]: ZZ.convert(c) for m, c in P.terms.items()}
    return dmp_from_dict(terms, P.n, ZZ)


def _from_dense_coefficient(c, n: int) -> IntPolyMulti:
    return IntPolyMulti(n, {tuple(m) + (0,): int(v) for m, v in dmp_to_dict(c, n - 1, ZZ).items()})


def sres_in_y(P: IntPolyMulti, Q: IntPolyMulti) -> SresSequence:
    """Principal subresultant coefficients of (P, Q) in Y, from sympy's subresultant PRS.

    Sign convention: sres_{deg Q} = lc_Y(Q)^(deg P - deg Q) and the rest follow the subresultant
    PRS normalization, so sres_0 = Res_Y(P, Q) (e.g. -4 X1 for Y^2 - X1 and 2Y). Indices skipped by
    the remainder sequence are identically zero.
    """
    if P.n != Q.n:
        raise ValueError(f"variable count mismatch: {P.n} != {Q.n}")
    deg_p, deg_q = P.deg_y, Q.deg_y
    if deg_p < 1 or deg_q >= deg_p or Q.is_zero:
        raise DegreeOrder(deg_p, deg_q)
    n = P.n
    prs, principal = dmp_inner_subresultants(_to_dense(P), _to_dense(Q), n, ZZ)
    coeffs = [IntPolyMulti(n)] * deg_p
    # prs[0] is P itself (index deg P, outside the sequence)
    for remainder, psc in zip(prs[1:], principal[1:]):
        j = dmp_degree(remainder, n)
        if 0 <= j < deg_p:
            coeffs[j] = _from_dense_coefficient(psc, n)
    logger.debug(f"sres_in_y: {sum(not c.is_zero for c in coeffs)} nonzero of {deg_p} coefficients")
    return SresSequence(deg_p, tuple(coeffs))


def sres_of_truncation(F: IntPolyMulti, ell: int) -> SresSequence:
    """Sequence for (F_ell, dF_ell/dY)."""
    if ell < 1:
        raise ValueError(f"subresultants need ell >= 1, got {ell}")
    P = truncate_in_y(F, ell)
    return sres_in_y(P, P.derivative_in_y())
