"""Brute-force cross-check of a solve report against high-precision numeric roots."""

from dataclasses import dataclass
from math import prod
from typing import Any, Sequence

from loguru import logger
from mpmath.ctx_mp import MPContext

from ..arith.convert import new_context, to_mpc, to_mpf
from ..constants import DEFAULT_ORACLE_PREC
from ..data_types import EntryStatus, IsolatedRoot, SolveReport
from ..errors import VerificationFailed
from ..isolate.clusters import link_below
from ..poly.multivariate import IntPolyMulti
from ..poly.univariate import squarefree_factors
from .system import SystemSpec


_POLYROOTS_ATTEMPTS = 3


@dataclass(frozen=True)
class Verdict:
    points: int
    roots: int
    oracle_prec: int

    def to_document(self) -> dict[str, Any]:
        return {"verdict": "Pass", "points": self.points, "roots": self.roots, "oracle_prec": self.oracle_prec}


def _numeric_roots(ctx: MPContext, coeffs: Sequence, tol_bits: int, work_bits: int) -> list:
    """Durand-Kerner roots (coefficients highest first) to tolerance 2^-tol_bits."""
    maxsteps = 50 + 4 * work_bits
    for _ in range(_POLYROOTS_ATTEMPTS):
        try:
            with ctx.workprec(tol_bits):
                return ctx.polyroots(coeffs, maxsteps=maxsteps, extraprec=max(10, work_bits - tol_bits))
        except ctx.NoConvergence:
            maxsteps *= 4
    raise VerificationFailed("oracle", f"numeric roots did not converge at {work_bits} bits")


def _evaluate(ctx: MPContext, f: IntPolyMulti, xs: Sequence) -> Any:
    return ctx.fsum(c * ctx.fprod(x**e for x, e in zip(xs, m)) for m, c in f.terms.items())


def _match(ctx: MPContext, numeric: Sequence[tuple[Any, int]], discs: dict[int, IsolatedRoot], tol, what: str):
    """Bijection numeric root -> disc index, with equal multiplicities."""
    if len(numeric) != len(discs):
        raise VerificationFailed(what, f"{len(discs)} reported roots, {len(numeric)} numeric roots")
    matched: dict[int, Any] = {}
    for z, mult in numeric:
        hits = [i for i, r in discs.items() if abs(to_mpc(ctx, r.disc) - z) <= to_mpf(ctx, r.disc.radius) + tol]
        if len(hits) != 1:
            raise VerificationFailed(what, f"numeric root {ctx.nstr(z, 15)} lies in {len(hits)} reported discs")
        i = hits[0]
        if i in matched:
            raise VerificationFailed(what, f"disc {i} holds two distinct numeric roots")
        if discs[i].multiplicity != mult:
            raise VerificationFailed(
                "multiplicity", f"{what} root {ctx.nstr(z, 15)}: reported {discs[i].multiplicity}, numeric {mult}"
            )
        matched[i] = z
    return matched


def _check_structure(report: SolveReport):
    for entry in report.entries:
        roots = entry.roots
        for a in range(len(roots)):
            for b in range(a + 1, len(roots)):
                if not roots[a].disc.is_disjoint(roots[b].disc):
                    raise VerificationFailed("disjointness", f"discs {a} and {b} overlap at point {entry.point.index}")
    for entry in report.entries:
        mult_sum = sum(r.multiplicity for r in entry.roots)
        expected = entry.degree if entry.status == EntryStatus.OK else 0
        if mult_sum != expected or entry.distinct != len(entry.roots):
            raise VerificationFailed(
                "count_conservation",
                f"point {entry.point.index}: multiplicities sum to {mult_sum} for degree {entry.degree}, "
                f"{len(entry.roots)} discs for {entry.distinct} distinct roots",
            )
    total = sum(e.point.mult * sum(r.multiplicity for r in e.roots) for e in report.entries)
    if total != report.total_mult:
        raise VerificationFailed("count_conservation", f"total_mult {report.total_mult}, entries sum to {total}")
    for entry in report.entries:
        point = entry.point
        if point.mult != prod(c.multiplicity for c in point.coords):
            raise VerificationFailed("multiplicity_law", f"point {point.index} has mult {point.mult}")


def verify_report(spec: SystemSpec, report: SolveReport, oracle_prec: int = DEFAULT_ORACLE_PREC) -> Verdict:
    """Pass, or VerificationFailed naming the first discrepancy."""
    p = oracle_prec
    _check_structure(report)
    ctx = new_context(p)

    # grid roots, per axis, with multiplicities from the squarefree split
    axis_tol = ctx.ldexp(1, -(p // 8))
    axis_values: list[dict[int, Any]] = []
    for axis, f in enumerate(spec.F_list):
        numeric = []
        for g, mult in squarefree_factors(f)[1]:
            numeric.extend((z, mult) for z in _numeric_roots(ctx, [ctx.mpf(c) for c in g.highest_first()], p, p + 32))
        discs = {e.point.index[axis]: e.point.coords[axis] for e in report.entries}
        axis_values.append(_match(ctx, numeric, discs, axis_tol, f"grid axis {axis + 1}"))
    expected_points = prod(len(v) for v in axis_values)
    if len({e.point.index for e in report.entries}) != expected_points or len(report.entries) != expected_points:
        raise VerificationFailed("grid", f"{len(report.entries)} entries for {expected_points} grid points")

    roots_checked = 0
    zero_cut = ctx.ldexp(1, -(p // 2))
    for entry in report.entries:
        xs = [axis_values[axis][i] for axis, i in enumerate(entry.point.index)]
        values = [_evaluate(ctx, f_i, xs) for f_i in spec.F.coefficients_in_y()]
        degree = max((i for i, v in enumerate(values) if abs(v) > zero_cut), default=-1)
        if degree != entry.degree:
            raise VerificationFailed("degree", f"point {entry.point.index}: reported {entry.degree}, numeric {degree}")
        if degree < 1:
            continue
        tol_bits = max(8, p // (2 * degree))
        numeric = _numeric_roots(ctx, list(reversed(values[: degree + 1])), tol_bits, p)
        cut = ctx.ldexp(1, -(p // (4 * degree)))
        clusters = [
            (ctx.fsum(numeric[i] for i in group) / len(group), len(group)) for group in link_below(numeric, cut)
        ]
        _match(ctx, clusters, dict(enumerate(entry.roots)), cut, f"fiber over {entry.point.index}")
        roots_checked += len(entry.roots)
    logger.info(f"verified {len(report.entries)} points and {roots_checked} roots at {p} bits")
    return Verdict(len(report.entries), roots_checked, p)
