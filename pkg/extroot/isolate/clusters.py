"""Certified cluster isolation for polynomials known only through a coefficient oracle."""

from loguru import logger
from mpmath.ctx_mp import MPContext

from ..arith.ball import ComplexBall
from ..arith.convert import dyadic_from_mpf, new_context, point_ball, to_mpc
from ..arith.dyadic import Dyadic
from ..configuration import ExtrootConfig
from ..constants import CLUSTER_GAP_RATIO, ROUCHE_DILATION
from ..data_types import CoefficientOracle, IsolatedRoot
from ..errors import InstanceTooLarge, OracleExhausted
from ..poly.ball_poly import BallPolyUni, rouche_dominates
from .aberth import approximate_roots


def sort_roots(roots: list[IsolatedRoot]) -> list[IsolatedRoot]:
    return sorted(roots, key=lambda r: (r.disc.re_center, r.disc.im_center))


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.components = size

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> bool:
        a, b = self.find(i), self.find(j)
        if a == b:
            return False
        self.parent[max(a, b)] = min(a, b)
        self.components -= 1
        return True

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            out.setdefault(self.find(i), []).append(i)
        return sorted(out.values())


def _pair_distances(approx: list) -> list[tuple]:
    pairs = []
    for i in range(len(approx)):
        for j in range(i + 1, len(approx)):
            pairs.append((abs(approx[i] - approx[j]), i, j))
    pairs.sort(key=lambda t: (t[0], t[1], t[2]))
    return pairs


def link_to_count(approx: list, k: int) -> list[list[int]]:
    """Single-linkage clustering of the approximations down to exactly k groups."""
    uf = _UnionFind(len(approx))
    for _, i, j in _pair_distances(approx):
        if uf.components <= k:
            break
        uf.union(i, j)
    return uf.groups()


def link_below(approx: list, threshold) -> list[list[int]]:
    """Single-linkage clustering merging every pair closer than ``threshold``."""
    uf = _UnionFind(len(approx))
    for dist, i, j in _pair_distances(approx):
        if dist >= threshold:
            break
        uf.union(i, j)
    return uf.groups()


def rouche_count(poly: BallPolyUni, center: ComplexBall, radius: Dyadic, m: int, prec: int) -> bool:
    """Whether every polynomial inside ``poly`` has exactly m roots in the closed disc (center, radius)."""
    return rouche_dominates(poly.taylor_shift(center, prec), radius, m)


def _radius_upper(ctx: MPContext, value) -> Dyadic:
    return dyadic_from_mpf(value).round(30, "up") if value > 0 else Dyadic(0)


def certify_clusters(
    poly: BallPolyUni,
    ctx: MPContext,
    approx: list,
    groups: list[list[int]],
    work_prec: int,
) -> list[IsolatedRoot] | None:
    """Rouché-certified pairwise disjoint discs, one per group, or None when any check fails."""
    roots: list[IsolatedRoot] = []
    for group in groups:
        m = len(group)
        members = [approx[i] for i in group]
        centroid = sum(members, ctx.mpc(0)) / m
        spread = max((abs(z - centroid) for z in members), default=ctx.zero)
        floor = ctx.ldexp(1, -(work_prec // (2 * m)))
        radius = _radius_upper(ctx, ROUCHE_DILATION * max(spread, floor))
        center = point_ball(centroid, work_prec + 8)
        if not rouche_count(poly, center, radius, m, work_prec + 2 * poly.degree + 16):
            logger.debug(f"Rouché test failed for a cluster of {m} at {work_prec} bits")
            return None
        roots.append(IsolatedRoot(ComplexBall(center.re_center, center.im_center, radius), m))
    for a in range(len(roots)):
        for b in range(a + 1, len(roots)):
            if not roots[a].disc.is_disjoint(roots[b].disc):
                logger.debug(f"overlapping cluster discs at {work_prec} bits")
                return None
    return sort_roots(roots)


def _gap_ok(ctx: MPContext, approx: list, groups: list[list[int]], work_prec: int) -> bool:
    """Every group is CLUSTER_GAP_RATIO times farther from the others than its own extent."""
    if len(groups) < 2:
        return True
    owner = {i: g for g, group in enumerate(groups) for i in group}
    for g, group in enumerate(groups):
        floor = ctx.ldexp(1, -(work_prec // (2 * len(group))))
        inner = max([abs(approx[i] - approx[j]) for i in group for j in group] + [floor])
        outer = min(abs(approx[i] - approx[j]) for i in group for j in owner if owner[j] != g)
        if outer <= CLUSTER_GAP_RATIO * inner:
            return False
    return True


def _linear_root(poly: BallPolyUni, work_prec: int) -> IsolatedRoot:
    c0, c1 = poly.coeffs
    return IsolatedRoot((-c0).div(c1, work_prec), 1)


def cluster_isolate(
    oracle: CoefficientOracle,
    degree: int,
    k: int,
    config: ExtrootConfig | None = None,
    target_radius: Dyadic | None = None,
) -> list[IsolatedRoot]:
    """Exactly k disjoint discs, each holding one distinct root with its multiplicity (sum = degree).

    The exact polynomial behind ``oracle`` must have degree ``degree`` and exactly ``k`` distinct roots.
    Precision doubles on every failed certificate; past the ceiling the instance is refused.
    """
    config = config or ExtrootConfig()
    if degree < 1 or not 1 <= k <= degree:
        raise ValueError(f"need 1 <= k <= degree, got k={k}, degree={degree}")
    work_prec = config.start_prec
    approx = None
    while work_prec <= config.precision_ceiling:
        poly = oracle(work_prec + degree + config.guard_bits)
        if poly.degree != degree:
            raise ValueError(f"oracle returned degree {poly.degree}, expected {degree}")
        if not poly.leading.excludes_zero():
            logger.debug(f"leading coefficient not yet separated from 0 at {work_prec} bits")
            work_prec *= 2
            continue
        if degree == 1:
            root = _linear_root(poly, work_prec + config.guard_bits)
            if target_radius is None or root.disc.radius <= target_radius:
                return [root]
            work_prec *= 2
            continue
        ctx = new_context(work_prec)
        coeffs = [to_mpc(ctx, c) for c in reversed(poly.coeffs)]
        approx = approximate_roots(ctx, coeffs, config.seed, warm_start=approx)
        groups = link_to_count(approx, k)
        if _gap_ok(ctx, approx, groups, work_prec):
            roots = certify_clusters(poly, ctx, approx, groups, work_prec)
            if roots is not None and (target_radius is None or all(r.disc.radius <= target_radius for r in roots)):
                logger.debug(f"certified {k} clusters of a degree-{degree} polynomial at {work_prec} bits")
                return roots
        work_prec *= 2
    raise OracleExhausted(work_prec, config.precision_ceiling)


def budget_isolate(
    oracle: CoefficientOracle,
    degree: int,
    budget: int,
    config: ExtrootConfig | None = None,
) -> list[IsolatedRoot]:
    """Single-shot isolation at a fixed budget: approximations closer than 2^-budget are one root.

    The working precision is never lowered below what the budget demands: an instance whose
    demand exceeds the precision ceiling is refused.
    """
    config = config or ExtrootConfig()
    work_prec = degree * (budget + 8) + config.guard_bits
    if work_prec > config.precision_ceiling:
        raise InstanceTooLarge(
            f"separation budget of {budget} bits needs {work_prec} bits for degree {degree} "
            f"(ceiling {config.precision_ceiling})"
        )
    poly = oracle(work_prec + degree + config.guard_bits)
    if not poly.leading.excludes_zero():
        raise OracleExhausted(work_prec, config.precision_ceiling)
    if degree == 1:
        return [_linear_root(poly, work_prec + config.guard_bits)]
    ctx = new_context(work_prec)
    coeffs = [to_mpc(ctx, c) for c in reversed(poly.coeffs)]
    approx = approximate_roots(ctx, coeffs, config.seed, max_iter=4 * (budget + 8) + 200)
    groups = link_below(approx, ctx.ldexp(1, -budget))
    roots = certify_clusters(poly, ctx, approx, groups, work_prec)
    if roots is None:
        raise OracleExhausted(work_prec, config.precision_ceiling)
    logger.debug(f"budget isolation: {len(roots)} distinct roots of degree {degree} at {work_prec} bits")
    return roots
