"""End-to-end root isolation of F_1(X_1) = ... = F_n(X_n) = F(X, Y) = 0.

Per grid point x: detect ell = deg F_x, count the distinct roots k, then isolate F_x through a
coefficient oracle backed by refinable discs of x. The max_precision mode replaces counting and
adaptive isolation by a single run at a fixed precision budget.
"""

import threading
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from math import prod

from loguru import logger

from ..arith.dyadic import Dyadic
from ..bounds.diagnostics import SeparationDiagnostics, measure_point
from ..bounds.thresholds import separation_budget
from ..cli.monitor import RunMonitor
from ..configuration import ExtrootConfig
from ..constants import DEGREE_MINUS_INFINITY
from ..data_types import AlgebraicPoint, EntryStatus, IsolatedRoot, SolveEntry, SolveMode, SolveReport
from ..errors import InsufficientPrecision, OracleExhausted
from ..isolate.clusters import budget_isolate, cluster_isolate
from ..isolate.integer import isolate_integer_poly
from ..isolate.refine import refine_root
from ..meval.points import eval_at_point, fiber_coefficients
from ..poly.ball_poly import BallPolyUni
from ..poly.multivariate import IntPolyMulti, max_bitsize
from ..subres.counting import count_distinct_roots, degree_at
from ..subres.sequence import SresSequence, sres_of_truncation
from .system import SystemSpec


# diagnostics refine the roots of a fiber at most this many times
_DIAGNOSTICS_RETRIES = 6


def build_grid(spec: SystemSpec, config: ExtrootConfig | None = None) -> list[AlgebraicPoint]:
    """All grid roots in lexicographic order of the per-axis root indices."""
    config = config or ExtrootConfig()
    axes = [isolate_integer_poly(f, config) for f in spec.F_list]
    grid = []
    for combo in product(*(list(enumerate(roots)) for roots in axes)):
        index = tuple(i for i, _ in combo)
        coords = tuple(r for _, r in combo)
        grid.append(AlgebraicPoint(index, coords, prod(r.multiplicity for r in coords)))
    logger.info(f"grid of {len(grid)} points ({' x '.join(str(len(a)) for a in axes)})")
    return grid


class FiberOracle:
    """Coefficients of 2^-s F_x(Y) truncated at degree ell, with 1/4 <= |lc| <= 1."""

    def __init__(self, F: IntPolyMulti, point: AlgebraicPoint, degree: int, config: ExtrootConfig):
        self.F = F
        self.point = point
        self.degree = degree
        self.config = config
        self._shift: int | None = None
        self._lock = threading.Lock()

    @property
    def shift(self) -> int:
        with self._lock:
            if self._shift is None:
                self._shift = self._leading_shift()
            return self._shift

    def _leading_shift(self) -> int:
        lc = self.F.coefficient_in_y(self.degree)
        bits = self.config.start_prec
        while True:
            ball = eval_at_point(lc, self.point, bits, self.config)
            lo, hi = ball.mag_lower(), ball.mag_upper()
            if lo > 0 and hi <= lo * 2:
                return hi.ceil_log2()
            bits *= 2
            if bits > self.config.precision_ceiling:
                raise OracleExhausted(bits, self.config.precision_ceiling)

    def __call__(self, rho: int) -> BallPolyUni:
        s = self.shift
        poly = fiber_coefficients(self.F, self.point, max(1, rho - s), self.config).truncate(self.degree)
        return BallPolyUni(poly.scale_2exp(-s).coeffs, known_leading_nonzero=True)


class SresCache:
    """Subresultant sequences of the truncations F_ell, shared by all grid points."""

    def __init__(self, F: IntPolyMulti):
        self.F = F
        self._sequences: dict[int, SresSequence] = {}
        self._lock = threading.RLock()

    def __call__(self, ell: int) -> SresSequence:
        with self._lock:
            if ell not in self._sequences:
                self._sequences[ell] = sres_of_truncation(self.F, ell)
            return self._sequences[ell]


class _Solver:
    def __init__(self, spec: SystemSpec, mode: SolveMode, config: ExtrootConfig, monitor: RunMonitor):
        self.spec = spec
        self.mode = mode
        self.config = config
        self.monitor = monitor
        self.sres = SresCache(spec.F)
        self._budget: int | None = None
        self._budget_lock = threading.Lock()

    @property
    def budget(self) -> int:
        """Bits B of the max_precision mode; past the threshold ceiling the instance is refused."""
        with self._budget_lock:
            if self._budget is None:
                F = self.spec.F
                sequence = self.sres(F.deg_y) if F.deg_y > 1 else None
                sres_bits = max_bitsize(sequence.coeffs) if sequence is not None else F.bitsize
                self._budget = separation_budget(self.spec.profile, sres_bits, self.config.threshold_ceiling)
                logger.info(f"max_precision budget B = {self._budget} bits")
            return self._budget

    def solve_point(self, point: AlgebraicPoint) -> SolveEntry:
        F, config = self.spec.F, self.config
        with self.monitor.stage("degree"):
            ell = degree_at(F, point, self.spec.profile, config)
        if ell == DEGREE_MINUS_INFINITY:
            logger.warning(f"F vanishes identically on the fiber over point {point.index}")
            return SolveEntry(point, ell, 0, (), EntryStatus.IDENTICALLY_ZERO)
        if ell == 0:
            logger.info(f"point {point.index}: F_x is a nonzero constant")
            return SolveEntry(point, 0, 0, (), EntryStatus.NO_ROOTS)
        oracle = FiberOracle(F, point, ell, config)
        if self.mode == SolveMode.MAX_PRECISION:
            with self.monitor.stage("isolate"):
                roots = budget_isolate(oracle, ell, self.budget, config)
            return SolveEntry(point, ell, len(roots), tuple(roots))
        with self.monitor.stage("count"):
            if config.assume_squarefree:
                k = ell
            else:
                k, _ = count_distinct_roots(F, point, self.spec.profile, degree=ell, sres=self.sres, config=config)
        logger.info(f"point {point.index}: degree {ell}, {k} distinct roots")
        with self.monitor.stage("isolate"):
            roots = cluster_isolate(oracle, ell, k, config)
        return SolveEntry(point, ell, k, tuple(roots))

    def diagnose(self, entry: SolveEntry):
        roots = list(entry.roots)
        oracle = FiberOracle(self.spec.F, entry.point, entry.degree, self.config) if roots else None
        for attempt in range(_DIAGNOSTICS_RETRIES + 1):
            try:
                return measure_point(self.spec.F, entry.point, roots, self.config.diagnostics_prec, self.config)
            except InsufficientPrecision as e:
                if attempt == _DIAGNOSTICS_RETRIES or oracle is None:
                    raise
                logger.debug(f"diagnostics at point {entry.point.index}: {e}; refining roots")
                roots = [self._refine(r, oracle, entry) for r in roots]

    def _refine(self, root: IsolatedRoot, oracle: FiberOracle, entry: SolveEntry) -> IsolatedRoot:
        target = root.disc.radius.scale_2exp(-16) if root.disc.radius > 0 else Dyadic(0)
        return refine_root(root, oracle, target, self.config, degree=entry.degree, distinct=entry.distinct)


def solve(
    spec: SystemSpec,
    mode: SolveMode = SolveMode.ADAPTIVE,
    config: ExtrootConfig | None = None,
    monitor: RunMonitor | None = None,
) -> SolveReport:
    """Isolating discs and multiplicities for every root (x, y) of the system."""
    config = config or ExtrootConfig()
    monitor = monitor or RunMonitor()
    solver = _Solver(spec, SolveMode(mode), config, monitor)
    with monitor.stage("grid"):
        grid = build_grid(spec, config)
    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            entries = list(pool.map(solver.solve_point, grid))
    else:
        entries = [solver.solve_point(point) for point in grid]
    total_mult = sum(e.point.mult * sum(r.multiplicity for r in e.roots) for e in entries)
    report = SolveReport(entries, total_mult, solver.mode)
    if config.diagnostics:
        with monitor.stage("diagnostics"):
            diagnostics = SeparationDiagnostics(config.diagnostics_prec)
            for entry in entries:
                diagnostics.add(solver.diagnose(entry))
        report.diagnostics = diagnostics
    if config.timing:
        report.timing = monitor.summary()
    logger.info(f"solved {len(entries)} grid points, total multiplicity {total_mult} ({solver.mode.value})")
    return report
