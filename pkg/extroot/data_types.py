"""Basic data types shared by the isolation, solving and reporting layers."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable

from .arith.ball import ComplexBall
from .poly.ball_poly import BallPolyUni
from .poly.univariate import IntPolyUni


# Given a bit count rho, returns the polynomial with every coefficient radius below 2^-rho.
CoefficientOracle = Callable[[int], BallPolyUni]


@dataclass(frozen=True)
class IsolatedRoot:
    disc: ComplexBall
    multiplicity: int
    # Squarefree integer factor this root is a simple root of, when known; used for refinement.
    factor: IntPolyUni | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class AlgebraicPoint:
    """A grid root x = (x_1..x_n); ``index[i]`` is the position of x_i among the roots of F_i."""

    index: tuple[int, ...]
    coords: tuple[IsolatedRoot, ...]
    mult: int
    # per-axis refined roots, filled lazily by approximate_point
    refined: dict[int, IsolatedRoot] = field(default_factory=dict, compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.coords)


class EntryStatus(str, Enum):
    OK = "ok"
    NO_ROOTS = "no_roots"
    IDENTICALLY_ZERO = "identically_zero"


class SolveMode(str, Enum):
    ADAPTIVE = "adaptive"
    MAX_PRECISION = "max_precision"


@dataclass(frozen=True)
class SolveEntry:
    point: AlgebraicPoint
    degree: int
    distinct: int
    roots: tuple[IsolatedRoot, ...]
    status: EntryStatus = EntryStatus.OK

    def system_multiplicity(self, root: IsolatedRoot) -> int:
        return self.point.mult * root.multiplicity


@dataclass
class SolveReport:
    entries: list[SolveEntry]
    total_mult: int
    mode: SolveMode
    diagnostics: Any | None = None  # SeparationDiagnostics
    timing: dict[str, Any] | None = None
