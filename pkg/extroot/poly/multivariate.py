from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from sympy import ZZ
from sympy.polys.rings import PolyRing, ring

from ..arith.dyadic import ceil_log2
from .univariate import IntPolyUni, bitsize


Monomial = tuple[int, ...]


def variable_names(n: int) -> tuple[str, ...]:
    return tuple(f"X{i}" for i in range(1, n + 1)) + ("Y",)


@lru_cache(maxsize=None)
def polynomial_ring(n: int) -> PolyRing:
    """ZZ[X1..Xn, Y]; Y is the last generator."""
    return ring(",".join(variable_names(n)), ZZ)[0]


@dataclass(frozen=True)
class IntPolyMulti:
    """Sparse polynomial in X1..Xn and Y; exponent vectors have length n + 1 with Y last."""

    n: int
    terms: Mapping[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        width = self.n + 1
        clean: dict[Monomial, int] = {}
        for monomial, coeff in self.terms.items():
            monomial = tuple(int(e) for e in monomial)
            if len(monomial) != width:
                raise ValueError(f"exponent vector {monomial} does not have length {width}")
            coeff = int(coeff)
            if coeff:
                clean[monomial] = clean.get(monomial, 0) + coeff
        object.__setattr__(self, "terms", {m: c for m, c in clean.items() if c})

    @classmethod
    def constant(cls, n: int, c: int) -> "IntPolyMulti":
        return cls(n, {(0,) * (n + 1): c})

    @classmethod
    def from_ring(cls, n: int, element) -> "IntPolyMulti":
        return cls(n, {tuple(m): int(c) for m, c in element.items()})

    @classmethod
    def from_univariate(cls, f: IntPolyUni, n: int, slot: int) -> "IntPolyMulti":
        """Embed ``f`` as a polynomial in the variable at exponent slot ``slot`` (n means Y)."""
        terms = {}
        for i, c in enumerate(f.coeffs):
            monomial = [0] * (n + 1)
            monomial[slot] = i
            terms[tuple(monomial)] = c
        return cls(n, terms)

    def to_ring(self):
        return polynomial_ring(self.n).from_dict(dict(self.terms))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def deg_y(self) -> int:
        return max((m[-1] for m in self.terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    @property
    def bitsize(self) -> int:
        return bitsize(self.terms.values())

    @property
    def linf(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def degree_in(self, slot: int) -> int:
        return max((m[slot] for m in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> int:
        return self.terms.get((0,) * (self.n + 1), 0)

    def coefficient_in_y(self, i: int) -> "IntPolyMulti":
        """f_i(X) with F = sum_i f_i(X) Y^i."""
        return IntPolyMulti(self.n, {m[:-1] + (0,): c for m, c in self.terms.items() if m[-1] == i})

    def coefficients_in_y(self) -> list["IntPolyMulti"]:
        return [self.coefficient_in_y(i) for i in range(self.deg_y + 1)]

    def derivative_in_y(self) -> "IntPolyMulti":
        return IntPolyMulti(self.n, {m[:-1] + (m[-1] - 1,): c * m[-1] for m, c in self.terms.items() if m[-1]})

    def __add__(self, other: "IntPolyMulti") -> "IntPolyMulti":
        return IntPolyMulti.from_ring(self.n, self.to_ring() + other.to_ring())

    def __sub__(self, other: "IntPolyMulti") -> "IntPolyMulti":
        return IntPolyMulti.from_ring(self.n, self.to_ring() - other.to_ring())

    def __neg__(self) -> "IntPolyMulti":
        return IntPolyMulti(self.n, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "IntPolyMulti") -> "IntPolyMulti":
        return IntPolyMulti.from_ring(self.n, self.to_ring() * other.to_ring())

    def __pow__(self, k: int) -> "IntPolyMulti":
        return IntPolyMulti.from_ring(self.n, self.to_ring() ** k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntPolyMulti):
            return NotImplemented
        return self.n == other.n and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = variable_names(self.n)
        parts = []
        for monomial in sorted(self.terms, reverse=True):
            coeff = self.terms[monomial]
            factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, monomial) if e]
            magnitude = abs(coeff)
            if magnitude != 1 or not factors:
                factors.insert(0, str(magnitude))
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, "*".join(factors)))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def truncate_in_y(F: IntPolyMulti, ell: int) -> IntPolyMulti:
    """F_ell = sum_{i <= ell} f_i(X) Y^i."""
    if ell < 0 or ell > max(F.deg_y, 0):
        raise ValueError(f"truncation degree {ell} outside [0, {F.deg_y}]")
    return IntPolyMulti(F.n, {m: c for m, c in F.terms.items() if m[-1] <= ell})


@dataclass(frozen=True)
class SizeProfile:
    """Size parameters of a system: (M, Lambda) for the F_i, (d, tau) for F, n extensions."""

    M: int
    Lambda: int
    d: int
    tau: int
    n: int

    def __post_init__(self):
        for name in ("M", "Lambda", "d", "tau", "n"):
            object.__setattr__(self, name, max(1, int(getattr(self, name))))

    @classmethod
    def of(cls, F_list: Sequence[IntPolyUni], F: IntPolyMulti) -> "SizeProfile":
        return cls(
            M=max(f.degree for f in F_list),
            Lambda=max(bitsize(f.coeffs) for f in F_list),
            d=F.total_degree,
            tau=F.bitsize,
            n=len(F_list),
        )


def max_bitsize(polys: Iterable[IntPolyMulti]) -> int:
    sizes = [p.bitsize for p in polys if not p.is_zero]
    return max(sizes, default=1)


def log2_term_count(f: IntPolyMulti) -> int:
    return ceil_log2(max(1, len(f.terms)))
