import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any

import dacite
from loguru import logger

from ..errors import InputError, SystemFormatError
from ..poly.multivariate import IntPolyMulti, SizeProfile
from ..poly.parser import parse_polynomial, parse_univariate
from ..poly.univariate import IntPolyUni


@dataclass
class SystemDocument:
    """JSON form of a system: {"n": 2, "F": "Y - X1*X2", "F_i": ["X1^2 - 2", "X2^2 - 3"]}."""

    n: int
    F: str
    F_i: list[str]


@dataclass(frozen=True)
class SystemSpec:
    """F_1(X_1) = ... = F_n(X_n) = F(X_1, ..., X_n, Y) = 0."""

    F_list: tuple[IntPolyUni, ...]
    F: IntPolyMulti

    def __post_init__(self):
        object.__setattr__(self, "F_list", tuple(self.F_list))
        if not self.F_list:
            raise SystemFormatError("a system needs at least one extension polynomial F_1")
        for i, f in enumerate(self.F_list, start=1):
            if f.degree < 1:
                raise SystemFormatError(f"F_{i} must be nonconstant, got degree {f.degree}")
        if self.F.n != len(self.F_list):
            raise SystemFormatError(f"F has {self.F.n} X-variables but {len(self.F_list)} extensions are given")
        if self.F.deg_y < 1:
            raise SystemFormatError("F must involve Y")

    @property
    def n(self) -> int:
        return len(self.F_list)

    @cached_property
    def profile(self) -> SizeProfile:
        return SizeProfile.of(self.F_list, self.F)

    @classmethod
    def parse(cls, F: str, F_i: list[str]) -> "SystemSpec":
        n = len(F_i)
        F_list = tuple(parse_univariate(text, axis, n) for axis, text in enumerate(F_i, start=1))
        return cls(F_list, parse_polynomial(F, n))


def system_from_document(doc: SystemDocument) -> SystemSpec:
    if doc.n < 1 or len(doc.F_i) != doc.n:
        raise SystemFormatError(f"n = {doc.n} but {len(doc.F_i)} polynomials F_i are given")
    return SystemSpec.parse(doc.F, doc.F_i)


def system_from_dict(data: dict[str, Any]) -> SystemSpec:
    try:
        doc = dacite.from_dict(data_class=SystemDocument, data=data, config=dacite.Config(strict=True))
    except dacite.DaciteError as e:
        raise SystemFormatError(f"malformed system document: {e}") from e
    return system_from_document(doc)


def load_system(path: str | Path) -> SystemSpec:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as e:
        raise InputError(f"cannot read system file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise SystemFormatError(f"{path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise SystemFormatError(f"{path} must hold a JSON object")
    spec = system_from_dict(data)
    logger.info(f"loaded system with n = {spec.n} from {path}: {spec.profile}")
    return spec
