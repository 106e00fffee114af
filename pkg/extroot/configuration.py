import os
from dataclasses import dataclass
from typing import Any

from loguru import logger
from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException

from .constants import (
    DEFAULT_DIAGNOSTICS_PREC,
    DEFAULT_GUARD_BITS,
    DEFAULT_PRECISION_CEILING,
    DEFAULT_START_PREC,
    ENV_PREC_CEILING,
    ENV_THREADS,
    THRESHOLD_CEILING,
)
from .errors import InputError


OUTPUT_FORMATS = ("json", "pretty")


@dataclass
class ExtrootConfig:
    r"""
    Runtime configuration shared by the solver, the comparator and the command line.

    Args:
        precision_ceiling (`int`, defaults to 65536):
            Largest working precision, in bits, any adaptive loop may reach. Going past it refuses the
            instance with `OracleExhausted`. Must be at least 64.
        threshold_ceiling (`int`, defaults to 2^24):
            Largest zero-test threshold accepted from the bound formulas. Larger thresholds raise
            `ThresholdOverflow`.
        start_prec (`int`, defaults to 64):
            First working precision of every doubling schedule.
        guard_bits (`int`, defaults to 32):
            Extra bits requested from coefficient oracles on top of the working precision.
        threads (`int`, defaults to 1):
            Worker threads used to process grid points. Output does not depend on it.
        seed (`int`, defaults to 0):
            Seed of the random perturbation applied to the initial root approximations.
        output (`str`, defaults to "json"):
            Either "json" (one line) or "pretty" (indented). Keys are always sorted.
        diagnostics (`bool`, defaults to False):
            Measure the amortized separation quantities after solving.
        diagnostics_prec (`int`, defaults to 128):
            Precision of the diagnostic logarithms.
        assume_squarefree (`bool`, defaults to False):
            Skip distinct-root counting and take k = ℓ at every grid point. Only valid when every fiber
            polynomial is known to be squarefree.
        timing (`bool`, defaults to False):
            Attach per-stage wall-clock timings to the solve report. Timings make the output
            non-deterministic, so they are off by default.
    """

    precision_ceiling: int = DEFAULT_PRECISION_CEILING
    threshold_ceiling: int = THRESHOLD_CEILING
    start_prec: int = DEFAULT_START_PREC
    guard_bits: int = DEFAULT_GUARD_BITS
    threads: int = 1
    seed: int = 0
    output: str = "json"
    diagnostics: bool = False
    diagnostics_prec: int = DEFAULT_DIAGNOSTICS_PREC
    assume_squarefree: bool = False
    timing: bool = False

    def validate(self) -> "ExtrootConfig":
        if self.precision_ceiling < 64:
            raise InputError(f"precision ceiling must be at least 64 bits, got {self.precision_ceiling}")
        if self.start_prec < 2 or self.start_prec > self.precision_ceiling:
            raise InputError(f"start precision {self.start_prec} outside [2, {self.precision_ceiling}]")
        if self.threads < 1:
            raise InputError(f"threads must be positive, got {self.threads}")
        if self.output not in OUTPUT_FORMATS:
            raise InputError(f"output must be one of {OUTPUT_FORMATS}, got {self.output!r}")
        if self.diagnostics_prec < 16:
            raise InputError(f"diagnostics precision too small: {self.diagnostics_prec}")
        return self


def _environment_overrides() -> dict[str, Any]:
    overrides: dict[str, Any] = {}
    for key, name in ((ENV_PREC_CEILING, "precision_ceiling"), (ENV_THREADS, "threads")):
        raw = os.environ.get(key)
        if raw is None or raw.strip() == "":
            continue
        try:
            overrides[name] = int(raw)
        except ValueError as e:
            raise InputError(f"{key} must be an integer, got {raw!r}") from e
        logger.debug(f"{key}={overrides[name]} taken from the environment")
    return overrides


def load_config(overrides: dict[str, Any] | None = None, use_environment: bool = True) -> ExtrootConfig:
    """Merge defaults, environment fallbacks and explicit overrides (``None`` values are ignored)."""
    base = OmegaConf.structured(ExtrootConfig)
    layers = [base]
    if use_environment:
        layers.append(OmegaConf.create(_environment_overrides()))
    if overrides:
        layers.append(OmegaConf.create({k: v for k, v in overrides.items() if v is not None}))
    try:
        merged = OmegaConf.merge(*layers)
        config = OmegaConf.to_object(merged)
    except OmegaConfBaseException as e:
        raise InputError(f"invalid configuration: {e}") from e
    return config.validate()
