"""
Command line front end: solve, count-roots, sqrtsum, bounds, eval and verify.

Every subcommand prints one JSON document on stdout. Exit status is 0 on success, 2 when the
instance is refused by a ceiling and 1 on input errors or a failed verification.
"""

import json
import sys
from pathlib import Path
from typing import Any

import click
import dacite
from loguru import logger

from ..arith.ball import ComplexBall
from ..arith.dyadic import Dyadic
from ..bounds.thresholds import EvalBoundInput, eval_upper_threshold, eval_zero_threshold, sqrt_gap_threshold
from ..configuration import ExtrootConfig, load_config
from ..constants import DEFAULT_ORACLE_PREC, SCHEMA
from ..data_types import SolveMode
from ..errors import ExtrootError, InputError, RefusalError, VerificationFailed
from ..meval.evaluation import naive_eval
from ..poly.multivariate import SizeProfile
from ..poly.parser import parse_polynomial
from ..solver.pipeline import SresCache, build_grid, solve
from ..solver.serialization import disc_to_document, report_from_document, report_to_document
from ..solver.system import load_system
from ..solver.verify import verify_report
from ..sqrtsum.compare import SqrtSumInstance, aggregate_gap_report, compare
from ..subres.counting import count_distinct_roots, degree_at
from .monitor import RunMonitor


MODES = {"adaptive": SolveMode.ADAPTIVE, "max": SolveMode.MAX_PRECISION}


def _configure_logging(verbose: bool, debug: bool):
    logger.remove()
    level = "DEBUG" if debug else "INFO" if verbose else "WARNING"
    logger.add(sys.stderr, level=level)


def _config(ctx: click.Context, **extra: Any) -> ExtrootConfig:
    return load_config({**ctx.obj, **extra})


def _emit(doc: dict[str, Any], config: ExtrootConfig):
    indent = 2 if config.output == "pretty" else None
    click.echo(json.dumps(doc, sort_keys=True, indent=indent))


def _int_list(text: str, name: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise InputError(f"--{name} must be a comma separated list of integers, got {text!r}") from e


@click.group()
@click.option("--verbose", is_flag=True, help="Log pipeline milestones to stderr")
@click.option("--debug", is_flag=True, help="Log precision doubling and refinement steps to stderr")
@click.option("--prec-ceiling", type=int, default=None, help="Largest working precision in bits")
@click.option("--threads", type=int, default=None, help="Worker threads for grid points")
@click.option("--seed", type=int, default=None, help="Seed of the initial root approximations")
@click.option("--output", type=click.Choice(["json", "pretty"]), default=None, help="Output layout")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, debug: bool, prec_ceiling, threads, seed, output):
    """Certified root isolation over multiple algebraic extensions."""
    _configure_logging(verbose, debug)
    ctx.obj = {"precision_ceiling": prec_ceiling, "threads": threads, "seed": seed, "output": output}


@cli.command("solve")
@click.option("--system", "system_path", required=True, type=click.Path(dir_okay=False), help="System JSON file")
@click.option("--mode", type=click.Choice(sorted(MODES)), default="adaptive", show_default=True)
@click.option("--diagnostics", is_flag=True, help="Measure the amortized separation quantities")
@click.option("--timing", is_flag=True, help="Attach per-stage wall-clock timings")
@click.option("--assume-squarefree", is_flag=True, help="Skip distinct-root counting (every F_x squarefree)")
@click.pass_context
def solve_command(ctx: click.Context, system_path: str, mode: str, diagnostics: bool, timing: bool, assume_squarefree):
    config = _config(ctx, diagnostics=diagnostics, timing=timing, assume_squarefree=assume_squarefree)
    spec = load_system(system_path)
    report = solve(spec, MODES[mode], config, RunMonitor())
    _emit(report_to_document(report), config)


@cli.command("count-roots")
@click.option("--system", "system_path", required=True, type=click.Path(dir_okay=False), help="System JSON file")
@click.pass_context
def count_roots_command(ctx: click.Context, system_path: str):
    config = _config(ctx)
    spec = load_system(system_path)
    sres = SresCache(spec.F)
    points = []
    for point in build_grid(spec, config):
        ell = degree_at(spec.F, point, spec.profile, config)
        k, _ = count_distinct_roots(spec.F, point, spec.profile, degree=ell, sres=sres, config=config)
        points.append({"index": list(point.index), "mult": point.mult, "degree": ell, "distinct": k})
    _emit({"schema": SCHEMA, "points": points}, config)


@cli.command("sqrtsum")
@click.option("--a", "a_text", required=True, help="Comma separated nonnegative integers")
@click.option("--b", "b_text", required=True, help="Comma separated nonnegative integers")
@click.option("--aggregate", is_flag=True, help="Also sum |log2| of the difference over all sign patterns")
@click.option("--prec", type=int, default=256, show_default=True, help="Precision of the aggregate logs")
@click.pass_context
def sqrtsum_command(ctx: click.Context, a_text: str, b_text: str, aggregate: bool, prec: int):
    config = _config(ctx)
    inst = SqrtSumInstance.of(_int_list(a_text, "a"), _int_list(b_text, "b"))
    doc = {"schema": SCHEMA, **compare(inst, config).to_document()}
    if aggregate:
        doc["aggregate"] = str(aggregate_gap_report(inst, prec, config))
    _emit(doc, config)


@cli.command("bounds")
@click.option("--n", "n", type=int, required=True, help="Number of extensions")
@click.option("--M", "M", type=int, required=True, help="Degree bound of the F_i")
@click.option("--L", "Lambda", type=int, required=True, help="Bitsize bound of the F_i")
@click.option("--delta", type=int, default=1, show_default=True, help="Total degree of the evaluated polynomial")
@click.option("--sigma", type=int, default=1, show_default=True, help="Bitsize of the evaluated polynomial")
@click.option("--tau", type=int, default=None, help="Bitsize of the square-root sum inputs (adds G)")
@click.pass_context
def bounds_command(ctx: click.Context, n: int, M: int, Lambda: int, delta: int, sigma: int, tau: int | None):
    config = _config(ctx)
    if min(n, M, Lambda, sigma) < 1 or delta < 0:
        raise InputError("bounds need n, M, L, sigma >= 1 and delta >= 0")
    inp = EvalBoundInput(SizeProfile(M, Lambda, max(1, delta), sigma, n), delta, sigma)
    doc: dict[str, Any] = {
        "schema": SCHEMA,
        "L_star": eval_zero_threshold(inp, config.threshold_ceiling),
        "U": eval_upper_threshold(inp, config.threshold_ceiling),
    }
    if tau is not None:
        doc["G"] = sqrt_gap_threshold(n, tau, config.threshold_ceiling)
    _emit(doc, config)


@cli.command("eval")
@click.option("--poly", "poly_text", required=True, help='Polynomial in X1..Xn and Y, e.g. "3*X1^2*Y - 7"')
@click.option("--n", "n", type=int, required=True, help="Number of X variables")
@click.option("--point", "point_text", required=True, help='Comma separated exact coordinates ("m*2^e" or integers)')
@click.option("--prec", type=int, default=64, show_default=True, help="Working precision in bits")
@click.pass_context
def eval_command(ctx: click.Context, poly_text: str, n: int, point_text: str, prec: int):
    config = _config(ctx)
    f = parse_polynomial(poly_text, n)
    try:
        coords = [ComplexBall(Dyadic.parse(v)) for v in point_text.split(",")]
    except ValueError as e:
        raise InputError(f"bad --point: {e}") from e
    value = naive_eval(f, coords, prec)
    _emit({"schema": SCHEMA, "value": disc_to_document(value)}, config)


@cli.command("verify")
@click.option("--system", "system_path", required=True, type=click.Path(dir_okay=False), help="System JSON file")
@click.option("--report", "report_path", required=True, type=click.Path(dir_okay=False), help="Solve output")
@click.option("--oracle-prec", type=int, default=DEFAULT_ORACLE_PREC, show_default=True)
@click.pass_context
def verify_command(ctx: click.Context, system_path: str, report_path: str, oracle_prec: int):
    config = _config(ctx)
    spec = load_system(system_path)
    try:
        report = report_from_document(json.loads(Path(report_path).read_text()))
    except OSError as e:
        raise InputError(f"cannot read report {report_path}: {e}") from e
    try:
        verdict = verify_report(spec, report, oracle_prec)
    except VerificationFailed as e:
        _emit({"schema": SCHEMA, "verdict": "Fail", "reason": e.reason, "detail": e.detail}, config)
        raise
    _emit({"schema": SCHEMA, **verdict.to_document()}, config)


def run(argv: list[str] | None = None) -> int:
    """Run the command line and return its exit status."""
    try:
        status = cli.main(args=argv, prog_name="extroot", standalone_mode=False)
    except RefusalError as e:
        logger.error(f"instance refused: {e}")
        return 2
    except VerificationFailed as e:
        logger.error(f"verification failed: {e}")
        return 1
    except (InputError, json.JSONDecodeError, dacite.DaciteError) as e:
        logger.error(f"invalid input: {e}")
        return 1
    except click.ClickException as e:
        e.show()
        return 1
    except click.Abort:
        return 1
    except ExtrootError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 1
    return status if isinstance(status, int) else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
