"""
Command-line interface for seqforge.

Subcommands: design, bench, compare-strategies, compare-algos, bounds.

Author: seqforge developers
License: MIT
"""

import functools
import json
import logging
from pathlib import Path

import click

from .core.constants import SOLVER_DEFAULTS
from .core.sequence import make_initial_sequence
from .core.validators import ValidationError
from .harness.compare import compare_algorithms, compare_strategies, speedup_table
from .harness.plan import load_plan
from .harness.runner import run_plan
from .majorizer.bounds import bound_diagnostics
from .metrics.correlation import autocorrelation_fft, summarize_sequence
from .parsers.base_parser import ParseError
from .parsers.sequence_parser import SequenceParser, read_sequence
from .parsers.table_parser import TableParser
from .solvers.base_solver import SolverConfig
from .solvers.dispatch import solve

logger = logging.getLogger(__name__)

INIT_CHOICES = click.Choice(["random", "golomb", "frank"], case_sensitive=False)


def usage_errors(func):
    """Report validation and parse failures as click usage errors."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (ValidationError, ParseError) as e:
            raise click.UsageError(str(e))
    return wrapper


@click.group()
@click.version_option(package_name="seqforge")
@click.option("--verbose", "-v", is_flag=True, help="Log at INFO level.")
@click.option("--debug", is_flag=True, help="Log at DEBUG level.")
def main(verbose: bool, debug: bool):
    """Unimodular sequence design by ISL minimization."""
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(asctime)s %(name)s %(levelname)s: %(message)s")


@main.command()
@click.option("--length", "-P", "length", type=int, required=True, help="Sequence length P.")
@click.option("--init", "init", type=INIT_CHOICES, default="random", show_default=True)
@click.option("--algo", type=click.Choice(["fisl", "can", "misl", "islnew"], case_sensitive=False),
              default="fisl", show_default=True)
@click.option("--strategy", type=click.Choice(["tr", "ei", "bei", "befft"], case_sensitive=False),
              default="befft", show_default=True, help="FISL bound strategy.")
@click.option("--accel", is_flag=True, help="SQUAREM acceleration (misl, islnew).")
@click.option("--tol", type=float, default=SOLVER_DEFAULTS["tolerance"], show_default=True)
@click.option("--max-iter", type=int, default=SOLVER_DEFAULTS["max_iterations"], show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out", type=click.Path(file_okay=False), required=True)
@usage_errors
def design(length, init, algo, strategy, accel, tol, max_iter, seed, out):
    """Design one sequence and write sequence, trace and autocorrelation files."""
    config = SolverConfig(algorithm=algo, bound_strategy=strategy, accelerate=accel,
                          tolerance=tol, max_iterations=max_iter, seed=seed)
    z0 = make_initial_sequence(init, length, seed)
    result = solve(z0, config)

    out = Path(out)
    SequenceParser().write_sequence(result.sequence, out / "sequence.seq")
    TableParser().write_trace(result.trace, out / "trace.csv")
    TableParser().write_profile(autocorrelation_fft(result.sequence), out / "autocorrelation.csv")
    summary = {
        "algorithm": config.label,
        "init": init,
        "seed": seed,
        "iterations": result.iterations,
        "stop_reason": result.stop_reason,
        "wall_seconds": result.wall_seconds,
        "initial": summarize_sequence(z0),
        "final": summarize_sequence(result.sequence),
    }
    with open(out / "result.json", 'w') as f:
        json.dump(summary, f, indent=2)

    click.echo(f"{config.label}: P={length} {result.stop_reason} after {result.iterations} "
               f"iterations, ISL {result.initial_isl:.6g} -> {result.final_isl:.6g} "
               f"({result.wall_seconds:.3f}s)")


@main.command()
@click.option("--plan", "plan_path", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Plan file (JSON or YAML).")
@click.option("--out", "out", type=click.Path(file_okay=False), required=True)
@click.option("--workers", type=int, default=None, help="Parallel runs (plan value by default).")
@click.option("--progress/--no-progress", default=False)
@usage_errors
def bench(plan_path, out, workers, progress):
    """Run an experiment plan."""
    plan = load_plan(plan_path)
    report = run_plan(plan, out, workers=workers, progress=progress)
    click.echo(report.aggregates().to_string(index=False))


def _comparison_options(func):
    func = click.option("--out", "out", type=click.Path(file_okay=False), default=None)(func)
    func = click.option("--max-iter", type=int, default=SOLVER_DEFAULTS["max_iterations"])(func)
    func = click.option("--tol", type=float, default=SOLVER_DEFAULTS["tolerance"], show_default=True)(func)
    func = click.option("--seed", type=int, default=0, show_default=True)(func)
    func = click.option("--init", "init", type=INIT_CHOICES, default="random", show_default=True)(func)
    func = click.option("--length", "-P", "length", type=int, required=True)(func)
    return func


@main.command("compare-strategies")
@_comparison_options
@usage_errors
def compare_strategies_cmd(length, init, seed, tol, max_iter, out):
    """Run FISL with TR, EI, BEI and BEFFT from one initialization."""
    table = compare_strategies(length, init, seed, tol, max_iter, output_dir=out, strict=False)
    click.echo(table.to_string(index=False))
    click.echo()
    click.echo(speedup_table(table).to_string(index=False))


@main.command("compare-algos")
@_comparison_options
@usage_errors
def compare_algos_cmd(length, init, seed, tol, max_iter, out):
    """Run FISL-BEFFT, CAN, MISL, ISL-NEW and their accelerated variants from one initialization."""
    table = compare_algorithms(length, init, seed, tol, max_iter, output_dir=out)
    click.echo(table.to_string(index=False))
    click.echo()
    click.echo(speedup_table(table).to_string(index=False))


@main.command()
@click.option("--sequence", "sequence_path", type=click.Path(exists=True, dir_okay=False), required=True)
@usage_errors
def bounds(sequence_path):
    """Print the four majorizer constants against the exact 8*lambda_max(R) as CSV."""
    z = read_sequence(sequence_path)
    table = bound_diagnostics(z)
    click.echo(table.to_csv(index=False, float_format="%.17g"), nl=False)


if __name__ == "__main__":
    main()
