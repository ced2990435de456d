"""
Experiment runner.

Runs an ExperimentPlan with a paired design: each (length, init, trial)
cell generates one initialization, writes it to ``init/`` and every
algorithm in the plan starts from that file. Each run writes its trace,
final sequence and autocorrelation profile; the report is merged once all
runs finish and exported as summary JSON/CSV.

Author: seqforge developers
License: MIT
"""

import hashlib
import logging
import tempfile
from dataclasses import dataclass, asdict, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd
from joblib import Parallel, delayed
from tqdm import tqdm

from ..core.constants import FILE_FORMATS, HARNESS_DEFAULTS, NUMERICAL_TOLERANCES
from ..core.sequence import Sequence, make_initial_sequence, max_modulus_error
from ..core.validators import InternalConsistencyError, PlanValidationError
from ..metrics.correlation import autocorrelation_fft, summarize_sequence
from ..parsers.sequence_parser import SequenceParser
from ..parsers.table_parser import TableParser
from ..solvers.base_solver import SolverResult
from ..solvers.dispatch import solve
from .export import export_summary
from .plan import AlgorithmSpec, Cell, ExperimentPlan

logger = logging.getLogger(__name__)


class FeasibilityMonitor:
    """
    Iteration callback checking max | |z_n| - 1 | on sampled iterations.

    Every iteration is checked for P up to 100; otherwise every 100th.

    Raises:
        InternalConsistencyError: If a checked iterate leaves the unit circle
    """

    def __init__(self, length: int,
                 tol: float = NUMERICAL_TOLERANCES["unit_modulus"]):
        self.length = length
        self.tol = tol
        if length <= HARNESS_DEFAULTS["feasibility_full_check_max_length"]:
            self.every = 1
        else:
            self.every = HARNESS_DEFAULTS["feasibility_sample_every"]
        self.checks = 0
        self.max_deviation = 0.0

    def __call__(self, iteration: int, z: Sequence) -> None:
        if iteration % self.every:
            return
        deviation = max_modulus_error(z)
        self.checks += 1
        self.max_deviation = max(self.max_deviation, deviation)
        if deviation > self.tol:
            raise InternalConsistencyError(
                f"iterate {iteration} is not unimodular: max | |z_n| - 1 | = {deviation:.3e}"
            )


@dataclass
class RunRecord:
    """One solver run of a plan; the first fields are the summary CSV columns."""
    length: int
    init: str
    algorithm: str
    strategy: str
    trial: int
    iterations: int
    final_isl: float
    final_psl: Optional[float]
    wall_seconds: float
    stop_reason: str
    label: str = ""
    seed: int = 0
    initial_isl: float = 0.0
    init_sha256: str = ""
    init_file: str = ""
    sequence_file: str = ""
    trace_file: str = ""
    profile_file: str = ""
    feasibility_checks: int = 0
    workers: int = 1
    initial_summary: Dict[str, Any] = field(default_factory=dict)
    final_summary: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class ExperimentReport:
    """
    Per-run records of a plan with per-cell aggregates.

    Attributes:
        records: Run records in plan order
        plan: The plan that produced them (None for ad hoc reports)
        workers: Worker count used; parallel runs perturb wall-clock times
    """
    records: List[RunRecord] = field(default_factory=list)
    plan: Optional[ExperimentPlan] = None
    workers: int = 1

    def __len__(self) -> int:
        return len(self.records)

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame([r.to_dict() for r in self.records])

    def aggregates(self) -> pd.DataFrame:
        """Mean/min/max wall_seconds and iterations per (length, init, algorithm, strategy)."""
        df = self.to_dataframe()
        if df.empty:
            return df
        keys = ["length", "init", "algorithm", "strategy"]
        grouped = df.groupby(keys, sort=False)
        out = grouped.agg(
            runs=("trial", "count"),
            wall_seconds_mean=("wall_seconds", "mean"),
            wall_seconds_min=("wall_seconds", "min"),
            wall_seconds_max=("wall_seconds", "max"),
            iterations_mean=("iterations", "mean"),
            iterations_min=("iterations", "min"),
            iterations_max=("iterations", "max"),
            final_isl_mean=("final_isl", "mean"),
        )
        return out.reset_index()

    def verify_pairing(self) -> None:
        """
        Check that all runs of a cell started from the same initialization file.

        Raises:
            InternalConsistencyError: If digests differ within a cell
        """
        digests: Dict[tuple, str] = {}
        for record in self.records:
            key = (record.length, record.init, record.trial)
            expected = digests.setdefault(key, record.init_sha256)
            if record.init_sha256 != expected:
                raise InternalConsistencyError(f"cell {key} runs started from different initializations")


def file_sha256(path: Union[str, Path]) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def execute_run(task: Dict[str, Any]) -> RunRecord:
    """
    Run one algorithm on one cell and write its files.

    ``task`` holds only plain values so it can be shipped to worker
    processes: output_dir, init_file, length, init, trial, seed, spec
    (AlgorithmSpec dict), tolerance, max_iterations, workers and optionally
    init_summary (``summarize_sequence`` of the initialization).
    """
    spec = AlgorithmSpec.parse(task["spec"])
    output_dir = Path(task["output_dir"])
    init_file = Path(task["init_file"])
    config = spec.to_config(task["tolerance"], task["max_iterations"], task["seed"])
    stem = f"{task['length']}_{task['init']}_{task['trial']}_{config.label}"

    z0 = SequenceParser().read_sequence(init_file)
    digest = file_sha256(init_file)
    monitor = FeasibilityMonitor(z0.length)
    logger.info(f"Run {stem}")
    try:
        result: SolverResult = solve(z0, config, callback=monitor)
    except Exception as e:
        logger.error(f"Run {stem} failed: {e}")
        raise

    tables = TableParser()
    sequence_file = SequenceParser().write_sequence(result.sequence, output_dir / "sequences" / f"{stem}.seq")
    trace_file = tables.write_trace(result.trace, output_dir / "traces" / f"{stem}.csv")
    profile_file = tables.write_profile(autocorrelation_fft(result.sequence),
                                        output_dir / "autocorrelation" / f"{stem}.csv")
    logger.debug(f"Run {stem}: wrote {sequence_file}, {trace_file}, {profile_file}")

    return RunRecord(
        length=task["length"],
        init=task["init"],
        algorithm=spec.algorithm,
        strategy=spec.strategy_field,
        trial=task["trial"],
        iterations=result.iterations,
        final_isl=result.final_isl,
        final_psl=result.final_psl,
        wall_seconds=result.wall_seconds,
        stop_reason=result.stop_reason,
        label=config.label,
        seed=task["seed"],
        initial_isl=result.initial_isl,
        init_sha256=digest,
        init_file=str(init_file.relative_to(output_dir)),
        sequence_file=str(sequence_file.relative_to(output_dir)),
        trace_file=str(trace_file.relative_to(output_dir)),
        profile_file=str(profile_file.relative_to(output_dir)),
        feasibility_checks=monitor.checks,
        workers=task["workers"],
        initial_summary=task.get("init_summary") or summarize_sequence(z0),
        final_summary=summarize_sequence(result.sequence),
    )


class ExperimentRunner:
    """
    Experiment runner and output manager.

    Example:
        >>> runner = ExperimentRunner("results/desk")
        >>> report = runner.run_plan(ExperimentPlan.desk())
        >>> report.aggregates()
    """

    def __init__(self, output_dir: Union[str, Path],
                 workers: Optional[int] = None,
                 progress: bool = False):
        """
        Initialize runner.

        Args:
            output_dir: Directory receiving all run outputs
            workers: Parallel runs (the plan's value if None)
            progress: Show a tqdm progress bar

        Raises:
            OSError: If output_dir cannot be created or written
        """
        self.output_dir = Path(output_dir)
        self.workers = workers
        self.progress = progress
        self._check_writable()
        logger.info(f"Output directory: {self.output_dir}")

    def _check_writable(self) -> None:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        with tempfile.NamedTemporaryFile(dir=self.output_dir, prefix=".writable_"):
            pass

    def prepare_cell(self, cell: Cell) -> Dict[str, Any]:
        """Generate and write the initialization of a cell."""
        z0 = make_initial_sequence(cell.init, cell.length, cell.seed)
        init_file = SequenceParser().write_sequence(z0, self.output_dir / "init" / f"{cell.key}.seq")
        summary = summarize_sequence(z0)
        return {"init_file": str(init_file), "sha256": file_sha256(init_file), "summary": summary}

    def run_plan(self, plan: ExperimentPlan) -> ExperimentReport:
        """
        Run every algorithm of the plan on every cell.

        Returns:
            ExperimentReport (also exported to summary.json / summary.csv)
        """
        plan.validate()
        workers = self.workers or plan.workers
        logger.info(f"Running plan: {plan.num_runs} runs, workers={workers}")

        tasks = []
        for cell in plan.cells():
            prepared = self.prepare_cell(cell)
            logger.debug(f"Cell {cell.key}: initial ISL {prepared['summary']['isl']:.6e}")
            for spec in plan.algorithms:
                tasks.append({
                    "output_dir": str(self.output_dir),
                    "init_file": prepared["init_file"],
                    "length": cell.length,
                    "init": cell.init,
                    "trial": cell.trial,
                    "seed": cell.seed,
                    "spec": spec.to_dict(),
                    "tolerance": plan.tolerance,
                    "max_iterations": plan.max_iterations,
                    "workers": workers,
                    "init_summary": prepared["summary"],
                })

        iterator = tqdm(tasks, desc="runs", disable=not self.progress)
        if workers > 1:
            records = Parallel(n_jobs=workers)(delayed(execute_run)(task) for task in iterator)
        else:
            records = [execute_run(task) for task in iterator]

        report = ExperimentReport(records=list(records), plan=plan, workers=workers)
        report.verify_pairing()

        export_summary(report, self.output_dir / "summary.json")
        logger.info(f"Plan completed: {len(report)} runs")
        return report


def run_plan(plan: ExperimentPlan, output_dir: Union[str, Path],
             workers: Optional[int] = None, progress: bool = False) -> ExperimentReport:
    """
    Run a plan into output_dir.

    Raises:
        OSError: If output_dir is not writable (before any solve starts)
        PlanValidationError: If the plan is invalid
    """
    if not isinstance(plan, ExperimentPlan):
        raise PlanValidationError(f"expected an ExperimentPlan, got {type(plan).__name__}")
    return ExperimentRunner(output_dir, workers=workers, progress=progress).run_plan(plan)
