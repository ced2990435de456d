"""
Paired comparisons from one initialization.

``compare_strategies`` runs FISL under TR, EI, BEI and BEFFT;
``compare_algorithms`` runs FISL-BEFFT against CAN, MISL, ACC-MISL,
ISL-NEW and ACC-ISL-NEW. Every row starts from the identical z0 and runs
sequentially, so wall-clock times are comparable.

Author: seqforge developers
License: MIT
"""

import logging
import warnings
from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np
import pandas as pd

from ..core.constants import SOLVER_DEFAULTS
from ..core.sequence import Sequence, make_initial_sequence
from ..core.validators import InternalConsistencyError, NumericalWarning, ValidationError
from ..parsers.sequence_parser import SequenceParser
from ..parsers.table_parser import TableParser
from ..solvers.dispatch import solve
from .plan import ALGORITHM_SET, STRATEGY_SET, AlgorithmSpec

logger = logging.getLogger(__name__)

COMPARISON_COLUMNS = [
    "label", "algorithm", "strategy", "iterations", "wall_seconds",
    "final_isl", "final_psl", "initial_isl", "stop_reason",
]


def run_comparison(z0: Sequence,
                   specs: Iterable[AlgorithmSpec],
                   tolerance: float = SOLVER_DEFAULTS["tolerance"],
                   max_iterations: int = SOLVER_DEFAULTS["max_iterations"],
                   seed: int = 0,
                   output_dir: Optional[Union[str, Path]] = None) -> pd.DataFrame:
    """
    Run each algorithm variant from z0.

    Args:
        z0: Shared initial sequence
        specs: Algorithm variants
        tolerance: Stopping tolerance
        max_iterations: Iteration cap
        seed: Seed recorded in each solver config
        output_dir: If given, traces and final sequences are written here

    Returns:
        DataFrame with one row per variant
    """
    rows = []
    out = Path(output_dir) if output_dir is not None else None
    if out is not None:
        SequenceParser().write_sequence(z0, out / "init.seq")
    for spec in specs:
        config = spec.to_config(tolerance, max_iterations, seed)
        result = solve(z0, config)
        rows.append({
            "label": config.label,
            "algorithm": spec.algorithm,
            "strategy": spec.strategy_field,
            "iterations": result.iterations,
            "wall_seconds": result.wall_seconds,
            "final_isl": result.final_isl,
            "final_psl": result.final_psl,
            "initial_isl": result.initial_isl,
            "stop_reason": result.stop_reason,
        })
        if out is not None:
            SequenceParser().write_sequence(result.sequence, out / "sequences" / f"{config.label}.seq")
            TableParser().write_trace(result.trace, out / "traces" / f"{config.label}.csv")
    table = pd.DataFrame(rows, columns=COMPARISON_COLUMNS)
    if out is not None:
        table.to_csv(out / "comparison.csv", index=False, float_format="%.17g")
    return table


def check_agreement(table: pd.DataFrame, rtol: float, strict: bool = True,
                    labels: Optional[Iterable[str]] = None) -> float:
    """
    Relative spread (max - min) / min of final_isl over the selected rows.

    Raises:
        InternalConsistencyError: If strict and the spread exceeds rtol
    """
    rows = table if labels is None else table[table["label"].isin(list(labels))]
    values = rows["final_isl"].to_numpy(dtype=float)
    lowest = max(float(np.min(values)), np.finfo(float).tiny)
    spread = (float(np.max(values)) - float(np.min(values))) / lowest
    if spread > rtol:
        message = f"final ISL values disagree by {spread:.3%} (> {rtol:.0%})"
        if strict:
            raise InternalConsistencyError(message)
        warnings.warn(message, NumericalWarning, stacklevel=2)
    return spread


def compare_strategies(length: int,
                       init: str,
                       seed: int = 0,
                       tolerance: float = SOLVER_DEFAULTS["tolerance"],
                       max_iterations: int = SOLVER_DEFAULTS["max_iterations"],
                       output_dir: Optional[Union[str, Path]] = None,
                       rtol: float = 0.01,
                       strict: bool = True) -> pd.DataFrame:
    """
    Run FISL with all four bound strategies from the same initialization.

    Returns:
        DataFrame with rows FISL-TR, FISL-EI, FISL-BEI, FISL-BEFFT

    Raises:
        InternalConsistencyError: If strict and final ISL values differ by more than rtol
    """
    z0 = make_initial_sequence(init, length, seed)
    logger.info(f"Comparing bound strategies: P={length}, init={init}, seed={seed}")
    table = run_comparison(z0, STRATEGY_SET, tolerance, max_iterations, seed, output_dir)
    check_agreement(table, rtol, strict)
    return table


def compare_algorithms(length: int,
                       init: str,
                       seed: int = 0,
                       tolerance: float = SOLVER_DEFAULTS["tolerance"],
                       max_iterations: int = SOLVER_DEFAULTS["max_iterations"],
                       output_dir: Optional[Union[str, Path]] = None) -> pd.DataFrame:
    """
    Run FISL-BEFFT, CAN, MISL, ACC-MISL, ISL-NEW and ACC-ISL-NEW from the same initialization.

    Returns:
        DataFrame with one row per algorithm, including final_psl
    """
    z0 = make_initial_sequence(init, length, seed)
    logger.info(f"Comparing algorithms: P={length}, init={init}, seed={seed}")
    return run_comparison(z0, ALGORITHM_SET, tolerance, max_iterations, seed, output_dir)


def speedup_table(comparison: pd.DataFrame, reference: str = "FISL-BEFFT") -> pd.DataFrame:
    """
    Wall-clock and iteration ratios of each row over the reference row.

    A ratio of 38 means the row took 38 times as long as the reference.

    Raises:
        ValidationError: If the reference label is missing
    """
    matches = comparison[comparison["label"] == reference]
    if matches.empty:
        raise ValidationError(f"reference '{reference}' not in comparison labels {list(comparison['label'])}")
    ref = matches.iloc[0]
    out = comparison[["label", "iterations", "wall_seconds"]].copy()
    out["time_ratio"] = out["wall_seconds"] / max(float(ref["wall_seconds"]), np.finfo(float).tiny)
    out["iteration_ratio"] = out["iterations"] / max(int(ref["iterations"]), 1)
    return out.reset_index(drop=True)
