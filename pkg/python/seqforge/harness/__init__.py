"""
Experiment harness for seqforge.

Plans, the paired-initialization runner, strategy/algorithm comparisons
and summary export.

Author: seqforge developers
License: MIT
"""

from .plan import AlgorithmSpec, Cell, ExperimentPlan, load_plan, ALGORITHM_SET, STRATEGY_SET
from .export import export_summary, summary_table, timing_by_length, load_summary
from .runner import (
    ExperimentRunner, ExperimentReport, RunRecord, FeasibilityMonitor,
    execute_run, file_sha256, run_plan,
)
from .compare import (
    compare_strategies, compare_algorithms, run_comparison, check_agreement, speedup_table,
)

__all__ = [
    "AlgorithmSpec", "Cell", "ExperimentPlan", "load_plan", "ALGORITHM_SET", "STRATEGY_SET",
    "export_summary", "summary_table", "timing_by_length", "load_summary",
    "ExperimentRunner", "ExperimentReport", "RunRecord", "FeasibilityMonitor",
    "execute_run", "file_sha256", "run_plan",
    "compare_strategies", "compare_algorithms", "run_comparison", "check_agreement",
    "speedup_table",
]
