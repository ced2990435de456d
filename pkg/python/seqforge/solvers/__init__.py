"""
Sequence design algorithms for seqforge.

FISL with four bound strategies, the CAN / MISL / ISL-NEW baselines,
SQUAREM acceleration and the shared stopping rule.

Author: seqforge developers
License: MIT
"""

from .base_solver import (
    SolverConfig,
    IterationRecord,
    IterationTrace,
    SolverResult,
    IterativeSolver,
    IterateState,
    StepOutcome,
    reference_curvature,
    stop_check,
    project_phase,
    objective,
)
from .fisl import FISLSolver, fisl_step, fisl_update, solve_fisl
from .baselines import CANSolver, MISLSolver, ISLNewSolver, solve_can, solve_misl, solve_islnew
from .acceleration import squarem_cycle, squarem_wrap
from .dispatch import SOLVERS, make_solver, solve

__all__ = [
    "SolverConfig", "IterationRecord", "IterationTrace", "SolverResult",
    "IterativeSolver", "IterateState", "StepOutcome", "reference_curvature",
    "stop_check", "project_phase", "objective",
    "FISLSolver", "fisl_step", "fisl_update", "solve_fisl",
    "CANSolver", "MISLSolver", "ISLNewSolver", "solve_can", "solve_misl", "solve_islnew",
    "squarem_cycle", "squarem_wrap", "SOLVERS", "make_solver", "solve",
]
