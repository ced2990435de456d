"""
Algorithm dispatch by name.

Author: seqforge developers
License: MIT
"""

from typing import Dict, Optional, Type, Union

import numpy as np

from ..core.sequence import Sequence
from .base_solver import Callback, IterativeSolver, SolverConfig, SolverResult
from .baselines import CANSolver, ISLNewSolver, MISLSolver
from .fisl import FISLSolver

SOLVERS: Dict[str, Type[IterativeSolver]] = {
    "FISL": FISLSolver,
    "CAN": CANSolver,
    "MISL": MISLSolver,
    "ISL_NEW": ISLNewSolver,
}


def make_solver(config: SolverConfig) -> IterativeSolver:
    return SOLVERS[config.algorithm](config)


def solve(z0: Union[Sequence, np.ndarray],
          config: Optional[SolverConfig] = None,
          callback: Optional[Callback] = None) -> SolverResult:
    """
    Run the algorithm named in ``config.algorithm`` from z0.

    Example:
        >>> result = solve(golomb_sequence(100), SolverConfig(algorithm="MISL", accelerate=True))
        >>> result.stop_reason
        'converged'
    """
    config = config or SolverConfig()
    return make_solver(config).solve(z0, callback=callback)
