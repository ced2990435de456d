"""
FISL: majorization-minimization of the two-sided autocorrelation energy.

Each iteration forms a_tilde = 0.25 * m * z - R(z) z with a scalar
majorizer m from the chosen bound strategy and projects a_tilde onto the
unit circle elementwise. With the autocorrelation of the current iterate
already known, one iteration costs three forward and two inverse
2P-point transforms (BEFFT, BEI, TR): one forward for the Toeplitz
spectrum, one forward/inverse pair for R(z) z and one pair to evaluate
the new iterate.

Author: seqforge developers
License: MIT
"""

import logging
import warnings
from typing import Optional, Tuple, Union

import numpy as np

from ..core.sequence import Sequence
from ..core.validators import NumericalWarning, ValidationError
from ..majorizer.bounds import BoundStrategy, as_strategy, compute_bound
from ..majorizer.toeplitz import build_operator
from ..metrics.correlation import CorrelationProfile, autocorrelation_fft
from .base_solver import (
    Callback, IterateState, IterativeSolver, SolverConfig, SolverResult, project_phase,
)

logger = logging.getLogger(__name__)


def fisl_update(z: np.ndarray,
                r: Union[CorrelationProfile, np.ndarray],
                strategy: Union[str, BoundStrategy],
                power_tol: Optional[float] = None) -> Tuple[np.ndarray, float, int]:
    """
    FISL update given the autocorrelation r of z.

    Returns:
        Tuple of (next iterate, m_scalar, zero-magnitude element count)
    """
    op = build_operator(r)
    strategy = as_strategy(strategy)
    kwargs = {"tol": power_tol} if strategy is BoundStrategy.EI and power_tol is not None else {}
    m = compute_bound(op, strategy, **kwargs).m_scalar
    a_tilde = 0.25 * m * z - op.apply(z)
    z_next, zeros = project_phase(a_tilde, z)
    return z_next, m, zeros


def fisl_step(z: Union[Sequence, np.ndarray],
              strategy: Union[str, BoundStrategy] = BoundStrategy.BEFFT) -> Tuple[Sequence, float]:
    """
    One FISL iteration from z.

    Args:
        z: Current unimodular sequence
        strategy: Bound strategy ('TR', 'EI', 'BEI', 'BEFFT')

    Returns:
        Tuple of (next sequence, majorizer constant m)

    Example:
        >>> z_next, m = fisl_step(Sequence([1, 1]), "BEFFT")
        >>> m
        24.0
    """
    z = z if isinstance(z, Sequence) else Sequence(z)
    r = autocorrelation_fft(z)
    z_next, m, zeros = fisl_update(z.samples, r, strategy)
    if zeros:
        warnings.warn(
            f"fisl_step: {zeros} zero-magnitude elements kept their previous phase",
            NumericalWarning,
            stacklevel=2,
        )
    return Sequence(z_next), m


class FISLSolver(IterativeSolver):
    """FISL iteration with a configurable bound strategy."""

    def __init__(self, config: SolverConfig):
        if config.algorithm != "FISL":
            raise ValidationError(f"FISLSolver needs algorithm FISL, got {config.algorithm}")
        super().__init__(config)
        self.strategy = as_strategy(config.bound_strategy)

    def update(self, state: IterateState) -> Tuple[np.ndarray, Optional[float]]:
        z_next, m, zeros = fisl_update(state.z, state.correlation, self.strategy,
                                       power_tol=self.config.power_tol)
        self.zero_projections += zeros
        return z_next, m

    def curvature(self, state: IterateState, bound_m: Optional[float]) -> Optional[float]:
        return bound_m


def solve_fisl(z0: Union[Sequence, np.ndarray],
               config: Optional[SolverConfig] = None,
               callback: Optional[Callback] = None) -> SolverResult:
    """
    Run FISL from z0 until the relative ISL change falls below the tolerance.

    With ``config.scaled_stop`` (the default) the tolerance is scaled by
    m_BEFFT / m each iteration, so a loose bound such as TR runs until the
    same stationarity level as BEFFT instead of stopping on its smaller steps.

    Args:
        z0: Initial unimodular sequence
        config: Solver settings (FISL with BEFFT by default)
        callback: Optional callback(iteration, sequence)

    Returns:
        SolverResult
    """
    config = config or SolverConfig(algorithm="FISL")
    return FISLSolver(config).solve(z0, callback=callback)
