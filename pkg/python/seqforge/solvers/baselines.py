"""
Baseline algorithms: CAN, MISL and ISL-NEW.

All three work on the 2P-point spectrum f of the zero-padded iterate.

- CAN alternates y = phase(f) and z = phase(IFFT(y)[:P]); ISL is not
  guaranteed to decrease.
- MISL takes z = phase(-IFFT((|f|^2 - max|f|^2 - P^2) * f)[:P]).
- ISL-NEW uses the same update with 0.5 * max|f|^2 and 0.5 * P^2.

MISL and ISL-NEW accept SQUAREM acceleration through ``accelerate``. An
accelerated iteration is one SQUAREM cycle; it stops on the progress of
the plain step from the current iterate, so a rejected extrapolation does
not read as convergence.

Author: seqforge developers
License: MIT
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np

from ..core.sequence import Sequence
from ..core.transforms import inverse
from ..core.validators import ValidationError
from .acceleration import squarem_cycle
from .base_solver import (
    Callback, IterateState, IterativeSolver, SolverConfig, SolverResult, StepOutcome,
)

logger = logging.getLogger(__name__)


class CANSolver(IterativeSolver):
    """Cyclic alternating projection between the spectrum phase and the sequence phase."""

    def update(self, state: IterateState) -> Tuple[np.ndarray, Optional[float]]:
        f = state.spectrum
        magnitude = np.abs(f)
        # empty bins get phase 0
        y = np.where(magnitude > 0, f / np.where(magnitude > 0, magnitude, 1.0), 1.0)
        b = inverse(y)[:state.length]
        return self.project(b, state.z), None


class MajorizedSpectralSolver(IterativeSolver):
    """
    MISL-family update with spectral weights (|f|^2 - c_max * max|f|^2 - c_len * P^2).

    Attributes:
        peak_weight: Coefficient on max|f|^2
        length_weight: Coefficient on P^2
    """

    peak_weight = 1.0
    length_weight = 1.0

    def update(self, state: IterateState) -> Tuple[np.ndarray, Optional[float]]:
        P = state.length
        if P == 1:
            # no sidelobes; the ISL-NEW weight vanishes identically here
            return state.z, None
        f = state.spectrum
        power = np.abs(f) ** 2
        weights = power - self.peak_weight * np.max(power) - self.length_weight * P * P
        d = -inverse(weights * f)[:P]
        return self.project(d, state.z), None

    def curvature(self, state: IterateState, bound_m: Optional[float]) -> Optional[float]:
        """
        4 * (c_max * max|f|^2 + c_len * P^2).

        IFFT(|f|^2 f)[:P] is R(z) z, so the update is the phase of
        (c_max max|f|^2 + c_len P^2) z - R(z) z, the FISL form with
        m = 4 * (c_max max|f|^2 + c_len P^2).
        """
        P = state.length
        peak = float(np.max(np.abs(state.spectrum) ** 2))
        return 4.0 * (self.peak_weight * peak + self.length_weight * P * P)

    def step(self, state: IterateState) -> StepOutcome:
        if not self.config.accelerate:
            return super().step(state)
        z1, _ = self.update(state)
        state1 = IterateState(z1)
        z2, _ = self.update(state1)
        z_next = squarem_cycle(self.base_step, state.z, z1, z2)
        # convergence is judged on the plain step from state.z
        return StepOutcome(z_next, None, self.curvature(state, None), progress_isl=state1.isl)


class MISLSolver(MajorizedSpectralSolver):
    peak_weight = 1.0
    length_weight = 1.0


class ISLNewSolver(MajorizedSpectralSolver):
    peak_weight = 0.5
    length_weight = 0.5


def _with_algorithm(config: Optional[SolverConfig], algorithm: str) -> SolverConfig:
    if config is None:
        return SolverConfig(algorithm=algorithm)
    if config.algorithm != algorithm:
        raise ValidationError(f"config.algorithm is {config.algorithm}, expected {algorithm}")
    return config


def solve_can(z0: Union[Sequence, np.ndarray],
              config: Optional[SolverConfig] = None,
              callback: Optional[Callback] = None) -> SolverResult:
    """Run CAN from z0. The trace is recorded but not monotone in general."""
    return CANSolver(_with_algorithm(config, "CAN")).solve(z0, callback=callback)


def solve_misl(z0: Union[Sequence, np.ndarray],
               config: Optional[SolverConfig] = None,
               callback: Optional[Callback] = None) -> SolverResult:
    """Run MISL (SQUAREM-accelerated if ``config.accelerate``) from z0."""
    return MISLSolver(_with_algorithm(config, "MISL")).solve(z0, callback=callback)


def solve_islnew(z0: Union[Sequence, np.ndarray],
                 config: Optional[SolverConfig] = None,
                 callback: Optional[Callback] = None) -> SolverResult:
    """Run ISL-NEW (SQUAREM-accelerated if ``config.accelerate``) from z0."""
    return ISLNewSolver(_with_algorithm(config, "ISL_NEW")).solve(z0, callback=callback)
