"""
SQUAREM extrapolation for unimodular fixed-point maps.

Author: seqforge developers
License: MIT
"""

import logging
from typing import Callable, Union

import numpy as np

from ..core.constants import SOLVER_DEFAULTS
from ..core.sequence import Sequence
from .base_solver import objective, project_phase

logger = logging.getLogger(__name__)

SequenceOrArray = Union[Sequence, np.ndarray]


def _as_array(z: SequenceOrArray) -> np.ndarray:
    return z.samples if isinstance(z, Sequence) else np.asarray(z, dtype=np.complex128)


def squarem_cycle(base_step: Callable[[np.ndarray], np.ndarray],
                  x0: np.ndarray,
                  x1: np.ndarray,
                  x2: np.ndarray,
                  alpha_max: float = SOLVER_DEFAULTS["squarem_alpha_max"],
                  max_backtracks: int = SOLVER_DEFAULTS["squarem_backtracks"]) -> np.ndarray:
    """
    Extrapolation step of SQUAREM given x1 = F(x0) and x2 = F(x1).

    q = x1 - x0, v = x2 - x1 - q and alpha = min(-||q|| / ||v||, alpha_max).
    The point x0 - 2 alpha q + alpha^2 v is projected to unit modulus and
    mapped once more through F. A candidate with a larger two-sided
    objective than x2 is rejected and alpha moves halfway toward
    alpha_max, at most ``max_backtracks`` times; the last try uses
    alpha_max itself, where the candidate is F(x2). If every try is
    rejected x2 is returned.

    Returns:
        Next iterate, never worse than x2 in the two-sided objective
    """
    q = x1 - x0
    v = x2 - x1 - q
    norm_v = float(np.linalg.norm(v))
    if norm_v == 0.0:
        return x2

    alpha = min(-float(np.linalg.norm(q)) / norm_v, alpha_max)
    reference = objective(x2)
    for attempt in range(max_backtracks + 1):
        if attempt == max_backtracks:
            alpha = alpha_max
        candidate, _ = project_phase(x0 - 2.0 * alpha * q + alpha * alpha * v, x2)
        candidate = _as_array(base_step(candidate))
        if objective(candidate) <= reference:
            return candidate
        logger.debug(f"SQUAREM: alpha={alpha:.3f} rejected")
        if alpha == alpha_max:
            break
        alpha = 0.5 * (alpha + alpha_max)
    return x2


def squarem_wrap(base_step: Callable[[SequenceOrArray], SequenceOrArray],
                 z: SequenceOrArray,
                 alpha_max: float = SOLVER_DEFAULTS["squarem_alpha_max"]) -> SequenceOrArray:
    """
    One SQUAREM cycle around ``base_step``.

    z1 = F(z), z2 = F(z1), then ``squarem_cycle``. The result is never
    worse than z2 in the two-sided objective.

    Args:
        base_step: Map taking and returning a unimodular vector
        z: Current iterate
        alpha_max: Upper clamp on the (negative) steplength

    Returns:
        Next iterate, a Sequence if z is a Sequence else an array
    """
    wrap = Sequence if isinstance(z, Sequence) else np.asarray

    def step(x: np.ndarray) -> np.ndarray:
        return _as_array(base_step(x))

    x0 = _as_array(z)
    x1 = step(x0)
    x2 = step(x1)
    return wrap(squarem_cycle(step, x0, x1, x2, alpha_max))
