"""
Majorizer constants M = m * I dominating the Hessian 8 R(z).

Four strategies:

- TR:    trace bound 8 P^2, independent of z.
- EI:    8 * lambda_max(R) estimated by power iteration.
- BEI:   mean plus spread bound built from Tr(R) and Tr(R^2) in O(P).
- BEFFT: 4 * (max even-bin + max odd-bin) of the cached circulant spectrum.

Author: seqforge developers
License: MIT
"""

import logging
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np
import pandas as pd
import scipy.linalg

from ..core.constants import NUMERICAL_TOLERANCES, SOLVER_DEFAULTS, HARNESS_DEFAULTS, FILE_FORMATS
from ..core.sequence import Sequence
from ..core.validators import (
    InternalConsistencyError, NumericalWarning, ValidationError,
    validate_input, validate_length, validate_strategy,
)
from ..metrics.correlation import autocorrelation_fft
from .toeplitz import ToeplitzOperator, build_operator, dense_matrix

logger = logging.getLogger(__name__)


class BoundStrategy(str, Enum):
    """Majorizer bound strategies."""
    TR = "TR"
    EI = "EI"
    BEI = "BEI"
    BEFFT = "BEFFT"


@dataclass(frozen=True)
class BoundValue:
    """
    Scalar majorizer constant with its strategy tag.

    Attributes:
        m_scalar: Constant m such that m * I dominates 8 R(z)
        strategy: Strategy that produced the value
        converged: False only for an EI power iteration that hit max_iters
        iterations: Power-iteration count (EI only)
    """
    m_scalar: float
    strategy: BoundStrategy
    converged: bool = True
    iterations: Optional[int] = None

    def __float__(self) -> float:
        return self.m_scalar


def as_strategy(strategy: Union[str, BoundStrategy]) -> BoundStrategy:
    """Normalize a strategy name ('befft', 'BEFFT' or BoundStrategy.BEFFT)."""
    if isinstance(strategy, BoundStrategy):
        return strategy
    return BoundStrategy(validate_strategy(strategy))


def bound_tr(P: int) -> BoundValue:
    """Trace bound Tr(8 R) = 8 P^2 for a unimodular sequence of length P."""
    P = validate_length(P)
    return BoundValue(8.0 * P * P, BoundStrategy.TR)


def bound_ei(op: ToeplitzOperator,
             tol: float = SOLVER_DEFAULTS["power_tol"],
             max_iters: Optional[int] = None,
             seed: int = SOLVER_DEFAULTS["power_seed"]) -> BoundValue:
    """
    Power-iteration estimate of 8 * lambda_max(R).

    The start vector is the normalized all-ones vector plus a seeded
    complex perturbation. Iteration stops once the Rayleigh quotient lam
    changes by at most ``tol`` relative and the residual ||R x - lam x||
    is at most ``tol * lam``. For Hermitian R that residual puts an
    eigenvalue within ``tol * lam`` of lam, so the inflated estimate
    lam * (1 + 10 * tol) lies above it. The value is capped by max(s) and
    Tr(R), both upper bounds on lambda_max(R).

    Without convergence the estimate is not trusted and the value falls
    back to 8 * min(max(s), Tr(R)).

    Args:
        op: Toeplitz operator
        tol: Relative convergence tolerance
        max_iters: Iteration cap (10 * P if None)
        seed: Seed of the start-vector perturbation

    Returns:
        BoundValue with strategy EI; ``converged`` is False if max_iters was hit
    """
    tol = validate_input(tol, "tol", positive=True)
    P = op.length
    if max_iters is None:
        max_iters = SOLVER_DEFAULTS["power_max_iters_factor"] * P
    max_iters = validate_input(max_iters, "max_iters", positive=True, integer=True)

    r0 = op.profile.zero_lag
    if P == 1:
        return BoundValue(8.0 * r0, BoundStrategy.EI, True, 0)

    rng = np.random.default_rng(seed)
    scale = SOLVER_DEFAULTS["power_perturbation"]
    x = np.ones(P, dtype=np.complex128) / np.sqrt(P)
    x = x + scale * (rng.standard_normal(P) + 1j * rng.standard_normal(P)) / np.sqrt(P)
    x /= np.linalg.norm(x)

    lam_prev = None
    lam = 0.0
    residual = 0.0
    converged = False
    iterations = 0
    for iterations in range(1, max_iters + 1):
        y = op.apply(x)
        lam = float(np.vdot(x, y).real)
        residual = float(np.linalg.norm(y - lam * x))
        norm_y = float(np.linalg.norm(y))
        if norm_y == 0.0:
            converged = True
            break
        if lam_prev is not None:
            delta = abs(lam - lam_prev) / max(abs(lam), np.finfo(float).tiny)
            if delta <= tol and residual <= tol * abs(lam):
                converged = True
                break
        lam_prev = lam
        x = y / norm_y

    if not converged:
        warnings.warn(
            f"EI power iteration did not converge in {max_iters} iterations "
            f"(lambda={lam:.6e}, residual={residual:.3e})",
            NumericalWarning,
            stacklevel=2,
        )

    ceiling = min(float(np.max(op.spectrum)), op.trace)
    if converged:
        estimate = min(lam * (1.0 + SOLVER_DEFAULTS["power_inflation"] * tol), ceiling)
    else:
        estimate = ceiling
    logger.debug(f"EI: lambda={lam:.12e} residual={residual:.3e} iterations={iterations}")
    return BoundValue(8.0 * estimate, BoundStrategy.EI, converged, iterations)


def trace_of_square(op: ToeplitzOperator) -> float:
    """Tr(R^2) = P |r(0)|^2 + 2 sum_{l>=1} (P - l) |r(l)|^2 in O(P)."""
    values = op.profile.values
    P = values.size
    weights = P - np.arange(1, P)
    return float(P * np.abs(values[0]) ** 2 + 2.0 * np.sum(weights * np.abs(values[1:]) ** 2))


def bound_bei(op: ToeplitzOperator) -> BoundValue:
    """
    Mean plus spread eigenvalue bound m + s * sqrt(P - 1) on 8 R.

    m = 8 r(0) and s^2 = (64 / P) Tr(R^2) - m^2. A negative s^2 from
    rounding is clamped to zero with a NumericalWarning. For P = 1 the
    value is 8 r(0).
    """
    P = op.length
    m = 8.0 * op.profile.zero_lag
    if P == 1:
        return BoundValue(m, BoundStrategy.BEI)

    s2 = 64.0 * trace_of_square(op) / P - m * m
    if s2 < 0.0:
        warnings.warn(
            f"BEI variance term negative ({s2:.3e}) from rounding, clamped to 0",
            NumericalWarning,
            stacklevel=2,
        )
        s2 = 0.0
    return BoundValue(m + np.sqrt(s2) * np.sqrt(P - 1), BoundStrategy.BEI)


def bound_befft(op: ToeplitzOperator) -> BoundValue:
    """
    Spectral bound 4 * (max_k even Re s_k + max_k odd Re s_k).

    Raises:
        InternalConsistencyError: If the cached spectrum is not real to 1e-9 * P
    """
    if not op.is_spectrum_real():
        raise InternalConsistencyError(
            f"Toeplitz spectrum has imaginary part {op.max_imaginary:.3e} > "
            f"{NUMERICAL_TOLERANCES['spectrum_imag_per_length']:.0e} * P; "
            "transform convention mismatch"
        )
    s = op.spectrum
    return BoundValue(4.0 * (float(np.max(s[0::2])) + float(np.max(s[1::2]))), BoundStrategy.BEFFT)


def compute_bound(op: ToeplitzOperator,
                  strategy: Union[str, BoundStrategy],
                  **kwargs) -> BoundValue:
    """
    Compute the majorizer constant with the named strategy.

    Extra keyword arguments are passed to ``bound_ei``.
    """
    key = as_strategy(strategy)
    if key is BoundStrategy.TR:
        return bound_tr(op.length)
    if key is BoundStrategy.EI:
        return bound_ei(op, **kwargs)
    if key is BoundStrategy.BEI:
        return bound_bei(op)
    return bound_befft(op)


def bound_diagnostics(z: Union[Sequence, np.ndarray]) -> pd.DataFrame:
    """
    Compare the four strategies against the exact 8 * lambda_max(R).

    Dense eigenvalues come from ``scipy.linalg.eigvalsh``, so the length is
    limited to small P.

    Returns:
        DataFrame with columns strategy, m_scalar, lambda_max_8R, ratio

    Raises:
        ValidationError: If P exceeds the dense-oracle limit
    """
    z = z if isinstance(z, Sequence) else Sequence(z)
    limit = HARNESS_DEFAULTS["dense_oracle_max_length"]
    if z.length > limit:
        raise ValidationError(f"bound diagnostics need a dense eigensolve, P={z.length} > {limit}")

    op = build_operator(autocorrelation_fft(z))
    lambda_max = 8.0 * float(scipy.linalg.eigvalsh(dense_matrix(op.profile))[-1])
    rows = []
    for strategy in BoundStrategy:
        value = compute_bound(op, strategy).m_scalar
        rows.append({
            "strategy": strategy.value,
            "m_scalar": value,
            "lambda_max_8R": lambda_max,
            "ratio": value / lambda_max if lambda_max > 0 else np.inf,
        })
    return pd.DataFrame(rows, columns=list(FILE_FORMATS["bounds_columns"]))
