"""
Shared solver machinery.

SolverConfig, the iteration trace, the result type, the relative-change
stopping rule, elementwise phase projection and the iteration loop every
algorithm runs through.

Author: seqforge developers
License: MIT
"""

import logging
import time
import warnings
from abc import ABC, abstractmethod
from dataclasses import dataclass, field, asdict, fields
from typing import Any, Callable, Dict, List, Mapping, NamedTuple, Optional, Tuple, Union

import numpy as np
import pandas as pd

from ..core.constants import NUMERICAL_TOLERANCES, SOLVER_DEFAULTS, FILE_FORMATS, STOP_REASONS
from ..core.sequence import Sequence
from ..core.transforms import forward
from ..core.validators import (
    NumericalWarning, ValidationError,
    validate_algorithm, validate_input, validate_seed, validate_strategy,
)
from ..metrics.correlation import autocorrelation_from_spectrum, isl, psl, two_sided_objective

logger = logging.getLogger(__name__)

Callback = Callable[[int, Sequence], None]
StepFunction = Callable[[np.ndarray], np.ndarray]

# Relative slack on the stopping boundary so that exact decimal ties such
# as (100, 99.999, 1e-5) test as inclusive despite binary rounding.
STOP_BOUNDARY_SLACK = 1e-9


@dataclass(frozen=True)
class SolverConfig:
    """
    Solver settings.

    ``bound_strategy`` only affects FISL and ``accelerate`` only affects
    MISL and ISL_NEW; both are kept as given otherwise. With
    ``scaled_stop`` the majorization solvers divide the tolerance by their
    curvature relative to the BEFFT curvature of the current iterate (see
    ``IterativeSolver.effective_tolerance``); with it off every solver
    applies ``stop_check`` to the raw ISL change.

    Example:
        >>> SolverConfig(algorithm="fisl", bound_strategy="befft", tolerance=1e-6)
        SolverConfig(algorithm='FISL', bound_strategy='BEFFT', ...)
    """
    algorithm: str = "FISL"
    bound_strategy: str = "BEFFT"
    accelerate: bool = False
    tolerance: float = SOLVER_DEFAULTS["tolerance"]
    max_iterations: int = SOLVER_DEFAULTS["max_iterations"]
    seed: int = SOLVER_DEFAULTS["seed"]
    log_every: int = SOLVER_DEFAULTS["log_every"]
    power_tol: float = SOLVER_DEFAULTS["power_tol"]
    scaled_stop: bool = SOLVER_DEFAULTS["scaled_stop"]

    def __post_init__(self):
        object.__setattr__(self, "algorithm", validate_algorithm(self.algorithm))
        object.__setattr__(self, "bound_strategy", validate_strategy(self.bound_strategy))
        if not isinstance(self.accelerate, (bool, np.bool_)):
            raise ValidationError(f"accelerate must be a boolean, got {self.accelerate!r}")
        object.__setattr__(self, "accelerate", bool(self.accelerate))
        if not isinstance(self.scaled_stop, (bool, np.bool_)):
            raise ValidationError(f"scaled_stop must be a boolean, got {self.scaled_stop!r}")
        object.__setattr__(self, "scaled_stop", bool(self.scaled_stop))
        object.__setattr__(self, "tolerance", validate_input(self.tolerance, "tolerance", positive=True))
        object.__setattr__(
            self, "max_iterations",
            validate_input(self.max_iterations, "max_iterations", positive=True, integer=True),
        )
        object.__setattr__(self, "seed", validate_seed(self.seed))
        object.__setattr__(self, "log_every", validate_input(self.log_every, "log_every", min_val=0, integer=True))
        object.__setattr__(self, "power_tol", validate_input(self.power_tol, "power_tol", positive=True))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SolverConfig":
        """
        Build a config from a mapping with the field names as keys.

        Raises:
            ValidationError: On unknown keys
        """
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValidationError(f"unknown solver settings: {sorted(unknown)}")
        return cls(**dict(data))

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @property
    def label(self) -> str:
        """Display name, e.g. 'FISL-BEFFT', 'ACC-MISL', 'CAN'."""
        if self.algorithm == "FISL":
            return f"FISL-{self.bound_strategy}"
        name = self.algorithm.replace("_", "-")
        if self.algorithm in ("MISL", "ISL_NEW") and self.accelerate:
            return f"ACC-{name}"
        return name


class StepOutcome(NamedTuple):
    """
    Result of one solver step.

    Attributes:
        z: Next iterate
        bound_m: Majorizer constant for the trace (FISL only)
        curvature: Curvature of the majorizer in units of the FISL m_scalar,
            None for algorithms without one (CAN)
        progress_isl: ISL after a single base step from the current iterate
            when the step is more than one base step (SQUAREM); the stopping
            rule measures progress with it
    """
    z: np.ndarray
    bound_m: Optional[float] = None
    curvature: Optional[float] = None
    progress_isl: Optional[float] = None


class IterationRecord(NamedTuple):
    """One trace row."""
    iteration: int
    isl: float
    elapsed_seconds: float
    bound_m: Optional[float] = None


@dataclass
class IterationTrace:
    """
    Per-iteration record of a solve.

    Iteration 0 is the initial sequence; iteration k >= 1 is the k-th
    accepted iterate.
    """
    records: List[IterationRecord] = field(default_factory=list)
    stop_reason: Optional[str] = None

    def append(self, iteration: int, isl_value: float, elapsed: float,
               bound_m: Optional[float] = None) -> None:
        self.records.append(IterationRecord(iteration, isl_value, elapsed, bound_m))

    @property
    def iterations(self) -> int:
        """Index of the last accepted iterate."""
        return self.records[-1].iteration if self.records else 0

    def isl_values(self) -> np.ndarray:
        return np.array([rec.isl for rec in self.records], dtype=float)

    def elapsed_values(self) -> np.ndarray:
        return np.array([rec.elapsed_seconds for rec in self.records], dtype=float)

    def is_monotone(self, slack: float = NUMERICAL_TOLERANCES["descent_slack"]) -> bool:
        """True if ISL never increases by more than slack * max(1, ISL(k))."""
        values = self.isl_values()
        if values.size < 2:
            return True
        allowed = values[:-1] + slack * np.maximum(1.0, values[:-1])
        return bool(np.all(values[1:] <= allowed))

    def to_dataframe(self) -> pd.DataFrame:
        columns = list(FILE_FORMATS["trace_columns"])
        return pd.DataFrame(
            [(r.iteration, r.isl, r.elapsed_seconds, r.bound_m) for r in self.records],
            columns=columns,
        )

    def __len__(self) -> int:
        return len(self.records)


@dataclass
class SolverResult:
    """
    Final sequence, trace and final metrics of a solve.

    ``final_psl`` is None for P = 1 where PSL is undefined.
    """
    sequence: Sequence
    trace: IterationTrace
    final_isl: float
    final_psl: Optional[float]
    config: Optional[SolverConfig] = None
    zero_projections: int = 0

    @property
    def iterations(self) -> int:
        return self.trace.iterations

    @property
    def stop_reason(self) -> Optional[str]:
        return self.trace.stop_reason

    @property
    def initial_isl(self) -> float:
        return self.trace.records[0].isl

    @property
    def wall_seconds(self) -> float:
        return self.trace.records[-1].elapsed_seconds


def stop_check(prev_isl: float, curr_isl: float, tolerance: float) -> bool:
    """
    Relative-change stopping rule |curr - prev| / max(1, prev) <= tolerance.

    The boundary is inclusive: the comparison allows a relative slack of
    STOP_BOUNDARY_SLACK on the tolerance so decimal ties survive binary
    rounding.

    Example:
        >>> stop_check(100, 99.999, 1e-5)
        True
        >>> stop_check(100, 99.99, 1e-5)
        False
    """
    tolerance = validate_input(tolerance, "tolerance", positive=True)
    ratio = abs(curr_isl - prev_isl) / max(1.0, prev_isl)
    return ratio <= tolerance * (1.0 + STOP_BOUNDARY_SLACK)


def project_phase(a: np.ndarray, previous: np.ndarray) -> Tuple[np.ndarray, int]:
    """
    Elementwise projection a_n / |a_n| onto the unit circle.

    Elements with |a_n| = 0 keep ``previous[n]``.

    Returns:
        Tuple of (projected vector, number of zero-magnitude elements)
    """
    magnitude = np.abs(a)
    zero = magnitude <= NUMERICAL_TOLERANCES["zero_magnitude"]
    safe = np.where(zero, 1.0, magnitude)
    projected = np.where(zero, previous, a / safe)
    return projected, int(np.count_nonzero(zero))


def reference_curvature(spectrum: np.ndarray) -> float:
    """
    BEFFT curvature 4 * (max even |f_k|^2 + max odd |f_k|^2) from the padded spectrum f.

    Equals ``bound_befft`` of the iterate up to rounding and needs no transform.
    """
    power = np.abs(spectrum) ** 2
    return 4.0 * (float(np.max(power[0::2])) + float(np.max(power[1::2])))


class IterateState:
    """Iterate with its padded spectrum, autocorrelation and ISL."""

    __slots__ = ("z", "spectrum", "correlation", "isl")

    def __init__(self, z: np.ndarray):
        self.z = z
        self.spectrum = forward(z, n=2 * z.size)
        self.correlation = autocorrelation_from_spectrum(self.spectrum)
        self.isl = isl(self.correlation)

    @property
    def length(self) -> int:
        return int(self.z.size)


class IterativeSolver(ABC):
    """
    Base class for the fixed-point sequence design algorithms.

    Subclasses implement ``update`` which maps the current state to the
    next iterate. The loop evaluates each new iterate once (one forward and
    one inverse transform), reuses that evaluation for the stopping rule and
    hands it to the next update.

    Attributes:
        config: Solver settings
        zero_projections: Zero-magnitude elements met during projection
    """

    def __init__(self, config: SolverConfig):
        self.config = config
        self.zero_projections = 0

    @property
    def name(self) -> str:
        return self.config.label

    @abstractmethod
    def update(self, state: IterateState) -> Tuple[np.ndarray, Optional[float]]:
        """
        One unaccelerated iteration.

        Returns:
            Tuple of (next iterate, majorizer constant or None)
        """
        pass

    def project(self, a: np.ndarray, previous: np.ndarray) -> np.ndarray:
        projected, zeros = project_phase(a, previous)
        self.zero_projections += zeros
        return projected

    def curvature(self, state: IterateState, bound_m: Optional[float]) -> Optional[float]:
        """Majorizer curvature of the update at ``state``; None if the update has none."""
        return None

    def base_step(self, z: np.ndarray) -> np.ndarray:
        """Plain update from a bare iterate."""
        z_next, _ = self.update(IterateState(z))
        return z_next

    def step(self, state: IterateState) -> StepOutcome:
        z_next, bound_m = self.update(state)
        return StepOutcome(z_next, bound_m, self.curvature(state, bound_m))

    def effective_tolerance(self, state: IterateState, curvature: Optional[float]) -> float:
        """
        Tolerance handed to ``stop_check`` for a step taken from ``state``.

        A majorizer with curvature m moves the iterate by O(1/m), so the
        ISL change per step scales as 1/m at a given distance from
        stationarity. Scaling the tolerance by m_ref / m, with m_ref the
        BEFFT curvature of the same iterate, makes every majorization
        solver stop at the same stationarity level. BEFFT itself keeps the
        plain tolerance.
        """
        tolerance = self.config.tolerance
        if not self.config.scaled_stop or curvature is None or curvature <= 0.0:
            return tolerance
        return tolerance * reference_curvature(state.spectrum) / curvature

    def converged(self, state: IterateState, next_state: IterateState, outcome: StepOutcome) -> bool:
        reached = next_state.isl if outcome.progress_isl is None else outcome.progress_isl
        return stop_check(state.isl, reached, self.effective_tolerance(state, outcome.curvature))

    def solve(self, z0: Union[Sequence, np.ndarray],
              callback: Optional[Callback] = None) -> SolverResult:
        """
        Iterate from z0 until the stopping rule holds or max_iterations.

        Args:
            z0: Initial unimodular sequence
            callback: Called as callback(iteration, sequence) after every
                accepted iterate; the sequence is passed without the
                unit-modulus check

        Returns:
            SolverResult; reaching max_iterations is reported through
            ``stop_reason``, not raised
        """
        z0 = z0 if isinstance(z0, Sequence) else Sequence(z0)
        config = self.config
        P = z0.length
        self.zero_projections = 0
        logger.info(f"{self.name}: P={P}, tolerance={config.tolerance:g}, "
                    f"max_iterations={config.max_iterations}")

        trace = IterationTrace()
        start = time.perf_counter()
        state = IterateState(z0.copy_array())
        trace.append(0, state.isl, time.perf_counter() - start, None)

        stop_reason = STOP_REASONS[1]
        for k in range(1, config.max_iterations + 1):
            outcome = self.step(state)
            next_state = IterateState(outcome.z)
            trace.append(k, next_state.isl, time.perf_counter() - start, outcome.bound_m)

            if callback is not None:
                callback(k, Sequence.unchecked(outcome.z))
            if config.log_every and k % config.log_every == 0:
                logger.debug(f"{self.name}: iteration {k}, ISL={next_state.isl:.10e}")

            done = self.converged(state, next_state, outcome)
            state = next_state
            if done:
                stop_reason = STOP_REASONS[0]
                break
        trace.stop_reason = stop_reason

        if self.zero_projections:
            warnings.warn(
                f"{self.name}: {self.zero_projections} zero-magnitude elements kept their previous phase",
                NumericalWarning,
                stacklevel=2,
            )

        final = Sequence(state.z)
        final_psl = psl(state.correlation) if P >= 2 else None
        logger.info(f"{self.name}: {stop_reason} after {trace.iterations} iterations, "
                    f"ISL={state.isl:.6e}, elapsed={trace.records[-1].elapsed_seconds:.3f}s")
        return SolverResult(
            sequence=final,
            trace=trace,
            final_isl=state.isl,
            final_psl=final_psl,
            config=config,
            zero_projections=self.zero_projections,
        )


def objective(z: np.ndarray) -> float:
    """Two-sided objective 2*ISL + r(0)^2 of a bare iterate."""
    state = IterateState(z)
    return two_sided_objective(state.correlation)
