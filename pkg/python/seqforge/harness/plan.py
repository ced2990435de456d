"""
Experiment plans.

An ExperimentPlan lists sequence lengths, initializations, algorithm
variants and Monte-Carlo trials. Random initializations run ``trials``
times with seed ``base_seed + t``; Golomb and Frank are seed independent
and run once. Plans load from JSON or YAML.

Author: seqforge developers
License: MIT
"""

import logging
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple, Union

import yaml

from ..core.constants import HARNESS_DEFAULTS, SOLVER_DEFAULTS, FULL_LENGTHS, DESK_LENGTHS
from ..core.sequence import INITIALIZERS
from ..core.validators import (
    PlanValidationError, ValidationError, ValidationWarning,
    is_perfect_square, validate_algorithm, validate_input, validate_strategy,
)
from ..solvers.base_solver import SolverConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlgorithmSpec:
    """
    One algorithm variant of a plan.

    Attributes:
        algorithm: FISL, CAN, MISL or ISL_NEW
        strategy: Bound strategy (FISL only)
        accelerate: SQUAREM acceleration (MISL and ISL_NEW only)
    """
    algorithm: str
    strategy: Optional[str] = None
    accelerate: bool = False

    def __post_init__(self):
        algorithm = validate_algorithm(self.algorithm)
        object.__setattr__(self, "algorithm", algorithm)
        if algorithm == "FISL":
            object.__setattr__(self, "strategy", validate_strategy(self.strategy or "BEFFT"))
        else:
            object.__setattr__(self, "strategy", None)
        object.__setattr__(self, "accelerate", bool(self.accelerate) and algorithm in ("MISL", "ISL_NEW"))

    @classmethod
    def parse(cls, value: Union[str, Mapping[str, Any], "AlgorithmSpec"]) -> "AlgorithmSpec":
        """
        Build from a label ('FISL-BEFFT', 'ACC-MISL', 'CAN') or a mapping.

        Raises:
            PlanValidationError: On an unrecognized entry
        """
        if isinstance(value, AlgorithmSpec):
            return value
        try:
            if isinstance(value, Mapping):
                return cls(
                    value["algorithm"],
                    value.get("strategy"),
                    bool(value.get("accelerate", False)),
                )
            label = str(value).strip().upper()
            accelerate = label.startswith("ACC-")
            if accelerate:
                label = label[4:]
            if label.startswith("FISL"):
                _, _, strategy = label.partition("-")
                return cls("FISL", strategy or None)
            return cls(label, None, accelerate)
        except (KeyError, ValidationError) as e:
            raise PlanValidationError(f"invalid algorithm entry {value!r}: {e}") from None

    @property
    def label(self) -> str:
        return self.to_config().label

    @property
    def strategy_field(self) -> str:
        """Value of the summary 'strategy' column: the bound, 'ACC' or ''."""
        if self.algorithm == "FISL":
            return self.strategy
        return "ACC" if self.accelerate else ""

    def to_config(self, tolerance: float = SOLVER_DEFAULTS["tolerance"],
                  max_iterations: int = SOLVER_DEFAULTS["max_iterations"],
                  seed: int = SOLVER_DEFAULTS["seed"]) -> SolverConfig:
        return SolverConfig(
            algorithm=self.algorithm,
            bound_strategy=self.strategy or "BEFFT",
            accelerate=self.accelerate,
            tolerance=tolerance,
            max_iterations=max_iterations,
            seed=seed,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"algorithm": self.algorithm, "strategy": self.strategy, "accelerate": self.accelerate}


STRATEGY_SET: Tuple[AlgorithmSpec, ...] = tuple(
    AlgorithmSpec("FISL", s) for s in ("TR", "EI", "BEI", "BEFFT")
)
ALGORITHM_SET: Tuple[AlgorithmSpec, ...] = (
    AlgorithmSpec("FISL", "BEFFT"),
    AlgorithmSpec("CAN"),
    AlgorithmSpec("MISL"),
    AlgorithmSpec("MISL", accelerate=True),
    AlgorithmSpec("ISL_NEW"),
    AlgorithmSpec("ISL_NEW", accelerate=True),
)


@dataclass(frozen=True)
class Cell:
    """One (length, init, trial) cell sharing a single initialization."""
    length: int
    init: str
    trial: int
    seed: int

    @property
    def key(self) -> str:
        return f"{self.length}_{self.init}_{self.trial}"


@dataclass
class ExperimentPlan:
    """
    Experiment grid.

    Attributes:
        lengths: Sequence lengths
        initializations: Subset of random, golomb, frank
        algorithms: Algorithm variants run on every cell
        trials: Monte-Carlo trials for random initialization
        tolerance: Stopping tolerance
        max_iterations: Iteration cap per run
        base_seed: Trial t of a random initialization uses base_seed + t
        workers: Parallel runs
    """
    lengths: Tuple[int, ...] = FULL_LENGTHS
    initializations: Tuple[str, ...] = HARNESS_DEFAULTS["initializations"]
    algorithms: Tuple[AlgorithmSpec, ...] = ALGORITHM_SET
    trials: int = HARNESS_DEFAULTS["random_trials"]
    tolerance: float = SOLVER_DEFAULTS["tolerance"]
    max_iterations: int = SOLVER_DEFAULTS["max_iterations"]
    base_seed: int = HARNESS_DEFAULTS["base_seed"]
    workers: int = HARNESS_DEFAULTS["workers"]

    def __post_init__(self):
        self.lengths = tuple(self.lengths)
        self.initializations = tuple(str(i).lower() for i in self.initializations)
        self.algorithms = tuple(AlgorithmSpec.parse(a) for a in self.algorithms)
        self.validate()

    def validate(self) -> None:
        """
        Check the plan for consistency.

        Raises:
            PlanValidationError: On any invalid field or a Frank
                initialization with a non-square length
        """
        try:
            if not self.lengths:
                raise PlanValidationError("plan needs at least one length")
            self.lengths = tuple(validate_input(P, "length", positive=True, integer=True)
                                 for P in self.lengths)
            self.trials = validate_input(self.trials, "trials", positive=True, integer=True)
            self.tolerance = validate_input(self.tolerance, "tolerance", positive=True)
            self.max_iterations = validate_input(self.max_iterations, "max_iterations",
                                                 positive=True, integer=True)
            self.base_seed = validate_input(self.base_seed, "base_seed", min_val=0, integer=True)
            self.workers = validate_input(self.workers, "workers", positive=True, integer=True)
        except ValidationError as e:
            raise PlanValidationError(str(e)) from None

        if not self.initializations:
            raise PlanValidationError("plan needs at least one initialization")
        unknown = [i for i in self.initializations if i not in INITIALIZERS]
        if unknown:
            raise PlanValidationError(f"unknown initializations {unknown}, expected {list(INITIALIZERS)}")
        if not self.algorithms:
            raise PlanValidationError("plan needs at least one algorithm")
        if "frank" in self.initializations:
            bad = [P for P in self.lengths if not is_perfect_square(P)]
            if bad:
                raise PlanValidationError(
                    f"frank initialization requires perfect-square lengths, got {bad}"
                )
        if self.trials > 1 and "random" not in self.initializations:
            warnings.warn(
                f"trials={self.trials} has no effect without a random initialization",
                ValidationWarning,
            )

    def trials_for(self, init: str) -> int:
        if init == "random":
            return self.trials
        return HARNESS_DEFAULTS["deterministic_trials"]

    def cells(self) -> Iterator[Cell]:
        """Yield every (length, init, trial) cell in plan order."""
        for length in self.lengths:
            for init in self.initializations:
                for trial in range(self.trials_for(init)):
                    yield Cell(length, init, trial, self.base_seed + trial)

    @property
    def num_runs(self) -> int:
        return sum(1 for _ in self.cells()) * len(self.algorithms)

    @classmethod
    def desk(cls, **overrides) -> "ExperimentPlan":
        """Desk-scale grid: P in {100, 225}, 5 random trials."""
        params = {"lengths": DESK_LENGTHS, "trials": HARNESS_DEFAULTS["desk_trials"]}
        params.update(overrides)
        return cls(**params)

    @classmethod
    def full_grid(cls, **overrides) -> "ExperimentPlan":
        """Full grid: P in {100, ..., 1225}, 30 random trials."""
        params = {"lengths": FULL_LENGTHS, "trials": HARNESS_DEFAULTS["random_trials"]}
        params.update(overrides)
        return cls(**params)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ExperimentPlan":
        """
        Build a plan from a mapping whose keys mirror the plan fields.

        Raises:
            PlanValidationError: On unknown keys or invalid values
        """
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise PlanValidationError(f"unknown plan keys: {sorted(unknown)}")
        params = dict(data)
        # YAML 1.1 reads "1e-5" (no decimal point) as a string
        if isinstance(params.get("tolerance"), str):
            try:
                params["tolerance"] = float(params["tolerance"])
            except ValueError:
                raise PlanValidationError(f"tolerance must be numeric, got {params['tolerance']!r}") from None
        return cls(**params)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lengths": list(self.lengths),
            "initializations": list(self.initializations),
            "algorithms": [a.to_dict() for a in self.algorithms],
            "trials": self.trials,
            "tolerance": self.tolerance,
            "max_iterations": self.max_iterations,
            "base_seed": self.base_seed,
            "workers": self.workers,
        }


def load_plan(path: Union[str, Path]) -> ExperimentPlan:
    """
    Load a plan from a JSON or YAML file.

    Raises:
        FileNotFoundError: Missing file
        PlanValidationError: Malformed content
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Plan file not found: {path}")
    with open(path, 'r') as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise PlanValidationError(f"Cannot parse plan file {path}: {e}") from None
    if not isinstance(data, Mapping):
        raise PlanValidationError(f"Plan file {path} must hold a mapping of plan fields")
    logger.info(f"Loaded plan from {path}")
    return ExperimentPlan.from_dict(data)
