"""
Core functionality for seqforge.

Value types, deterministic initializers, the length-2P transform contract,
defaults and validation shared by every other module.

Author: seqforge developers
License: MIT
"""

from .constants import *
from .validators import *
from .sequence import *
from .transforms import *

__all__ = [
    # constants
    "NUMERICAL_TOLERANCES", "SOLVER_DEFAULTS", "HARNESS_DEFAULTS", "FILE_FORMATS",
    "FULL_LENGTHS", "DESK_LENGTHS", "ALGORITHMS", "BOUND_STRATEGIES", "STOP_REASONS",
    # validation
    "ValidationError", "InvalidLengthError", "UnsupportedLengthError",
    "UndefinedMetricError", "PlanValidationError", "InternalConsistencyError",
    "ValidationWarning", "NumericalWarning",
    "validate_input", "validate_length", "validate_seed", "validate_unimodular",
    "validate_algorithm", "validate_strategy", "check_unimodular", "is_perfect_square",
    # sequences
    "Sequence", "PhaseVector", "random_sequence", "golomb_sequence", "frank_sequence",
    "make_initial_sequence", "INITIALIZERS", "max_modulus_error",
    # transforms
    "Spectrum", "forward_transform_2p", "inverse_transform_2p", "forward", "inverse",
    "zero_pad", "count_transforms", "TransformCounter",
]
