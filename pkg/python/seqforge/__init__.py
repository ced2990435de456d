"""
seqforge: Unimodular Sequence Design

Phase-only (unit-modulus) sequences of arbitrary length with low
integrated sidelobe level (ISL) of the aperiodic autocorrelation. This
package provides:

- FISL majorization-minimization with TR, EI, BEI and BEFFT bounds
- CAN, MISL and ISL-NEW baselines with SQUAREM acceleration
- FFT-based autocorrelation and Toeplitz operators
- A benchmark harness for paired multi-algorithm experiments

Author: seqforge developers
License: MIT

Example Usage:
    >>> import seqforge
    >>> z0 = seqforge.golomb_sequence(100)
    >>> result = seqforge.solve_fisl(z0, seqforge.SolverConfig(bound_strategy="BEFFT"))
    >>> print(f"ISL {result.initial_isl:.1f} -> {result.final_isl:.1f}")
"""

# Version information
__version__ = "1.0.0"
__author__ = "seqforge developers"
__license__ = "MIT"

# Package metadata
__title__ = "seqforge"
__description__ = "Unimodular sequence design by ISL minimization"

import sys
if sys.version_info < (3, 8):
    raise ImportError(
        f"seqforge requires Python 3.8 or higher. "
        f"Current version: {sys.version_info.major}.{sys.version_info.minor}"
    )

from .core import (
    Sequence, PhaseVector, Spectrum,
    random_sequence, golomb_sequence, frank_sequence,
    forward_transform_2p, inverse_transform_2p, count_transforms,
    ValidationError, InvalidLengthError, UnsupportedLengthError,
    UndefinedMetricError, PlanValidationError, InternalConsistencyError,
    NumericalWarning, ValidationWarning,
)
from .metrics import (
    CorrelationProfile, autocorrelation_direct, autocorrelation_fft,
    isl, psl, isl_frequency, two_sided_objective, autocorrelation_db, summarize_sequence,
)
from .majorizer import (
    ToeplitzOperator, BoundValue, BoundStrategy, build_operator,
    bound_tr, bound_ei, bound_bei, bound_befft, compute_bound, bound_diagnostics,
)
from .solvers import (
    SolverConfig, IterationTrace, SolverResult, stop_check, squarem_wrap,
    fisl_step, solve_fisl, solve_can, solve_misl, solve_islnew, solve,
)
from .harness import (
    ExperimentPlan, ExperimentReport, load_plan, run_plan,
    compare_strategies, compare_algorithms, export_summary, speedup_table, timing_by_length,
)

__all__ = [
    "__version__", "__author__", "__license__",
    # core
    "Sequence", "PhaseVector", "Spectrum", "random_sequence", "golomb_sequence",
    "frank_sequence", "forward_transform_2p", "inverse_transform_2p", "count_transforms",
    "ValidationError", "InvalidLengthError", "UnsupportedLengthError", "UndefinedMetricError",
    "PlanValidationError", "InternalConsistencyError", "NumericalWarning", "ValidationWarning",
    # metrics
    "CorrelationProfile", "autocorrelation_direct", "autocorrelation_fft", "isl", "psl",
    "isl_frequency", "two_sided_objective", "autocorrelation_db", "summarize_sequence",
    # majorizer
    "ToeplitzOperator", "BoundValue", "BoundStrategy", "build_operator", "bound_tr",
    "bound_ei", "bound_bei", "bound_befft", "compute_bound", "bound_diagnostics",
    # solvers
    "SolverConfig", "IterationTrace", "SolverResult", "stop_check", "squarem_wrap",
    "fisl_step", "solve_fisl", "solve_can", "solve_misl", "solve_islnew", "solve",
    # harness
    "ExperimentPlan", "ExperimentReport", "load_plan", "run_plan", "compare_strategies",
    "compare_algorithms", "export_summary", "speedup_table", "timing_by_length",
]


def get_version():
    """Get the current version of seqforge."""
    return __version__


def get_info():
    """Get package information."""
    return {
        "name": __title__,
        "version": __version__,
        "description": __description__,
        "author": __author__,
        "license": __license__,
        "python_version": f"{sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}",
    }


def check_dependencies():
    """
    Check which runtime dependencies import.

    Returns:
        dict: True/False per dependency
    """
    status = {}
    for name in ("numpy", "scipy", "pandas", "yaml", "click", "tqdm", "joblib"):
        try:
            __import__(name)
            status[name] = True
        except ImportError:
            status[name] = False
    return status
