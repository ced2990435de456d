"""
Toeplitz operator and majorizer bounds for seqforge.

Author: seqforge developers
License: MIT
"""

from .toeplitz import ToeplitzOperator, build_operator, apply, dense_matrix, circulant_column
from .bounds import (
    BoundStrategy,
    BoundValue,
    as_strategy,
    bound_tr,
    bound_ei,
    bound_bei,
    bound_befft,
    compute_bound,
    trace_of_square,
    bound_diagnostics,
)

__all__ = [
    "ToeplitzOperator", "build_operator", "apply", "dense_matrix", "circulant_column",
    "BoundStrategy", "BoundValue", "as_strategy", "bound_tr", "bound_ei", "bound_bei",
    "bound_befft", "compute_bound", "trace_of_square", "bound_diagnostics",
]
