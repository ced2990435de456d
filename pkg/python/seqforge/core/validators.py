"""
Input validation utilities for sequence design.

This module provides the exception hierarchy shared by all seqforge
modules and validation helpers for lengths, tolerances, unimodular
vectors and solver settings.

Author: seqforge developers
License: MIT
"""

import math
from typing import Union, Optional, Any

import numpy as np

from .constants import NUMERICAL_TOLERANCES, ALGORITHMS, BOUND_STRATEGIES


class ValidationError(ValueError):
    """Custom exception for validation errors."""
    pass


class InvalidLengthError(ValidationError):
    """Raised for empty sequences, odd spectra and dimension mismatches."""
    pass


class UnsupportedLengthError(ValidationError):
    """Raised when a construction does not exist for the requested length."""
    pass


class UndefinedMetricError(ValidationError):
    """Raised when a metric is undefined for the given profile."""
    pass


class PlanValidationError(ValidationError):
    """Raised for inconsistent experiment plans."""
    pass


class InternalConsistencyError(RuntimeError):
    """Raised when a numerical invariant that cannot fail in exact arithmetic fails."""
    pass


class ValidationWarning(UserWarning):
    """Custom warning for validation issues that are not errors."""
    pass


class NumericalWarning(UserWarning):
    """Warning for recoverable numerical conditions (clamps, ties, non-convergence)."""
    pass


def validate_input(value: Union[float, int, np.ndarray],
                   name: str,
                   min_val: Optional[float] = None,
                   max_val: Optional[float] = None,
                   positive: bool = False,
                   integer: bool = False,
                   finite: bool = True) -> Union[float, int, np.ndarray]:
    """
    Validate a numerical input parameter.

    Args:
        value: Value to validate
        name: Parameter name for error messages
        min_val: Minimum allowed value
        max_val: Maximum allowed value
        positive: Whether value must be positive
        integer: Whether value must be integer
        finite: Whether value must be finite

    Returns:
        Validated value (int when integer=True and value is scalar)

    Raises:
        ValidationError: If validation fails

    Example:
        >>> validate_input(1e-5, "tolerance", positive=True)
        1e-05
        >>> validate_input(0, "max_iterations", positive=True)  # Raises ValidationError
    """
    if isinstance(value, bool):
        raise ValidationError(f"{name} must be numeric, got bool")

    val_array = np.asarray(value)
    if not np.issubdtype(val_array.dtype, np.number):
        raise ValidationError(f"{name} must be numeric, got {type(value).__name__}")

    if finite and not np.all(np.isfinite(val_array)):
        raise ValidationError(f"{name} must be finite (no NaN or inf values)")

    if integer and not np.all(val_array == np.round(val_array)):
        raise ValidationError(f"{name} must be integer")

    if positive and not np.all(val_array > 0):
        raise ValidationError(f"{name} must be positive")

    if min_val is not None and not np.all(val_array >= min_val):
        raise ValidationError(f"{name} must be >= {min_val}")

    if max_val is not None and not np.all(val_array <= max_val):
        raise ValidationError(f"{name} must be <= {max_val}")

    if np.isscalar(value) or val_array.ndim == 0:
        return int(val_array) if integer else float(val_array)
    return val_array


def validate_length(length: Any, name: str = "P") -> int:
    """
    Validate a sequence length.

    Raises:
        InvalidLengthError: If the length is not a positive integer
    """
    try:
        return validate_input(length, name, integer=True, positive=True)
    except ValidationError as e:
        raise InvalidLengthError(f"invalid sequence length: {e}") from None


def validate_seed(seed: Any) -> int:
    """Validate an unsigned integer seed."""
    return validate_input(seed, "seed", integer=True, min_val=0)


def is_perfect_square(length: int) -> bool:
    """Check whether ``length`` equals M**2 for an integer M >= 1."""
    if length < 1:
        return False
    root = math.isqrt(length)
    return root * root == length


def check_unimodular(samples: np.ndarray,
                     tol: Optional[float] = None) -> float:
    """
    Return the largest deviation | |z_n| - 1 | of a complex vector.

    Args:
        samples: Complex vector
        tol: Raise if the deviation exceeds this tolerance (skip if None)

    Raises:
        ValidationError: If tol is given and exceeded
    """
    samples = np.asarray(samples)
    if samples.size == 0:
        return 0.0
    deviation = float(np.max(np.abs(np.abs(samples) - 1.0)))
    if tol is not None and deviation > tol:
        raise ValidationError(
            f"samples are not unit-modulus: max | |z_n| - 1 | = {deviation:.3e} > {tol:.1e}"
        )
    return deviation


def validate_unimodular(samples: Any) -> np.ndarray:
    """
    Validate and freeze a unit-modulus complex vector.

    Returns:
        Read-only complex128 copy of the samples

    Raises:
        InvalidLengthError: If the vector is empty or not one-dimensional
        ValidationError: If an element is not unit-modulus
    """
    arr = np.array(samples, dtype=np.complex128)
    if arr.ndim != 1:
        raise InvalidLengthError(f"samples must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidLengthError("samples must contain at least one element (P >= 1)")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("samples must be finite")
    check_unimodular(arr, NUMERICAL_TOLERANCES["unit_modulus"])
    arr.setflags(write=False)
    return arr


def validate_algorithm(name: str) -> str:
    """Normalize and validate an algorithm name (case-insensitive, '-' or '_')."""
    key = str(name).upper().replace("-", "_")
    if key == "ISLNEW":
        key = "ISL_NEW"
    if key not in ALGORITHMS:
        raise ValidationError(f"unknown algorithm '{name}', expected one of {list(ALGORITHMS)}")
    return key


def validate_strategy(name: str) -> str:
    """Normalize and validate a bound strategy name."""
    key = str(name).upper()
    if key not in BOUND_STRATEGIES:
        raise ValidationError(
            f"unknown bound strategy '{name}', expected one of {list(BOUND_STRATEGIES)}"
        )
    return key
