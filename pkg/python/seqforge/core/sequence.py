"""
Unimodular sequence value types and deterministic initializers.

Provides the Sequence and PhaseVector value types together with the
random, Golomb and Frank initializers used as starting points for every
solver.

Random sequences draw from numpy's PCG64 generator through
``numpy.random.default_rng(seed)``; the stream is portable across
platforms and stable across numpy releases for a fixed seed.

Author: seqforge developers
License: MIT
"""

import math
from typing import Any, Union, Sequence as SequenceLike

import numpy as np

from .validators import (
    validate_length, validate_seed, validate_unimodular, is_perfect_square,
    InvalidLengthError, UnsupportedLengthError, ValidationError,
)

TWO_PI = 2.0 * np.pi


class Sequence:
    """
    Length-P vector of unit-modulus complex samples.

    The samples are stored as a read-only complex128 array; the length
    cannot change once the value exists.

    Attributes:
        samples: Read-only complex array of length P

    Example:
        >>> z = Sequence([1, 1j, -1j, -1])
        >>> z.length
        4
    """

    __slots__ = ("_samples",)

    def __init__(self, samples: Any):
        if isinstance(samples, Sequence):
            samples = samples.samples
        self._samples = validate_unimodular(samples)

    @classmethod
    def from_phases(cls, phases: Union[np.ndarray, SequenceLike[float]]) -> "Sequence":
        """Build a sequence as exp(j*phases)."""
        phases = np.asarray(phases, dtype=float)
        return cls(np.exp(1j * phases))

    @classmethod
    def unchecked(cls, samples: np.ndarray) -> "Sequence":
        """Wrap a 1-D complex array without the unit-modulus check."""
        obj = cls.__new__(cls)
        arr = np.array(samples, dtype=np.complex128)
        arr.setflags(write=False)
        obj._samples = arr
        return obj

    @property
    def samples(self) -> np.ndarray:
        return self._samples

    @property
    def length(self) -> int:
        return int(self._samples.size)

    def phases(self) -> "PhaseVector":
        """Return the phases of this sequence wrapped to [0, 2*pi)."""
        return PhaseVector.from_sequence(self)

    def copy_array(self) -> np.ndarray:
        """Return a writable copy of the samples."""
        return np.array(self._samples, copy=True)

    def __len__(self) -> int:
        return self.length

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._samples.copy()
        return self._samples.astype(dtype)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sequence):
            return NotImplemented
        return bool(np.array_equal(self._samples, other._samples))

    def __hash__(self) -> int:
        return hash(self._samples.tobytes())

    def __repr__(self) -> str:
        return f"Sequence(P={self.length})"


class PhaseVector:
    """
    Length-P vector of phases in [0, 2*pi) radians.

    Converting to a Sequence via exp(j*phi) and back round-trips to within
    1e-12 per element.
    """

    __slots__ = ("_phases",)

    def __init__(self, phases: Any):
        arr = np.array(phases, dtype=float)
        if arr.ndim != 1:
            raise InvalidLengthError(f"phases must be one-dimensional, got shape {arr.shape}")
        if arr.size == 0:
            raise InvalidLengthError("phases must contain at least one element (P >= 1)")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("phases must be finite")
        arr = np.mod(arr, TWO_PI)
        # mod can return exactly 2*pi for tiny negative inputs
        arr[arr >= TWO_PI] = 0.0
        arr.setflags(write=False)
        self._phases = arr

    @classmethod
    def from_sequence(cls, z: Sequence) -> "PhaseVector":
        return cls(np.angle(z.samples))

    @property
    def phases(self) -> np.ndarray:
        return self._phases

    @property
    def length(self) -> int:
        return int(self._phases.size)

    def to_sequence(self) -> Sequence:
        return Sequence.from_phases(self._phases)

    def __len__(self) -> int:
        return self.length

    def __repr__(self) -> str:
        return f"PhaseVector(P={self.length})"


def random_sequence(P: int, seed: int) -> Sequence:
    """
    Draw a sequence with i.i.d. uniform phases.

    Phases are 2*pi*theta with theta ~ U[0, 1) drawn from
    ``numpy.random.default_rng(seed)`` (PCG64).

    Args:
        P: Sequence length (P >= 1)
        seed: Unsigned integer seed

    Returns:
        Random unimodular Sequence

    Raises:
        InvalidLengthError: If P < 1
    """
    P = validate_length(P)
    seed = validate_seed(seed)
    rng = np.random.default_rng(seed)
    theta = rng.random(P)
    return Sequence.from_phases(TWO_PI * theta)


def golomb_sequence(P: int) -> Sequence:
    """
    Golomb polyphase sequence z_n = exp(j*pi*(n-1)*n/P), n = 1..P.

    Example:
        >>> golomb_sequence(4).samples.round(12)
        array([ 1.+0.j,  0.+1.j, -0.-1.j, -1.-0.j])
    """
    P = validate_length(P)
    n = np.arange(1, P + 1, dtype=float)
    return Sequence.from_phases(np.pi * (n - 1) * n / P)


def frank_sequence(P: int) -> Sequence:
    """
    Frank polyphase sequence for a perfect-square length P = M**2.

    Element n = (p-1)*M + q, p, q in 1..M, has phase (2*pi/M)*(p-1)*(q-1).

    Raises:
        UnsupportedLengthError: If P is not a perfect square
    """
    P = validate_length(P)
    if not is_perfect_square(P):
        raise UnsupportedLengthError(
            f"Frank sequence requires a perfect-square length P = M**2, got P={P}"
        )
    M = math.isqrt(P)
    p, q = np.divmod(np.arange(P), M)
    # (p-1)(q-1) mod M keeps phases small so exp() stays exact at large P
    phase = TWO_PI / M * np.mod(p * q, M)
    return Sequence.from_phases(phase)


INITIALIZERS = {
    "random": random_sequence,
    "golomb": golomb_sequence,
    "frank": frank_sequence,
}


def make_initial_sequence(init: str, P: int, seed: int = 0) -> Sequence:
    """
    Build an initialization by name.

    Args:
        init: One of 'random', 'golomb', 'frank'
        P: Sequence length
        seed: Seed used by the random initializer only

    Raises:
        ValidationError: If the initializer name is unknown
    """
    key = str(init).lower()
    if key not in INITIALIZERS:
        raise ValidationError(f"unknown initialization '{init}', expected one of {list(INITIALIZERS)}")
    if key == "random":
        return random_sequence(P, seed)
    return INITIALIZERS[key](P)


def max_modulus_error(z: Union[Sequence, np.ndarray]) -> float:
    """Return max_n | |z_n| - 1 |."""
    samples = z.samples if isinstance(z, Sequence) else np.asarray(z)
    return float(np.max(np.abs(np.abs(samples) - 1.0)))
