"""
Zero-padded length-2P spectral transforms.

Forward transforms are unnormalized with kernel exp(-j*2*pi*k*n/(2P)) over
0-based bins k = 0..2P-1; the inverse carries the 1/(2P) factor. Every
transform in the package goes through ``forward`` / ``inverse`` so that
``count_transforms`` can audit the per-iteration cost.

Author: seqforge developers
License: MIT
"""

from contextlib import contextmanager
from contextvars import ContextVar
from typing import Any, Iterator, Optional, Union

import numpy as np
import scipy.fft

from .sequence import Sequence
from .validators import InvalidLengthError


class TransformCounter:
    """Number of forward and inverse transforms issued inside a context."""

    __slots__ = ("forward", "inverse")

    def __init__(self):
        self.forward = 0
        self.inverse = 0

    @property
    def total(self) -> int:
        return self.forward + self.inverse

    def __repr__(self) -> str:
        return f"TransformCounter(forward={self.forward}, inverse={self.inverse})"


_active_counter: ContextVar[Optional[TransformCounter]] = ContextVar(
    "seqforge_transform_counter", default=None
)


@contextmanager
def count_transforms() -> Iterator[TransformCounter]:
    """
    Count transforms issued in the current context.

    Example:
        >>> with count_transforms() as counter:
        ...     fisl_step(z, "BEFFT")
        >>> (counter.forward, counter.inverse)
        (3, 2)
    """
    counter = TransformCounter()
    token = _active_counter.set(counter)
    try:
        yield counter
    finally:
        _active_counter.reset(token)


def forward(x: np.ndarray, n: Optional[int] = None) -> np.ndarray:
    """Unnormalized forward FFT of x zero-padded (or cut) to n points."""
    counter = _active_counter.get()
    if counter is not None:
        counter.forward += 1
    return scipy.fft.fft(x, n=n)


def inverse(X: np.ndarray) -> np.ndarray:
    """Inverse FFT carrying the 1/N normalization."""
    counter = _active_counter.get()
    if counter is not None:
        counter.inverse += 1
    return scipy.fft.ifft(X)


def zero_pad(x: np.ndarray) -> np.ndarray:
    """Return x followed by len(x) zeros."""
    x = np.asarray(x, dtype=np.complex128)
    return np.concatenate([x, np.zeros_like(x)])


class Spectrum:
    """
    Length-2P complex frequency-domain vector.

    Attributes:
        bins: Read-only complex array of length 2P
    """

    __slots__ = ("_bins",)

    def __init__(self, bins: Any):
        arr = np.array(bins, dtype=np.complex128)
        if arr.ndim != 1:
            raise InvalidLengthError(f"spectrum must be one-dimensional, got shape {arr.shape}")
        if arr.size < 2 or arr.size % 2:
            raise InvalidLengthError(
                f"spectrum length must be even and >= 2, got {arr.size}"
            )
        arr.setflags(write=False)
        self._bins = arr

    @property
    def bins(self) -> np.ndarray:
        return self._bins

    @property
    def sequence_length(self) -> int:
        """Length P of the sequence this spectrum came from."""
        return self._bins.size // 2

    def power(self) -> np.ndarray:
        """Elementwise |s_k|^2."""
        return np.abs(self._bins) ** 2

    def __len__(self) -> int:
        return int(self._bins.size)

    def __repr__(self) -> str:
        return f"Spectrum(2P={self._bins.size})"


def forward_transform_2p(z: Union[Sequence, np.ndarray]) -> Spectrum:
    """
    Forward transform of z zero-padded to 2P.

    s_k = sum_n z_n exp(-j*2*pi*k*n/(2P)), k = 0..2P-1, no normalization.

    Example:
        >>> forward_transform_2p(Sequence([1, 1])).bins
        array([2.+0.j, 1.-1.j, 0.+0.j, 1.+1.j])
    """
    samples = z.samples if isinstance(z, Sequence) else np.asarray(z, dtype=np.complex128)
    if samples.size == 0:
        raise InvalidLengthError("cannot transform an empty sequence")
    return Spectrum(forward(samples, n=2 * samples.size))


def inverse_transform_2p(s: Union[Spectrum, np.ndarray]) -> np.ndarray:
    """
    Exact inverse of ``forward_transform_2p``, 1/(2P) included.

    Returns:
        Length-2P complex array (the zero-padded vector for a genuine spectrum)

    Raises:
        InvalidLengthError: If the length is odd or below 2
    """
    bins = s.bins if isinstance(s, Spectrum) else Spectrum(s).bins
    return inverse(bins)
