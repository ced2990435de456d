"""
Matrix-free Hermitian Toeplitz operator R(z).

R(z) has first column r(0..P-1) and first row conj(r(0..P-1)). It is
embedded in a 2P-point circulant whose first column is
d = [r(0), ..., r(P-1), 0, conj(r(P-1)), ..., conj(r(1))]; the circulant
eigenvalues s = FFT(d) are cached so that R x costs one forward and one
inverse 2P-point transform.

Author: seqforge developers
License: MIT
"""

import logging
from typing import Union

import numpy as np
import scipy.linalg

from ..core.constants import NUMERICAL_TOLERANCES
from ..core.transforms import forward, inverse
from ..core.validators import InvalidLengthError
from ..metrics.correlation import CorrelationProfile

logger = logging.getLogger(__name__)


def circulant_column(values: np.ndarray) -> np.ndarray:
    """First column d of the 2P-point circulant embedding of R."""
    values = np.asarray(values, dtype=np.complex128)
    return np.concatenate([values, [0.0], np.conj(values[:0:-1])])


class ToeplitzOperator:
    """
    Hermitian Toeplitz operator defined by an autocorrelation profile.

    Attributes:
        profile: CorrelationProfile defining the first column
        padded_spectrum: Complex 2P-point transform of the circulant column
            (real to rounding; the power spectrum of z for a genuine profile)

    Example:
        >>> op = build_operator([2, 1])
        >>> op.spectrum
        array([4., 2., 0., 2.])
        >>> op.apply([1, 1])
        array([3.+0.j, 3.+0.j])
    """

    __slots__ = ("_profile", "_padded_spectrum", "_symbol")

    def __init__(self, profile: CorrelationProfile, padded_spectrum: np.ndarray):
        self._profile = profile
        spectrum = np.array(padded_spectrum, dtype=np.complex128)
        if spectrum.size != 2 * profile.length:
            raise InvalidLengthError(
                f"spectrum length {spectrum.size} does not match 2P = {2 * profile.length}"
            )
        spectrum.setflags(write=False)
        self._padded_spectrum = spectrum
        symbol = spectrum.real.copy()
        symbol.setflags(write=False)
        self._symbol = symbol

    @property
    def profile(self) -> CorrelationProfile:
        return self._profile

    @property
    def length(self) -> int:
        return self._profile.length

    @property
    def padded_spectrum(self) -> np.ndarray:
        return self._padded_spectrum

    @property
    def spectrum(self) -> np.ndarray:
        """Real part of the cached spectrum."""
        return self._symbol

    @property
    def max_imaginary(self) -> float:
        return float(np.max(np.abs(self._padded_spectrum.imag)))

    @property
    def trace(self) -> float:
        """Tr(R) = P * r(0)."""
        return self.length * self._profile.zero_lag

    def is_spectrum_real(self) -> bool:
        tol = NUMERICAL_TOLERANCES["spectrum_imag_per_length"] * self.length
        return self.max_imaginary <= tol

    def apply(self, x: Union[np.ndarray, list]) -> np.ndarray:
        """
        Return R x via zero padding, forward FFT, spectral product, inverse FFT.

        Raises:
            InvalidLengthError: If len(x) != P
        """
        x = np.asarray(x, dtype=np.complex128)
        P = self.length
        if x.ndim != 1 or x.size != P:
            raise InvalidLengthError(
                f"dimension mismatch: operator has P={P}, vector has shape {x.shape}"
            )
        return inverse(self._symbol * forward(x, n=2 * P))[:P]

    def dense_matrix(self) -> np.ndarray:
        """Materialize the P x P matrix. Oracle use only."""
        return dense_matrix(self._profile)

    def __repr__(self) -> str:
        return f"ToeplitzOperator(P={self.length})"


def build_operator(r: Union[CorrelationProfile, np.ndarray, list]) -> ToeplitzOperator:
    """
    Build the operator for profile r, caching s = FFT(d).

    One forward transform; the P x P matrix is never formed.
    """
    profile = r if isinstance(r, CorrelationProfile) else CorrelationProfile(r)
    spectrum = forward(circulant_column(profile.values))
    return ToeplitzOperator(profile, spectrum)


def apply(op: ToeplitzOperator, x: Union[np.ndarray, list]) -> np.ndarray:
    """Module-level alias of ``ToeplitzOperator.apply``."""
    return op.apply(x)


def dense_matrix(r: Union[CorrelationProfile, np.ndarray, list]) -> np.ndarray:
    """Dense Hermitian Toeplitz matrix with R[m, n] = r(m - n), R[n, m] = conj(r(m - n))."""
    values = r.values if isinstance(r, CorrelationProfile) else CorrelationProfile(r).values
    return scipy.linalg.toeplitz(values, np.conj(values))
