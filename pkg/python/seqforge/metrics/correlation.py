"""
Aperiodic autocorrelation and sidelobe metrics.

Direct O(P^2) autocorrelation (the oracle), the spectral O(P log P) path,
ISL/PSL, the frequency-domain ISL identity, the two-sided objective used
by FISL and the dB profile used for exports.

Author: seqforge developers
License: MIT
"""

import logging
from typing import Any, Dict, Union

import numpy as np

from ..core.constants import NUMERICAL_TOLERANCES
from ..core.sequence import Sequence
from ..core.transforms import forward, inverse
from ..core.validators import InvalidLengthError, UndefinedMetricError

logger = logging.getLogger(__name__)

ProfileLike = Union["CorrelationProfile", np.ndarray, list]


class CorrelationProfile:
    """
    Autocorrelation values r(0..P-1).

    Negative lags are implied by r(-l) = conj(r(l)) and never stored.

    Attributes:
        values: Read-only complex array of length P
    """

    __slots__ = ("_values",)

    def __init__(self, values: Any):
        arr = np.array(values, dtype=np.complex128)
        if arr.ndim != 1:
            raise InvalidLengthError(f"profile must be one-dimensional, got shape {arr.shape}")
        if arr.size == 0:
            raise InvalidLengthError("profile must contain r(0)")
        arr.setflags(write=False)
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def length(self) -> int:
        return int(self._values.size)

    @property
    def zero_lag(self) -> float:
        return float(self._values[0].real)

    @property
    def sidelobes(self) -> np.ndarray:
        """r(1..P-1)."""
        return self._values[1:]

    def full_lag_axis(self) -> np.ndarray:
        """Return r(-(P-1)..P-1) rebuilt from conjugate symmetry."""
        negative = np.conj(self._values[:0:-1])
        return np.concatenate([negative, self._values])

    def __len__(self) -> int:
        return self.length

    def __repr__(self) -> str:
        return f"CorrelationProfile(P={self.length})"


def _values(r: ProfileLike) -> np.ndarray:
    if isinstance(r, CorrelationProfile):
        return r.values
    return CorrelationProfile(r).values


def _samples(z: Union[Sequence, np.ndarray]) -> np.ndarray:
    if isinstance(z, Sequence):
        return z.samples
    return np.asarray(z, dtype=np.complex128)


def autocorrelation_direct(z: Union[Sequence, np.ndarray]) -> CorrelationProfile:
    """
    Aperiodic autocorrelation r(l) = sum_n z_{n+l} conj(z_n) by direct summation.

    O(P^2); used as the oracle for ``autocorrelation_fft``.

    Example:
        >>> autocorrelation_direct(Sequence([1, 1j])).values
        array([2.+0.j, 0.+1.j])
    """
    x = _samples(z).tolist()
    P = len(x)
    r = np.zeros(P, dtype=np.complex128)
    for lag in range(P):
        acc = 0j
        for n in range(P - lag):
            acc += x[n + lag] * x[n].conjugate()
        r[lag] = acc
    return CorrelationProfile(r)


def autocorrelation_from_spectrum(f: np.ndarray) -> np.ndarray:
    """r(0..P-1) from the 2P-point forward transform f of the padded sequence."""
    P = f.size // 2
    c = inverse(np.abs(f) ** 2)[:P]
    c[0] = c[0].real
    return c


def autocorrelation_fft(z: Union[Sequence, np.ndarray]) -> CorrelationProfile:
    """
    Aperiodic autocorrelation through one forward and one inverse 2P-point FFT.

    r = inverse(|forward(z padded)|^2)[:P]; the inverse carries 1/(2P) so
    that r(0) = P for a unimodular sequence.
    """
    x = _samples(z)
    if x.size == 0:
        raise InvalidLengthError("cannot correlate an empty sequence")
    f = forward(x, n=2 * x.size)
    return CorrelationProfile(autocorrelation_from_spectrum(f))


def isl(r: ProfileLike) -> float:
    """Integrated sidelobe level sum_{l=1}^{P-1} |r(l)|^2."""
    values = _values(r)
    return float(np.sum(np.abs(values[1:]) ** 2))


def psl(r: ProfileLike) -> float:
    """
    Peak sidelobe level max_{l=1..P-1} |r(l)|.

    Raises:
        UndefinedMetricError: If P = 1 (no sidelobes)
    """
    values = _values(r)
    if values.size < 2:
        raise UndefinedMetricError("PSL is undefined for P = 1: the profile has no sidelobes")
    return float(np.max(np.abs(values[1:])))


def isl_frequency(z: Union[Sequence, np.ndarray]) -> float:
    """
    ISL evaluated on the 2P-point Fourier grid.

    (1/4P) * sum_k (|Z_k|^2 - P)^2, which equals the lag-domain ISL for a
    unimodular sequence.
    """
    x = _samples(z)
    P = x.size
    f = forward(x, n=2 * P)
    return float(np.sum((np.abs(f) ** 2 - P) ** 2) / (4 * P))


def two_sided_objective(r: ProfileLike) -> float:
    """g(z) = sum_{l=-(P-1)}^{P-1} |r(l)|^2 = 2*ISL + |r(0)|^2."""
    values = _values(r)
    return 2.0 * isl(values) + float(np.abs(values[0]) ** 2)


def autocorrelation_db(r: ProfileLike) -> np.ndarray:
    """
    Normalized autocorrelation magnitude in dB, 20*log10(|r(l)|/|r(0)|).

    Exact zeros are written as the floor value (-320 dB).

    Raises:
        UndefinedMetricError: If r(0) = 0
    """
    values = _values(r)
    mainlobe = np.abs(values[0])
    if mainlobe == 0:
        raise UndefinedMetricError("invalid profile: r(0) = 0, cannot normalize")
    magnitude = np.abs(values) / mainlobe
    db = np.full(values.size, NUMERICAL_TOLERANCES["db_floor"])
    nonzero = magnitude > 0
    db[nonzero] = 20.0 * np.log10(magnitude[nonzero])
    return db


def summarize_sequence(z: Union[Sequence, np.ndarray]) -> Dict[str, Any]:
    """
    Summary metrics of a sequence.

    Returns:
        Dict with length, isl, psl (None for P = 1), isl_db, psl_db
        (relative to the mainlobe) and two_sided
    """
    x = _samples(z)
    r = autocorrelation_fft(x)
    floor = NUMERICAL_TOLERANCES["db_floor"]
    isl_value = isl(r)
    summary: Dict[str, Any] = {
        "length": int(x.size),
        "isl": isl_value,
        "isl_db": 10.0 * np.log10(isl_value) if isl_value > 0 else floor,
        "two_sided": two_sided_objective(r),
        "psl": None,
        "psl_db": None,
    }
    if x.size >= 2:
        psl_value = psl(r)
        summary["psl"] = psl_value
        summary["psl_db"] = (
            20.0 * np.log10(psl_value / r.zero_lag) if psl_value > 0 else floor
        )
    return summary
