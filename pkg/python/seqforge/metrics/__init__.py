"""
Autocorrelation and sidelobe metrics for seqforge.

Author: seqforge developers
License: MIT
"""

from .correlation import (
    CorrelationProfile,
    autocorrelation_direct,
    autocorrelation_fft,
    autocorrelation_from_spectrum,
    isl,
    psl,
    isl_frequency,
    two_sided_objective,
    autocorrelation_db,
    summarize_sequence,
)

__all__ = [
    "CorrelationProfile", "autocorrelation_direct", "autocorrelation_fft",
    "autocorrelation_from_spectrum", "isl", "psl", "isl_frequency",
    "two_sided_objective", "autocorrelation_db", "summarize_sequence",
]
