"""
CSV tables: iteration traces and autocorrelation profiles.

Trace CSV columns are ``iter,isl,elapsed_s,bound_m`` followed by a
comment line ``# stop_reason=<reason>``. Profile CSV columns are
``lag,re,im,abs,db``.

Author: seqforge developers
License: MIT
"""

import logging
from pathlib import Path
from typing import Any, Dict, Tuple, Union

import numpy as np
import pandas as pd

from ..core.constants import FILE_FORMATS, STOP_REASONS
from ..metrics.correlation import CorrelationProfile, autocorrelation_db
from ..solvers.base_solver import IterationTrace
from .base_parser import BaseParser, ParseError, UnsupportedFormatError, CorruptedFileError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = f"%.{FILE_FORMATS['significant_digits']}g"
STOP_REASON_PREFIX = "# stop_reason="


class TableParser(BaseParser):
    """Reader and writer for trace and profile CSV files."""

    def parse_file(self, filepath: Union[str, Path]) -> Dict[str, Any]:
        """
        Parse a trace or profile CSV, detected from its header.

        Returns:
            Dict with 'format' ('trace' or 'profile'), 'data' (DataFrame) and,
            for traces, 'stop_reason'
        """
        filepath = Path(filepath)
        if not filepath.exists():
            raise FileNotFoundError(f"Table file not found: {filepath}")
        with open(filepath, 'r') as f:
            header = f.readline().strip()
        columns = tuple(header.split(','))
        if columns == tuple(FILE_FORMATS["trace_columns"]):
            data, stop_reason = self.read_trace(filepath)
            return {'format': 'trace', 'data': data, 'stop_reason': stop_reason}
        if columns == tuple(FILE_FORMATS["profile_columns"]):
            return {'format': 'profile', 'data': self.read_profile(filepath)}
        raise UnsupportedFormatError(f"Unrecognized table header in {filepath}: {header!r}")

    def write_trace(self, trace: IterationTrace, filepath: Union[str, Path]) -> Path:
        """Write a trace CSV with the trailing stop-reason comment."""
        filepath = self.ensure_parent(filepath)
        trace.to_dataframe().to_csv(filepath, index=False, float_format=FLOAT_FORMAT)
        with open(filepath, 'a') as f:
            f.write(f"{STOP_REASON_PREFIX}{trace.stop_reason}\n")
        self._log_info(f"Wrote trace {filepath} ({len(trace)} rows)")
        return filepath

    def read_trace(self, filepath: Union[str, Path]) -> Tuple[pd.DataFrame, str]:
        """
        Read a trace CSV.

        Returns:
            Tuple of (DataFrame with the trace columns, stop reason)

        Raises:
            CorruptedFileError: Missing columns or stop-reason line
        """
        filepath = Path(filepath)
        try:
            data = pd.read_csv(filepath, comment='#')
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise ParseError(f"Failed to parse trace file {filepath}: {e}")
        if tuple(data.columns) != tuple(FILE_FORMATS["trace_columns"]):
            raise CorruptedFileError(f"Unexpected trace columns in {filepath}: {list(data.columns)}")

        stop_reason = None
        with open(filepath, 'r') as f:
            for line in f:
                if line.startswith(STOP_REASON_PREFIX):
                    stop_reason = line[len(STOP_REASON_PREFIX):].strip()
        if stop_reason not in STOP_REASONS:
            raise CorruptedFileError(f"Missing or invalid stop_reason line in {filepath}")
        return data, stop_reason

    def write_profile(self, r: Union[CorrelationProfile, np.ndarray], filepath: Union[str, Path]) -> Path:
        """Write an autocorrelation profile as lag,re,im,abs,db."""
        filepath = self.ensure_parent(filepath)
        profile = r if isinstance(r, CorrelationProfile) else CorrelationProfile(r)
        values = profile.values
        data = pd.DataFrame({
            'lag': np.arange(values.size),
            're': values.real,
            'im': values.imag,
            'abs': np.abs(values),
            'db': autocorrelation_db(profile),
        }, columns=list(FILE_FORMATS["profile_columns"]))
        data.to_csv(filepath, index=False, float_format=FLOAT_FORMAT)
        return filepath

    def read_profile(self, filepath: Union[str, Path]) -> pd.DataFrame:
        filepath = Path(filepath)
        try:
            data = pd.read_csv(filepath)
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise ParseError(f"Failed to parse profile file {filepath}: {e}")
        if tuple(data.columns) != tuple(FILE_FORMATS["profile_columns"]):
            raise CorruptedFileError(f"Unexpected profile columns in {filepath}: {list(data.columns)}")
        return data


def write_trace_csv(trace: IterationTrace, filepath: Union[str, Path]) -> Path:
    return TableParser().write_trace(trace, filepath)


def read_trace_csv(filepath: Union[str, Path]) -> Tuple[pd.DataFrame, str]:
    """Read a trace CSV; returns (rows, stop_reason)."""
    return TableParser().read_trace(filepath)


def write_profile_csv(r: Union[CorrelationProfile, np.ndarray], filepath: Union[str, Path]) -> Path:
    return TableParser().write_profile(r, filepath)


def read_profile_csv(filepath: Union[str, Path]) -> pd.DataFrame:
    return TableParser().read_profile(filepath)
