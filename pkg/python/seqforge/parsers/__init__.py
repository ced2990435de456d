"""
File parsers for seqforge.

Sequence/phase text files and the trace/profile CSV tables.

Author: seqforge developers
License: MIT
"""

from .base_parser import BaseParser, ParseError, UnsupportedFormatError, CorruptedFileError
from .sequence_parser import SequenceParser, read_sequence, write_sequence, write_phases
from .table_parser import (
    TableParser, read_trace_csv, write_trace_csv, read_profile_csv, write_profile_csv,
)

__all__ = [
    "BaseParser", "ParseError", "UnsupportedFormatError", "CorruptedFileError",
    "SequenceParser", "read_sequence", "write_sequence", "write_phases",
    "TableParser", "read_trace_csv", "write_trace_csv", "read_profile_csv", "write_profile_csv",
]
