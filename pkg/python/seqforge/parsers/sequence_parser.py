"""
Sequence text formats.

Two variants share a header line carrying the length:

    # seqforge sequence P=<P>       one "re im" pair per line
    # seqforge phases P=<P>         one phase in radians per line

Values are written with 17 significant digits so complex samples reload
bit-identically.

Author: seqforge developers
License: MIT
"""

import re
import logging
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from ..core.constants import FILE_FORMATS
from ..core.sequence import Sequence
from ..core.validators import ValidationError
from .base_parser import BaseParser, ParseError, UnsupportedFormatError, CorruptedFileError

logger = logging.getLogger(__name__)

HEADER_PATTERN = re.compile(r"^#\s*seqforge\s+(sequence|phases)\s+P\s*=\s*(\d+)\s*$")


class SequenceParser(BaseParser):
    """
    Reader and writer for sequence and phase files.

    Example:
        >>> parser = SequenceParser()
        >>> parser.write_sequence(golomb_sequence(4), "golomb4.seq")
        >>> parser.read_sequence("golomb4.seq").length
        4
    """

    def parse_file(self, filepath: Union[str, Path]) -> Dict[str, Any]:
        """
        Parse a sequence or phase file.

        Returns:
            Dict with 'sequence', 'length', 'format' ('sequence' or 'phases')
            and 'header'

        Raises:
            FileNotFoundError: File doesn't exist
            UnsupportedFormatError: Header missing or unrecognized
            CorruptedFileError: Malformed rows or a row count that disagrees with P
        """
        filepath = Path(filepath)
        if not filepath.exists():
            raise FileNotFoundError(f"Sequence file not found: {filepath}")

        with open(filepath, 'r') as f:
            lines = [line.strip() for line in f if line.strip()]
        if not lines:
            raise CorruptedFileError(f"Empty sequence file: {filepath}")

        match = HEADER_PATTERN.match(lines[0])
        if match is None:
            raise UnsupportedFormatError(f"Unrecognized sequence header in {filepath}: {lines[0]!r}")
        kind, length = match.group(1), int(match.group(2))
        rows = [line for line in lines[1:] if not line.startswith('#')]
        if len(rows) != length:
            raise CorruptedFileError(
                f"Header declares P={length} but {filepath} holds {len(rows)} rows"
            )

        expected_columns = 2 if kind == "sequence" else 1
        try:
            values = np.array([[float(tok) for tok in row.split()] for row in rows], dtype=float)
        except ValueError as e:
            raise CorruptedFileError(f"Non-numeric row in {filepath}: {e}")
        if values.ndim != 2 or values.shape[1] != expected_columns:
            raise CorruptedFileError(f"Expected {expected_columns} column(s) per row in {filepath}")

        try:
            if kind == "sequence":
                sequence = Sequence(values[:, 0] + 1j * values[:, 1])
            else:
                sequence = Sequence.from_phases(values[:, 0])
        except ValidationError as e:
            raise ParseError(f"Invalid sequence in {filepath}: {e}")

        self._log_info(f"Read {kind} file {filepath} (P={length})")
        return {
            'sequence': sequence,
            'length': length,
            'format': kind,
            'header': lines[0],
        }

    def read_sequence(self, filepath: Union[str, Path]) -> Sequence:
        return self.parse_file(filepath)['sequence']

    def write_sequence(self, z: Sequence, filepath: Union[str, Path]) -> Path:
        """Write z as one 're im' pair per line."""
        filepath = self.ensure_parent(filepath)
        digits = FILE_FORMATS["significant_digits"]
        lines = [FILE_FORMATS["sequence_header"].format(length=z.length)]
        lines.extend(f"{x.real:.{digits}g} {x.imag:.{digits}g}" for x in z.samples)
        filepath.write_text("\n".join(lines) + "\n")
        self._log_info(f"Wrote sequence file {filepath}")
        return filepath

    def write_phases(self, z: Sequence, filepath: Union[str, Path]) -> Path:
        """Write the phases of z in [0, 2*pi), one per line."""
        filepath = self.ensure_parent(filepath)
        digits = FILE_FORMATS["significant_digits"]
        lines = [FILE_FORMATS["phases_header"].format(length=z.length)]
        lines.extend(f"{phi:.{digits}g}" for phi in z.phases().phases)
        filepath.write_text("\n".join(lines) + "\n")
        return filepath


def read_sequence(filepath: Union[str, Path]) -> Sequence:
    """Read a sequence or phase file."""
    return SequenceParser().read_sequence(filepath)


def write_sequence(z: Sequence, filepath: Union[str, Path]) -> Path:
    return SequenceParser().write_sequence(z, filepath)


def write_phases(z: Sequence, filepath: Union[str, Path]) -> Path:
    return SequenceParser().write_phases(z, filepath)
