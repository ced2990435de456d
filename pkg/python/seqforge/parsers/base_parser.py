"""
Base parser for seqforge file formats.

Defines the common interface for reading sequence files and result
tables, and the parse error hierarchy.

Author: seqforge developers
License: MIT
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, Any, Union
import logging

logger = logging.getLogger(__name__)


class BaseParser(ABC):
    """
    Base class for seqforge file parsers.

    Attributes:
        verbose: Log parsing details at INFO if True
    """

    def __init__(self, verbose: bool = False):
        """
        Initialize base parser.

        Args:
            verbose: Enable verbose output during parsing
        """
        self.verbose = verbose

    @abstractmethod
    def parse_file(self, filepath: Union[str, Path]) -> Dict[str, Any]:
        """
        Parse a file.

        Args:
            filepath: Path to the file

        Returns:
            Dict with parsed content and a 'format' key

        Raises:
            FileNotFoundError: File doesn't exist
            ParseError: Invalid or corrupted content
        """
        pass

    @staticmethod
    def ensure_parent(filepath: Union[str, Path]) -> Path:
        """Create the parent directory of filepath if needed."""
        filepath = Path(filepath)
        filepath.parent.mkdir(parents=True, exist_ok=True)
        return filepath

    def _log_info(self, message: str):
        """Log info message if verbose mode is enabled."""
        if self.verbose:
            logger.info(message)


class ParseError(Exception):
    """Exception raised when file parsing fails."""
    pass


class UnsupportedFormatError(ParseError):
    """Exception raised when file format is not supported."""
    pass


class CorruptedFileError(ParseError):
    """Exception raised when file appears to be corrupted."""
    pass
