"""
seqforge test suite.

Author: seqforge developers
License: MIT
"""
