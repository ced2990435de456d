"""
Pytest configuration and shared fixtures for seqforge tests.

Author: seqforge developers
License: MIT
"""

import logging

import numpy as np
import pytest

from seqforge.core.sequence import Sequence, random_sequence, golomb_sequence, frank_sequence
from seqforge.metrics.correlation import autocorrelation_fft
from seqforge.solvers.base_solver import SolverConfig

# Configure logging for tests
logging.basicConfig(level=logging.WARNING)


@pytest.fixture
def ones2():
    """z = [1, 1]; r = [2, 1]; R = [[2, 1], [1, 2]]."""
    return Sequence([1, 1])


@pytest.fixture
def frank4():
    """Frank sequence of length 4: [1, 1, 1, -1]."""
    return frank_sequence(4)


@pytest.fixture
def random16():
    return random_sequence(16, seed=3)


@pytest.fixture
def random100():
    return random_sequence(100, seed=7)


@pytest.fixture
def golomb100():
    return golomb_sequence(100)


@pytest.fixture
def random_profile():
    """Autocorrelation of a random length-64 sequence."""
    return autocorrelation_fft(random_sequence(64, seed=11))


@pytest.fixture
def fisl_config():
    return SolverConfig(algorithm="FISL", bound_strategy="BEFFT")


@pytest.fixture
def quick_config():
    """Loose tolerance and a small iteration cap for fast solver tests."""
    return SolverConfig(algorithm="FISL", bound_strategy="BEFFT", tolerance=1e-4, max_iterations=2000)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


class UnimodularRecorder:
    """Solver callback recording the largest | |z_n| - 1 | seen."""

    def __init__(self):
        self.calls = 0
        self.max_deviation = 0.0
        self.iterations = []

    def __call__(self, iteration, z):
        self.calls += 1
        self.iterations.append(iteration)
        self.max_deviation = max(self.max_deviation, float(np.max(np.abs(np.abs(z.samples) - 1.0))))


@pytest.fixture
def recorder():
    return UnimodularRecorder()
