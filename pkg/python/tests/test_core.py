"""
Tests for seqforge core module: validation, sequences, transforms.

Author: seqforge developers
License: MIT
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from seqforge.core.validators import (
    ValidationError, InvalidLengthError, UnsupportedLengthError,
    validate_input, validate_length, validate_algorithm, validate_strategy, is_perfect_square,
)
from seqforge.core.sequence import (
    Sequence, PhaseVector, random_sequence, golomb_sequence, frank_sequence,
    make_initial_sequence, max_modulus_error,
)
from seqforge.core.transforms import (
    Spectrum, forward_transform_2p, inverse_transform_2p, zero_pad, count_transforms,
)


class TestValidators:
    """Test input validation helpers."""

    def test_validate_input_passes(self):
        assert validate_input(1e-5, "tolerance", positive=True) == 1e-5
        assert validate_input(3.0, "n", integer=True) == 3
        assert isinstance(validate_input(3.0, "n", integer=True), int)

    @pytest.mark.parametrize("value, kwargs", [
        (0, {"positive": True}),
        (2.5, {"integer": True}),
        (np.nan, {}),
        (-1, {"min_val": 0}),
        (11, {"max_val": 10}),
        ("abc", {}),
        (True, {}),
    ])
    def test_validate_input_rejects(self, value, kwargs):
        with pytest.raises(ValidationError):
            validate_input(value, "x", **kwargs)

    def test_validate_length(self):
        assert validate_length(5) == 5
        with pytest.raises(InvalidLengthError):
            validate_length(0)
        # InvalidLengthError is a ValidationError and a ValueError
        with pytest.raises(ValueError):
            validate_length(-3)

    def test_names_normalized(self):
        assert validate_algorithm("islnew") == "ISL_NEW"
        assert validate_algorithm("isl-new") == "ISL_NEW"
        assert validate_algorithm("fisl") == "FISL"
        assert validate_strategy("befft") == "BEFFT"
        with pytest.raises(ValidationError):
            validate_algorithm("admm")
        with pytest.raises(ValidationError):
            validate_strategy("xyz")

    def test_perfect_square(self):
        assert [P for P in range(1, 30) if is_perfect_square(P)] == [1, 4, 9, 16, 25]
        assert is_perfect_square(1225)


class TestSequence:
    """Test the Sequence and PhaseVector value types."""

    def test_construction_and_immutability(self):
        z = Sequence([1, 1j, -1j, -1])
        assert z.length == 4
        assert len(z) == 4
        with pytest.raises(ValueError):
            z.samples[0] = 2

    def test_rejects_non_unimodular(self):
        with pytest.raises(ValidationError):
            Sequence([1, 0.5])

    def test_rejects_empty(self):
        with pytest.raises(InvalidLengthError):
            Sequence([])

    def test_rejects_2d(self):
        with pytest.raises(InvalidLengthError):
            Sequence([[1, 1], [1, 1]])

    def test_phase_roundtrip(self, rng):
        for P in (1, 7, 64):
            z = Sequence(np.exp(2j * np.pi * rng.random(P)))
            phases = z.phases()
            assert np.all(phases.phases >= 0) and np.all(phases.phases < 2 * np.pi)
            assert_allclose(phases.to_sequence().samples, z.samples, rtol=0, atol=1e-12)
            assert_allclose(PhaseVector(phases.phases).phases, phases.phases, atol=1e-12)

    def test_phase_vector_wraps(self):
        pv = PhaseVector([-np.pi / 2, 2 * np.pi, 5 * np.pi])
        assert_allclose(pv.phases, [3 * np.pi / 2, 0.0, np.pi], atol=1e-12)

    def test_equality(self):
        assert Sequence([1, 1j]) == Sequence([1, 1j])
        assert Sequence([1, 1j]) != Sequence([1, -1j])


class TestInitializers:
    """Test random, Golomb and Frank initializers."""

    def test_random_single(self):
        z = random_sequence(1, seed=5)
        assert z.length == 1
        assert abs(abs(z.samples[0]) - 1) <= 1e-12

    def test_random_deterministic(self):
        a = random_sequence(100, seed=7)
        b = random_sequence(100, seed=7)
        assert_array_equal(a.samples, b.samples)
        assert_array_equal(a.phases().phases, b.phases().phases)

    def test_random_seed_dependent(self):
        a = random_sequence(100, seed=7)
        b = random_sequence(100, seed=8)
        assert np.any(a.samples != b.samples)

    def test_random_uses_pcg64_stream(self):
        theta = np.random.default_rng(42).random(10)
        assert_allclose(random_sequence(10, seed=42).samples, np.exp(2j * np.pi * theta), atol=1e-15)

    def test_random_zero_length(self):
        with pytest.raises(InvalidLengthError):
            random_sequence(0, seed=1)

    def test_golomb_examples(self):
        assert_allclose(golomb_sequence(1).samples, [1], atol=1e-15)
        assert_allclose(golomb_sequence(4).samples, [1, 1j, -1j, -1], atol=1e-12)
        z = golomb_sequence(100)
        assert z.samples[0] == 1
        assert max_modulus_error(z) <= 1e-12

    def test_golomb_zero_length(self):
        with pytest.raises(InvalidLengthError):
            golomb_sequence(0)

    def test_frank_examples(self):
        assert_allclose(frank_sequence(1).samples, [1], atol=1e-15)
        assert_allclose(frank_sequence(4).samples, [1, 1, 1, -1], atol=1e-12)

    def test_frank_phase_grid(self):
        M = 3
        z = frank_sequence(M * M)
        expected = [np.exp(2j * np.pi / M * p * q) for p in range(M) for q in range(M)]
        assert_allclose(z.samples, expected, atol=1e-12)

    def test_frank_non_square(self):
        with pytest.raises(UnsupportedLengthError, match="perfect-square"):
            frank_sequence(5)

    @pytest.mark.parametrize("P", [1, 2, 17, 100, 1225])
    def test_unit_modulus(self, P):
        for z in (random_sequence(P, 0), golomb_sequence(P)):
            assert max_modulus_error(z) <= 1e-12

    def test_make_initial_sequence(self):
        assert make_initial_sequence("golomb", 8) == golomb_sequence(8)
        assert make_initial_sequence("random", 8, seed=3) == random_sequence(8, 3)
        with pytest.raises(ValidationError):
            make_initial_sequence("chu", 8)


class TestTransforms:
    """Test the length-2P transform contract."""

    def test_forward_examples(self):
        assert_allclose(forward_transform_2p(Sequence([1, 1])).bins, [2, 1 - 1j, 0, 1 + 1j], atol=1e-12)
        assert_allclose(forward_transform_2p(Sequence([1])).bins, [1, 1], atol=1e-12)

    def test_spectrum_length(self):
        s = forward_transform_2p(random_sequence(9, 0))
        assert len(s) == 18
        assert s.sequence_length == 9

    def test_inverse_examples(self):
        assert_allclose(inverse_transform_2p(Spectrum([2, 0, 2, 0])), [1, 0, 1, 0], atol=1e-12)
        assert_allclose(inverse_transform_2p(forward_transform_2p(Sequence([1, 1]))), [1, 1, 0, 0], atol=1e-12)
        assert_array_equal(inverse_transform_2p(np.zeros(4)), np.zeros(4))

    def test_inverse_odd_length(self):
        with pytest.raises(InvalidLengthError):
            inverse_transform_2p(np.ones(3))
        with pytest.raises(InvalidLengthError):
            Spectrum([1])

    def test_roundtrip_corpus(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            P = int(rng.integers(1, 65))
            z = Sequence(np.exp(2j * np.pi * rng.random(P)))
            restored = inverse_transform_2p(forward_transform_2p(z))
            assert np.max(np.abs(restored - zero_pad(z.samples))) <= 1e-12 * P

    def test_parseval(self):
        for P in (1, 5, 64, 225):
            z = random_sequence(P, seed=P)
            energy = np.sum(np.abs(forward_transform_2p(z).bins) ** 2)
            assert_allclose(energy, 2 * P * P, rtol=1e-9)

    def test_transform_counter(self):
        z = random_sequence(8, 1)
        with count_transforms() as counter:
            inverse_transform_2p(forward_transform_2p(z))
            forward_transform_2p(z)
        assert (counter.forward, counter.inverse) == (2, 1)

    def test_counter_is_scoped(self):
        z = random_sequence(8, 1)
        with count_transforms() as outer:
            forward_transform_2p(z)
            with count_transforms() as inner:
                forward_transform_2p(z)
            forward_transform_2p(z)
        assert inner.forward == 1
        assert outer.forward == 2
