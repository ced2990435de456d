"""
Tests for seqforge solvers module: FISL, baselines, SQUAREM and the stopping rule.

Author: seqforge developers
License: MIT
"""

import tracemalloc

import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from seqforge.core.sequence import Sequence, random_sequence, golomb_sequence
from seqforge.core.transforms import count_transforms
from seqforge.core.validators import ValidationError
from seqforge.harness.plan import AlgorithmSpec
from seqforge.metrics.correlation import autocorrelation_fft, isl, two_sided_objective
from seqforge.majorizer.bounds import bound_befft
from seqforge.majorizer.toeplitz import build_operator
from seqforge.solvers.acceleration import squarem_cycle, squarem_wrap
from seqforge.solvers.base_solver import (
    IterateState, IterationTrace, SolverConfig, objective, project_phase, reference_curvature,
    stop_check,
)
from seqforge.solvers.baselines import (
    CANSolver, ISLNewSolver, MISLSolver, solve_can, solve_islnew, solve_misl,
)
from seqforge.solvers.dispatch import SOLVERS, make_solver, solve
from seqforge.solvers.fisl import FISLSolver, fisl_step, solve_fisl

STRATEGIES = ["TR", "EI", "BEI", "BEFFT"]


class TestStopCheck:
    """Test the relative-change stopping rule."""

    def test_boundary_inclusive(self):
        assert stop_check(100, 99.999, 1e-5)

    def test_above_tolerance(self):
        assert not stop_check(100, 99.99, 1e-5)

    def test_denominator_clamp(self):
        assert stop_check(0.5, 0.5 - 4e-6, 1e-5)
        assert not stop_check(0.5, 0.5 - 4e-5, 1e-5)

    def test_increase_counts(self):
        assert not stop_check(100, 100.01, 1e-5)

    def test_invalid_tolerance(self):
        with pytest.raises(ValidationError):
            stop_check(1, 1, 0)

    def test_boundary_slack_is_tiny(self):
        # rounding slack covers decimal ties only
        assert stop_check(100, 100 - 1e-3 * (1 + 1e-12), 1e-5)
        assert not stop_check(100, 100 - 1e-3 * (1 + 1e-6), 1e-5)


class TestSolverConfig:
    """Test solver settings validation."""

    def test_defaults(self):
        config = SolverConfig()
        assert config.algorithm == "FISL"
        assert config.bound_strategy == "BEFFT"
        assert config.tolerance == 1e-5
        assert config.max_iterations == 100000
        assert config.accelerate is False
        assert config.scaled_stop is True

    def test_labels(self):
        assert SolverConfig(bound_strategy="ei").label == "FISL-EI"
        assert SolverConfig(algorithm="misl", accelerate=True).label == "ACC-MISL"
        assert SolverConfig(algorithm="isl_new").label == "ISL-NEW"
        assert SolverConfig(algorithm="isl_new", accelerate=True).label == "ACC-ISL-NEW"
        # accelerate is ignored outside MISL and ISL_NEW
        assert SolverConfig(algorithm="can", accelerate=True).label == "CAN"

    @pytest.mark.parametrize("kwargs", [
        {"tolerance": 0},
        {"tolerance": -1e-5},
        {"max_iterations": 0},
        {"max_iterations": 2.5},
        {"seed": -1},
        {"algorithm": "admm"},
        {"bound_strategy": "power"},
        {"accelerate": "yes"},
        {"scaled_stop": 1},
    ])
    def test_invalid_settings(self, kwargs):
        with pytest.raises(ValidationError):
            SolverConfig(**kwargs)

    def test_dict_roundtrip(self):
        config = SolverConfig(algorithm="MISL", accelerate=True, tolerance=1e-6)
        assert SolverConfig.from_dict(config.to_dict()) == config

    def test_unknown_key(self):
        with pytest.raises(ValidationError, match="unknown solver settings"):
            SolverConfig.from_dict({"algorithm": "FISL", "momentum": 0.9})


class TestProjection:
    """Test elementwise phase projection."""

    def test_projects_to_unit_circle(self):
        z, zeros = project_phase(np.array([3.0, -2j, 1 + 1j]), np.ones(3, dtype=complex))
        assert zeros == 0
        assert_allclose(z, [1, -1j, (1 + 1j) / np.sqrt(2)], atol=1e-15)

    def test_zero_keeps_previous(self):
        z, zeros = project_phase(np.array([0.0, 2j]), np.array([1j, 1.0]))
        assert zeros == 1
        assert_allclose(z, [1j, 1j])


class TestFISLStep:
    """Test a single FISL iteration."""

    def test_single_element_fixed_point(self):
        z = Sequence([1j])
        z_next, m = fisl_step(z, "TR")
        assert m == 8.0
        assert_allclose(z_next.samples, [1j], atol=1e-15)

    def test_ones_fixed_point(self, ones2):
        z_next, m = fisl_step(ones2, "BEFFT")
        assert m == pytest.approx(24.0, abs=1e-12)
        assert_allclose(z_next.samples, [1, 1], atol=1e-12)
        assert two_sided_objective(autocorrelation_fft(z_next)) == pytest.approx(6.0)

    @pytest.mark.parametrize("strategy", STRATEGIES)
    def test_descent(self, strategy):
        for seed in range(10):
            z = random_sequence(16, seed)
            z_next, _ = fisl_step(z, strategy)
            before = two_sided_objective(autocorrelation_fft(z))
            after = two_sided_objective(autocorrelation_fft(z_next))
            assert after <= before + 1e-9

    @pytest.mark.parametrize("strategy", ["TR", "BEI", "BEFFT"])
    def test_transform_budget(self, strategy, random16):
        with count_transforms() as counter:
            fisl_step(random16, strategy)
        assert (counter.forward, counter.inverse) == (3, 2)

    def test_ei_budget_adds_power_iteration(self, random16):
        with count_transforms() as counter:
            fisl_step(random16, "EI")
        assert counter.forward > 3
        assert counter.forward - counter.inverse == 1


class TestSolveFISL:
    """Test the FISL solve loop."""

    @pytest.mark.parametrize("strategy", ["TR", "BEI", "BEFFT"])
    def test_solve_transform_budget(self, strategy, random16):
        config = SolverConfig(bound_strategy=strategy, tolerance=1e-12, max_iterations=10)
        with count_transforms() as counter:
            result = solve_fisl(random16, config)
        k = result.iterations
        assert (counter.forward, counter.inverse) == (1 + 3 * k, 1 + 2 * k)

    def test_descends_from_random(self, random100, quick_config):
        result = solve_fisl(random100, quick_config)
        assert result.final_isl < result.initial_isl
        assert result.final_isl < isl(autocorrelation_fft(random100))

    def test_final_isl_consistent(self, random100, quick_config):
        result = solve_fisl(random100, quick_config)
        assert result.final_isl == pytest.approx(isl(autocorrelation_fft(result.sequence)), rel=1e-9)
        assert result.final_psl == pytest.approx(
            np.max(np.abs(autocorrelation_fft(result.sequence).sidelobes)), rel=1e-12)

    @pytest.mark.parametrize("strategy", STRATEGIES)
    def test_monotone_trace(self, strategy):
        config = SolverConfig(bound_strategy=strategy, tolerance=1e-6, max_iterations=300)
        for seed in range(5):
            result = solve_fisl(random_sequence(16, seed), config)
            assert result.trace.is_monotone()

    @pytest.mark.parametrize("strategy", STRATEGIES)
    def test_feasibility(self, strategy, random16, recorder):
        config = SolverConfig(bound_strategy=strategy, tolerance=1e-8, max_iterations=200)
        result = solve_fisl(random16, config, callback=recorder)
        assert recorder.calls == result.iterations
        assert recorder.iterations == list(range(1, result.iterations + 1))
        assert recorder.max_deviation <= 1e-12

    def test_deterministic(self, random100, quick_config):
        a = solve_fisl(random100, quick_config)
        b = solve_fisl(random100, quick_config)
        assert_array_equal(a.trace.isl_values(), b.trace.isl_values())
        assert_array_equal(a.sequence.samples, b.sequence.samples)

    def test_refeed_stops_at_first_iteration(self):
        config = SolverConfig(tolerance=1e-5)
        first = solve_fisl(golomb_sequence(64), config)
        assert first.stop_reason == "converged"
        second = solve_fisl(first.sequence, config)
        assert second.iterations == 1
        assert second.stop_reason == "converged"

    def test_single_element(self):
        result = solve_fisl(Sequence([1]), SolverConfig(bound_strategy="TR"))
        assert result.iterations == 1
        assert result.final_isl == 0.0
        assert result.final_psl is None

    def test_max_iterations(self, random100):
        config = SolverConfig(tolerance=1e-12, max_iterations=3)
        result = solve_fisl(random100, config)
        assert result.stop_reason == "max_iterations"
        assert result.iterations == 3
        assert len(result.trace) == 4

    def test_trace_layout(self, random16, quick_config):
        result = solve_fisl(random16, quick_config)
        df = result.trace.to_dataframe()
        assert list(df.columns) == ["iter", "isl", "elapsed_s", "bound_m"]
        assert df["iter"].tolist() == list(range(result.iterations + 1))
        assert pd.isna(df.loc[0, "bound_m"])
        assert (df["bound_m"].iloc[1:] > 0).all()
        assert np.all(np.diff(result.trace.elapsed_values()) >= 0)

    def test_accepts_array(self, random16, quick_config):
        result = solve_fisl(random16.samples, quick_config)
        assert isinstance(result.sequence, Sequence)

    def test_stationary_at_tight_tolerance(self):
        config = SolverConfig(tolerance=1e-10, max_iterations=50000)
        result = solve_fisl(random_sequence(16, seed=1), config)
        assert result.stop_reason == "converged"
        z_next, _ = fisl_step(result.sequence, "BEFFT")
        assert np.max(np.abs(z_next.samples - result.sequence.samples)) <= 1e-5

    def test_rejects_other_algorithm(self):
        with pytest.raises(ValidationError):
            FISLSolver(SolverConfig(algorithm="CAN"))


class TestEmptyTrace:
    """Edge cases of IterationTrace."""

    def test_empty(self):
        trace = IterationTrace()
        assert trace.iterations == 0
        assert trace.is_monotone()
        assert len(trace.to_dataframe()) == 0

    def test_non_monotone_detected(self):
        trace = IterationTrace()
        trace.append(0, 10.0, 0.0)
        trace.append(1, 11.0, 0.1)
        assert not trace.is_monotone()


class TestScaledStop:
    """Test the curvature-scaled stopping tolerance."""

    def test_reference_is_befft(self, random16):
        state = IterateState(random16.samples)
        m = bound_befft(build_operator(state.correlation)).m_scalar
        assert reference_curvature(state.spectrum) == pytest.approx(m, rel=1e-9)

    def test_befft_keeps_plain_tolerance(self, random16):
        solver = FISLSolver(SolverConfig(tolerance=1e-5))
        state = IterateState(random16.samples)
        m = reference_curvature(state.spectrum)
        assert solver.effective_tolerance(state, m) == pytest.approx(1e-5, rel=1e-12)

    def test_loose_curvatures_tighten(self, random16):
        state = IterateState(random16.samples)
        fisl = FISLSolver(SolverConfig(bound_strategy="TR", tolerance=1e-5))
        assert fisl.effective_tolerance(state, 8.0 * 16 ** 2) < 1e-5
        misl = MISLSolver(SolverConfig(algorithm="MISL", tolerance=1e-5))
        assert misl.curvature(state, None) >= reference_curvature(state.spectrum)
        assert misl.effective_tolerance(state, misl.curvature(state, None)) <= 1e-5

    def test_disabled(self, random16):
        solver = FISLSolver(SolverConfig(bound_strategy="TR", tolerance=1e-5, scaled_stop=False))
        state = IterateState(random16.samples)
        assert solver.effective_tolerance(state, 8.0 * 16 ** 2) == 1e-5

    def test_can_has_no_curvature(self, random16):
        solver = CANSolver(SolverConfig(algorithm="CAN", tolerance=1e-5))
        state = IterateState(random16.samples)
        assert solver.step(state).curvature is None
        assert solver.effective_tolerance(state, None) == 1e-5

    def test_tr_runs_no_shorter_than_raw_rule(self):
        z0 = random_sequence(16, seed=4)
        scaled = solve_fisl(z0, SolverConfig(bound_strategy="TR", max_iterations=20000))
        raw = solve_fisl(z0, SolverConfig(bound_strategy="TR", max_iterations=20000, scaled_stop=False))
        # same trajectory, tighter tolerance on every step
        assert_array_equal(scaled.trace.isl_values()[:len(raw.trace)], raw.trace.isl_values())
        assert scaled.iterations >= raw.iterations
        assert scaled.final_isl <= raw.final_isl

    def test_raw_rule_holds_at_exit(self, random16):
        config = SolverConfig(bound_strategy="TR", tolerance=1e-5, scaled_stop=False)
        result = solve_fisl(random16, config)
        assert result.stop_reason == "converged"
        values = result.trace.isl_values()
        assert stop_check(values[-2], values[-1], 1e-5)
        assert not stop_check(values[-3], values[-2], 1e-5)


class TestBaselines:
    """Test CAN, MISL and ISL-NEW."""

    def test_can_flat_spectrum_fixed_point(self):
        result = solve_can(Sequence([1j]))
        assert result.iterations == 1
        assert_allclose(result.sequence.samples, [1j], atol=1e-15)

    def test_can_unimodular_output(self, random100, recorder):
        config = SolverConfig(algorithm="CAN", tolerance=1e-4, max_iterations=2000)
        result = solve_can(random100, config, callback=recorder)
        assert recorder.max_deviation <= 1e-12
        assert result.final_isl < result.initial_isl

    @pytest.mark.parametrize("solver", [solve_misl, solve_islnew])
    def test_single_element(self, solver):
        result = solver(Sequence([-1]))
        assert result.iterations == 1
        assert_allclose(result.sequence.samples, [-1], atol=1e-15)

    @pytest.mark.parametrize("algorithm", ["MISL", "ISL_NEW"])
    def test_monotone(self, algorithm):
        config = SolverConfig(algorithm=algorithm, tolerance=1e-6, max_iterations=500)
        for seed in range(5):
            result = solve(random_sequence(16, seed), config)
            assert result.trace.is_monotone()

    @pytest.mark.parametrize("algorithm", ["MISL", "ISL_NEW"])
    def test_accelerated_feasibility(self, algorithm, random16, recorder):
        config = SolverConfig(algorithm=algorithm, accelerate=True, tolerance=1e-6, max_iterations=300)
        solve(random16, config, callback=recorder)
        assert recorder.max_deviation <= 1e-12

    def test_solver_weights(self):
        assert (MISLSolver.peak_weight, MISLSolver.length_weight) == (1.0, 1.0)
        assert (ISLNewSolver.peak_weight, ISLNewSolver.length_weight) == (0.5, 0.5)

    def test_config_mismatch(self, random16):
        with pytest.raises(ValidationError):
            solve_misl(random16, SolverConfig(algorithm="FISL"))
        with pytest.raises(ValidationError):
            solve_can(random16, SolverConfig(algorithm="MISL"))

    def test_accelerated_progress_uses_plain_step(self, random16):
        solver = MISLSolver(SolverConfig(algorithm="MISL", accelerate=True))
        state = IterateState(random16.samples)
        outcome = solver.step(state)
        assert outcome.progress_isl == pytest.approx(IterateState(solver.base_step(state.z)).isl, rel=1e-12)
        assert outcome.curvature == solver.curvature(state, None)

    def test_rejected_extrapolation_is_not_convergence(self, random16, mocker):
        # every SQUAREM cycle hands back its start point
        mocker.patch("seqforge.solvers.baselines.squarem_cycle",
                     side_effect=lambda step, x0, x1, x2: x0)
        config = SolverConfig(algorithm="MISL", accelerate=True, max_iterations=5)
        result = solve_misl(random16, config)
        assert result.stop_reason == "max_iterations"
        assert result.final_isl == pytest.approx(result.initial_isl)

    @pytest.mark.slow
    def test_paired_destinations(self):
        z0 = random_sequence(100, seed=5)
        fisl = solve_fisl(z0, SolverConfig())
        for algorithm in ("MISL", "ISL_NEW"):
            for accelerate in (False, True):
                config = SolverConfig(algorithm=algorithm, accelerate=accelerate, max_iterations=10 ** 6)
                result = solve(z0, config)
                assert abs(result.final_isl - fisl.final_isl) / fisl.final_isl <= 0.05, config.label

    @pytest.mark.slow
    def test_islnew_needs_no_more_iterations_than_misl(self, golomb100):
        misl = solve_misl(golomb100, SolverConfig(algorithm="MISL", max_iterations=10 ** 6))
        islnew = solve_islnew(golomb100, SolverConfig(algorithm="ISL_NEW", max_iterations=10 ** 6))
        assert islnew.iterations <= misl.iterations


class TestSquarem:
    """Test the SQUAREM wrapper."""

    def test_fixed_point_returns_input(self, random16):
        out = squarem_wrap(lambda x: x, random16)
        assert isinstance(out, Sequence)
        assert out == random16

    def test_array_in_array_out(self, random16):
        out = squarem_wrap(lambda x: x, random16.samples)
        assert isinstance(out, np.ndarray)

    def test_never_worse_than_two_steps(self):
        solver = MISLSolver(SolverConfig(algorithm="MISL"))
        for seed in range(5):
            z = random_sequence(32, seed).samples
            plain = solver.base_step(solver.base_step(z))
            accelerated = squarem_wrap(solver.base_step, z)
            assert np.max(np.abs(np.abs(accelerated) - 1)) <= 1e-12
            assert objective(accelerated) <= objective(plain)

    def test_last_try_is_plain_step(self):
        solver = MISLSolver(SolverConfig(algorithm="MISL"))
        x0 = random_sequence(32, seed=1).samples
        x1 = solver.base_step(x0)
        x2 = solver.base_step(x1)
        # alpha = -1 maps the extrapolation back onto x2
        out = squarem_cycle(solver.base_step, x0, x1, x2, max_backtracks=0)
        assert_allclose(out, solver.base_step(x2), atol=1e-12)

    def test_all_rejected_returns_second_step(self):
        # a slow phase drift gives a long extrapolation steplength
        x0 = golomb_sequence(16).samples
        x1 = x0 * np.exp(0.01j)
        x2 = x0 * np.exp(0.02j)
        worse = np.ones(16, dtype=complex)
        calls = []

        def step(x):
            calls.append(x)
            return worse

        out = squarem_cycle(step, x0, x1, x2, max_backtracks=3)
        assert_array_equal(out, x2)
        assert len(calls) == 4

    @pytest.mark.slow
    @pytest.mark.parametrize("algorithm", ["MISL", "ISL_NEW"])
    def test_fewer_iterations(self, algorithm):
        z0 = random_sequence(100, seed=9)
        plain = solve(z0, SolverConfig(algorithm=algorithm, max_iterations=10 ** 6))
        fast = solve(z0, SolverConfig(algorithm=algorithm, accelerate=True, max_iterations=10 ** 6))
        assert fast.iterations < plain.iterations


class TestDispatch:
    """Test solver dispatch by name."""

    def test_registry(self):
        assert set(SOLVERS) == {"FISL", "CAN", "MISL", "ISL_NEW"}
        assert isinstance(make_solver(SolverConfig(algorithm="CAN")), CANSolver)
        assert isinstance(make_solver(SolverConfig(algorithm="isl-new")), ISLNewSolver)

    def test_solve_default_is_fisl(self, random16):
        result = solve(random16, SolverConfig(tolerance=1e-4, max_iterations=100))
        assert result.config.label == "FISL-BEFFT"


@pytest.mark.slow
class TestStrategyAgreement:
    """All four bound strategies reach the same destination."""

    def test_final_isl_within_one_percent(self):
        z0 = random_sequence(100, seed=2)
        finals = [solve_fisl(z0, SolverConfig(bound_strategy=s, max_iterations=10 ** 6)).final_isl
                  for s in STRATEGIES]
        assert (max(finals) - min(finals)) / min(finals) <= 0.01

    @pytest.mark.parametrize("P", [16, 100])
    @pytest.mark.parametrize("label", [
        "FISL-TR", "FISL-EI", "FISL-BEI", "FISL-BEFFT", "MISL", "ISL_NEW", "ACC-MISL", "ACC-ISL_NEW",
    ])
    def test_monotone_over_random_starts(self, P, label):
        config = AlgorithmSpec.parse(label).to_config(tolerance=1e-5, max_iterations=300)
        for seed in range(30):
            result = solve(random_sequence(P, seed), config)
            assert result.trace.is_monotone(slack=1e-9), f"{label} seed={seed}"

    def test_memory_scales_linearly(self):
        peaks = {}
        for P in (100, 1225):
            z0 = random_sequence(P, seed=0)
            tracemalloc.start()
            solve_fisl(z0, SolverConfig(tolerance=1e-12, max_iterations=5))
            _, peaks[P] = tracemalloc.get_traced_memory()
            tracemalloc.stop()
        # a P x P complex allocation would grow the peak 150-fold
        assert peaks[1225] / peaks[100] < 40
