"""
Numerical constants and default settings for unimodular sequence design.

Dimensionless throughout. Tolerances, solver defaults, experiment grids
and file-format identifiers shared by every seqforge module.

Author: seqforge developers
License: MIT
"""

from typing import Dict, Any, Tuple

# Numerical tolerances
NUMERICAL_TOLERANCES: Dict[str, float] = {
    "unit_modulus": 1e-12,          # max | |z_n| - 1 | for a valid Sequence
    "phase_roundtrip": 1e-12,       # PhaseVector <-> Sequence per element
    "spectrum_imag_per_length": 1e-9,  # |Im s_k| <= this * P for a Toeplitz symbol
    "zero_magnitude": 0.0,          # projection treats |a_n| <= this as zero
    "db_floor": -320.0,             # dB value written for exact-zero sidelobes
    "descent_slack": 1e-9,          # relative slack for monotone ISL checks
}

# Solver defaults
SOLVER_DEFAULTS: Dict[str, Any] = {
    "tolerance": 1e-5,              # relative ISL change for the stopping rule
    "max_iterations": 100000,       # hard cap on iterations per solve
    "seed": 0,                      # seed used where a solver needs randomness
    "log_every": 0,                 # DEBUG line every N iterations (0 = never)
    "scaled_stop": True,            # tolerance scaled by BEFFT curvature / solver curvature

    # Power iteration for the EI bound
    "power_tol": 1e-8,              # relative Rayleigh quotient / residual tolerance
    "power_max_iters_factor": 10,   # max_iters = factor * P
    "power_perturbation": 1e-3,     # scale of the seeded start-vector perturbation
    "power_seed": 0,                # seed of the start-vector perturbation
    "power_inflation": 10,          # converged EI estimate is scaled by (1 + inflation * tol)

    # SQUAREM
    "squarem_alpha_max": -1.0,      # steplength is clamped to alpha <= this
    "squarem_backtracks": 3,        # steplength halvings toward alpha_max before the last try
}

# Experiment grid
FULL_LENGTHS: Tuple[int, ...] = (100, 225, 400, 625, 900, 1225)
DESK_LENGTHS: Tuple[int, ...] = (100, 225)

HARNESS_DEFAULTS: Dict[str, Any] = {
    "lengths": FULL_LENGTHS,
    "desk_lengths": DESK_LENGTHS,
    "initializations": ("random", "golomb", "frank"),
    "random_trials": 30,            # Monte-Carlo trials for random initialization
    "desk_trials": 5,
    "deterministic_trials": 1,      # golomb / frank are seed independent
    "base_seed": 0,
    "workers": 1,
    "feasibility_full_check_max_length": 100,  # check every iteration up to this P
    "feasibility_sample_every": 100,           # otherwise every Nth iteration
    "dense_oracle_max_length": 4096,
}

# File formats
FILE_FORMATS: Dict[str, Any] = {
    "sequence_header": "# seqforge sequence P={length}",
    "phases_header": "# seqforge phases P={length}",
    "significant_digits": 17,
    "trace_columns": ("iter", "isl", "elapsed_s", "bound_m"),
    "profile_columns": ("lag", "re", "im", "abs", "db"),
    "bounds_columns": ("strategy", "m_scalar", "lambda_max_8R", "ratio"),
    "summary_columns": (
        "length", "init", "algorithm", "strategy", "trial", "iterations",
        "final_isl", "final_psl", "wall_seconds", "stop_reason",
    ),
    "summary_schema_version": 1,
}

# Algorithm and strategy names
ALGORITHMS: Tuple[str, ...] = ("FISL", "CAN", "MISL", "ISL_NEW")
BOUND_STRATEGIES: Tuple[str, ...] = ("TR", "EI", "BEI", "BEFFT")
STOP_REASONS: Tuple[str, ...] = ("converged", "max_iterations")
