"""Tensor-network LIOMs and entanglement growth for disordered XXZ chains."""

from ._core import (
    ArgumentError,
    CapacityError,
    ChainSpec,
    ContractError,
    Error,
    MeritReport,
    exact_entropy_trace,
    exact_liom,
    hamiltonian,
    merit,
    merit_split,
    neel_state,
    run_experiment,
    sample_fields,
    sigma_merit_analytic,
    tn_entropy_trace,
    tn_liom,
    trace_h_squared,
    von_neumann_entropy,
)

__all__ = [
    "ArgumentError",
    "CapacityError",
    "ChainSpec",
    "ContractError",
    "Error",
    "MeritReport",
    "exact_entropy_trace",
    "exact_liom",
    "hamiltonian",
    "merit",
    "merit_split",
    "neel_state",
    "run_experiment",
    "sample_fields",
    "sigma_merit_analytic",
    "tn_entropy_trace",
    "tn_liom",
    "trace_h_squared",
    "von_neumann_entropy",
]
