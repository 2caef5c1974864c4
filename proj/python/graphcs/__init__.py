"""Sampling and sparse recovery of diffused graph signals."""

import json

from . import _core
from ._core import (
    AssumptionViolation,
    ConfigError,
    DegenerateInputError,
    ParameterError,
    analytic_mu_er,
    basis_pursuit,
    binary_diffusion,
    bound_t1_uniform,
    bound_t2_er,
    bound_t4_variable_density,
    cond_closed_form_rank1_shift,
    gamma_from_matrix,
    generate_graph,
    incoherence_mu,
    kappa,
    metropolis_matrix,
    sparse_spectrum,
    variable_density_plan,
)

__all__ = [
    "AssumptionViolation",
    "ConfigError",
    "DegenerateInputError",
    "ParameterError",
    "analytic_mu_er",
    "basis_pursuit",
    "binary_diffusion",
    "bound_t1_uniform",
    "bound_t2_er",
    "bound_t4_variable_density",
    "cond_closed_form_rank1_shift",
    "gamma_from_matrix",
    "generate_graph",
    "incoherence_mu",
    "kappa",
    "metropolis_matrix",
    "preset",
    "run_experiment",
    "sparse_spectrum",
    "variable_density_plan",
]


def preset(name, scale="desk", seed=0):
    """Preset experiment configurations as dictionaries."""
    return [json.loads(c) for c in _core.preset(name, scale, seed)]


def run_experiment(config):
    """Run a config dictionary; returns (csv_text, metadata dict)."""
    csv_text, meta = _core.run_experiment(json.dumps(config))
    return csv_text, json.loads(meta)
