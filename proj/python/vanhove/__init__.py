"""Thermal equilibrium structure of the source-coupled Bose field.

Closed-form expectation functionals in the grand canonical state, the
explicit time-automorphism group, infrared/condensate classifiers, and a
truncated-Fock-space oracle that validates the closed forms by direct trace
computation. The heavy lifting lives in the compiled `_core` module; this
package re-exports its surface.
"""

from ._core import (  # noqa: F401
    ConfigError,
    ContinuumFunction,
    ConvergenceError,
    Dispersion,
    DomainError,
    RadialProfile,
    cluster_diagnostic_continuum,
    condensate_prefactor,
    experiment_names,
    gc_expectation_weyl,
    ir_classify,
    ir_shell_integral,
    kms_residual_continuum,
    lattice_modes,
    mean_functional_continuum,
    q_nonzero_continuum,
    q_zero,
    relation_suite,
    resolvent_expectation_continuum,
    run_experiment,
    weyl_expectation_continuum,
    weyl_expectation_lattice,
)

__all__ = [
    "ConfigError",
    "ContinuumFunction",
    "ConvergenceError",
    "Dispersion",
    "DomainError",
    "RadialProfile",
    "cluster_diagnostic_continuum",
    "condensate_prefactor",
    "experiment_names",
    "gc_expectation_weyl",
    "ir_classify",
    "ir_shell_integral",
    "kms_residual_continuum",
    "lattice_modes",
    "mean_functional_continuum",
    "q_nonzero_continuum",
    "q_zero",
    "relation_suite",
    "resolvent_expectation_continuum",
    "run_experiment",
    "weyl_expectation_lattice",
    "weyl_expectation_continuum",
]
