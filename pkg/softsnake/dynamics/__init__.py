"""Equations of motion: inertia, Coriolis, damping, conservative and actuation terms."""

from .eom import (
    EnergyBreakdown,
    EomTerms,
    actuation_vector,
    conservative_forces,
    coriolis_matrix,
    damping_matrix,
    eom_terms,
    forward_dynamics,
    inertia_matrix,
    mass_matrix_derivative,
    solve_inertia,
    total_energy,
)
from .quadrature import MassSamples, mass_samples

__all__ = [
    "EnergyBreakdown",
    "EomTerms",
    "actuation_vector",
    "conservative_forces",
    "coriolis_matrix",
    "damping_matrix",
    "eom_terms",
    "forward_dynamics",
    "inertia_matrix",
    "mass_matrix_derivative",
    "solve_inertia",
    "total_energy",
    "MassSamples",
    "mass_samples",
]
