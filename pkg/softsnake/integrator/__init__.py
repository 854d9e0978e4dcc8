"""Stiff time integration of the equations of motion."""

from .config import IntegrationMethod, IntegratorConfig, StiffSolver
from .simulate import Trajectory, integrate, output_times, rhs
from .solvers import ImplicitAdaptiveStepper, SemiImplicitStepper, Stepper, make_stepper
from .system import DynamicsSystem, IntegrationStats

__all__ = [
    "IntegrationMethod",
    "IntegratorConfig",
    "StiffSolver",
    "Trajectory",
    "integrate",
    "output_times",
    "rhs",
    "ImplicitAdaptiveStepper",
    "SemiImplicitStepper",
    "Stepper",
    "make_stepper",
    "DynamicsSystem",
    "IntegrationStats",
]
