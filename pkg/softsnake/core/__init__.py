"""Core types shared by every softsnake module."""

from .exceptions import (
    ConfigError,
    ConvergenceError,
    DivergenceError,
    InputDomainError,
    NumericalDegeneracyError,
    SoftSnakeError,
    StiffnessError,
    StorageError,
)
from .params import BAR, RobotParams
from .state import N_ACTUATED, N_BASE, N_DOF, JointState, SimState, check_lengths

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DivergenceError",
    "InputDomainError",
    "NumericalDegeneracyError",
    "SoftSnakeError",
    "StiffnessError",
    "StorageError",
    "BAR",
    "RobotParams",
    "N_ACTUATED",
    "N_BASE",
    "N_DOF",
    "JointState",
    "SimState",
    "check_lengths",
]
