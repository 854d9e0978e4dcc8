"""Gait generation: rolling trajectories, pressure mapping and inverse kinematics."""

from .ik import backbone_samples, ik_fit
from .pressure import length_to_pressure, pressure_to_length
from .rolling import (
    GaitController,
    GaitKind,
    GaitSpec,
    JointTrajectory,
    build_trajectory,
    gait_pressures,
    rolling_lengths,
)

__all__ = [
    "backbone_samples",
    "ik_fit",
    "length_to_pressure",
    "pressure_to_length",
    "GaitController",
    "GaitKind",
    "GaitSpec",
    "JointTrajectory",
    "build_trajectory",
    "gait_pressures",
    "rolling_lengths",
]
