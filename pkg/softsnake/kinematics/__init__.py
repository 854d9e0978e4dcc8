"""Constant-curvature kinematics of the floating-base snake."""

from .arc import ArcParameters, arc_params, bending_coordinates
from .grid import SkinGrid, skin_grid
from .transforms import (
    Pose,
    base_rotation,
    chain_points,
    configuration_vector,
    full_htm,
    position_jacobian,
    radial_offsets,
    section_frame,
    section_htm,
    skin_htm,
    split_axial,
)

__all__ = [
    "ArcParameters",
    "arc_params",
    "bending_coordinates",
    "SkinGrid",
    "skin_grid",
    "Pose",
    "base_rotation",
    "chain_points",
    "configuration_vector",
    "full_htm",
    "position_jacobian",
    "radial_offsets",
    "section_frame",
    "section_htm",
    "skin_htm",
    "split_axial",
]
