"""Physical parameters of the three-section soft robotic snake."""

import math
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

BAR = 1.0e5  # Pa


class RobotParams(BaseModel):
    """Every physical constant of the robot, its actuators and the ground.

    Defaults describe the desk-scale prototype: three 0.15 m sections of three
    extension-mode PMAs each, 0.35 kg in total, on carpet.
    """

    model_config = {"frozen": True, "extra": "forbid"}

    n_sections: int = 3
    L0: float = Field(0.15, description="unactuated PMA length [m]")
    r_p: float = Field(0.0125, description="PMA mounting radius [m]")
    r_s: float = Field(0.03, description="skin radius [m]")
    d_rigid: float = Field(0.05, description="rigid inter-section spacer length [m]")
    m_total: float = Field(0.35, description="robot mass [kg]")
    mount_offset: float = Field(math.pi / 3, description="inter-section angular offset [rad]")
    dl_max: float = Field(0.075, description="maximum PMA extension [m]")
    K_elastic: float = Field(1900.0, description="PMA stiffness [N/m]")
    D_damp: float = Field(90.0, description="PMA damping [N s/m]")
    K_g: float = Field(1000.0, description="ground stiffness [N/m]")
    B_g: float = Field(130.0, description="ground damping [N s/m]")
    mu_x: float = Field(0.6, description="friction coefficient along world X")
    mu_y: float = Field(0.2, description="friction coefficient along world Y")
    g: float = Field(9.81, description="gravitational acceleration [m/s^2]")

    p_max: float = Field(4.0, description="rated PMA pressure [bar]")
    A_pma: Optional[float] = Field(
        None, description="PMA sectional area [m^2]; derived from static balance when omitted"
    )
    pressure_calibration: Optional[List[Tuple[float, float]]] = Field(
        None, description="(length change [m], pressure [bar]) table overriding the affine map"
    )
    gyration_radius: Optional[float] = Field(
        None, description="radius of the mass ring carrying each slice [m]; r_s/sqrt(2) when omitted"
    )
    v_eps: float = Field(1.0e-3, description="friction regularization velocity [m/s]")
    eps_straight: float = Field(1.0e-6, description="curvature below which a section is straight [1/m]")
    quadrature_nodes: int = Field(11, description="Gauss-Legendre nodes per section")

    @field_validator("n_sections")
    @classmethod
    def validate_sections(cls, v):
        if v != 3:
            raise ValueError("the snake model has exactly three sections")
        return v

    @field_validator("L0", "r_p", "r_s", "d_rigid", "m_total", "dl_max", "K_elastic", "K_g",
                     "p_max", "v_eps", "eps_straight")
    @classmethod
    def validate_positive(cls, v, info):
        if not v > 0:
            raise ValueError(f"{info.field_name} must be strictly positive")
        return v

    @field_validator("D_damp", "B_g", "mu_x", "mu_y", "g")
    @classmethod
    def validate_non_negative(cls, v, info):
        if v < 0:
            raise ValueError(f"{info.field_name} must be non-negative")
        return v

    @field_validator("A_pma", "gyration_radius")
    @classmethod
    def validate_optional_positive(cls, v, info):
        if v is not None and v < 0:
            raise ValueError(f"{info.field_name} must be non-negative")
        return v

    @field_validator("quadrature_nodes")
    @classmethod
    def validate_nodes(cls, v):
        if v < 2:
            raise ValueError("at least two quadrature nodes per section are required")
        return v

    @field_validator("pressure_calibration")
    @classmethod
    def validate_calibration(cls, v):
        if v is None:
            return v
        if len(v) < 2:
            raise ValueError("a calibration table needs at least two rows")
        lengths = [row[0] for row in v]
        pressures = [row[1] for row in v]
        if any(b <= a for a, b in zip(lengths, lengths[1:])):
            raise ValueError("calibration lengths must be strictly increasing")
        if any(b < a for a, b in zip(pressures, pressures[1:])):
            raise ValueError("calibration pressures must be non-decreasing")
        return v

    @model_validator(mode="after")
    def validate_geometry(self):
        if self.dl_max >= self.L0:
            raise ValueError("dl_max must be smaller than L0")
        if self.r_p >= self.r_s:
            raise ValueError("r_p must be smaller than r_s")
        return self

    @property
    def n_dof(self) -> int:
        return 6 + 3 * self.n_sections

    @property
    def section_mass(self) -> float:
        return self.m_total / self.n_sections

    @property
    def total_length(self) -> float:
        """Unactuated robot length including spacers [m]."""
        return self.n_sections * (self.L0 + self.d_rigid)

    @property
    def pma_area(self) -> float:
        """Effective PMA area: static balance K * dl_max = p_max * A when not given."""
        if self.A_pma is not None:
            return self.A_pma
        return self.K_elastic * self.dl_max / (self.p_max * BAR)

    @property
    def ring_radius(self) -> float:
        if self.gyration_radius is not None:
            return self.gyration_radius
        return self.r_s / math.sqrt(2.0)

    @property
    def length_per_bar(self) -> float:
        """Slope of the default length-to-pressure map [m/bar]."""
        return self.dl_max / self.p_max
