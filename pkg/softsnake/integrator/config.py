"""Integrator configuration."""

from enum import Enum

from pydantic import BaseModel, Field, field_validator, model_validator


class IntegrationMethod(str, Enum):
    """Supported time-stepping schemes."""

    IMPLICIT_ADAPTIVE = "implicit-adaptive"
    SEMI_IMPLICIT_FIXED = "semi-implicit-fixed"


class StiffSolver(str, Enum):
    """Implicit solvers available to the adaptive method."""

    BDF = "BDF"
    RADAU = "Radau"


class IntegratorConfig(BaseModel):
    """Tolerances, method and output sampling of a simulation run."""

    model_config = {"frozen": True, "extra": "forbid"}

    rel_tol: float = Field(1.0e-6, description="relative local error tolerance")
    abs_tol: float = Field(1.0e-8, description="absolute local error tolerance")
    max_step: float = Field(1.0e-2, description="largest adaptive step [s]")
    method: IntegrationMethod = IntegrationMethod.IMPLICIT_ADAPTIVE
    solver: StiffSolver = StiffSolver.BDF
    fixed_step: float = Field(1.0e-4, description="step of the semi-implicit method [s]")
    min_step: float = Field(1.0e-12, description="step size treated as underflow [s]")
    output_rate: float = Field(30.0, description="output sampling rate [Hz]")
    project_limits: bool = Field(False, description="clip q_r into [0, dl_max] during integration")
    limit_warning: float = Field(5.0e-3, description="q_r excursion beyond bounds that is logged [m]")

    @field_validator("rel_tol", "abs_tol", "max_step", "fixed_step", "min_step", "output_rate")
    @classmethod
    def validate_positive(cls, v, info):
        if not v > 0:
            raise ValueError(f"{info.field_name} must be strictly positive")
        return v

    @model_validator(mode="after")
    def validate_steps(self):
        if self.fixed_step > 1.0 / self.output_rate:
            raise ValueError("fixed_step must not exceed the output interval")
        if self.min_step >= self.max_step:
            raise ValueError("min_step must be smaller than max_step")
        return self

    @property
    def output_interval(self) -> float:
        return 1.0 / self.output_rate
