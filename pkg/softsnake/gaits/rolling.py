"""Rolling gaits: jointspace and pressure trajectories."""

import csv
import io
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator

from ..core.exceptions import InputDomainError
from ..core.params import RobotParams
from ..core.state import N_ACTUATED
from .pressure import length_to_pressure

logger = logging.getLogger(__name__)

PMA_SPACING = 2.0 * math.pi / 3.0
DEFAULT_AMPLITUDE_FRACTION = 0.75

PMA_NAMES = [f"{i}{j}" for i in range(1, 4) for j in range(1, 4)]


class GaitKind(str, Enum):
    PLANAR_ROLLING = "planar_rolling"
    SPATIAL_ROLLING = "spatial_rolling"


DEFAULT_PHASE_SHIFT = {
    GaitKind.PLANAR_ROLLING: 0.0,
    GaitKind.SPATIAL_ROLLING: math.pi / 3.0,
}


class GaitSpec(BaseModel):
    """Rolling gait: every section's bending plane rotates at ``frequency``.

    ``amplitude`` defaults to 0.75 dl_max and ``phase_shift`` to 0 for planar
    and pi/3 for spatial rolling when left unset.
    """

    model_config = {"frozen": True, "extra": "forbid"}

    kind: GaitKind = GaitKind.PLANAR_ROLLING
    amplitude: Optional[float] = Field(None, description="peak PMA length change [m]")
    frequency: float = Field(0.5, description="gait frequency [Hz]")
    phase_shift: Optional[float] = Field(None, description="phase between adjacent sections [rad]")
    duration: float = Field(15.0, description="gait duration [s]")
    max_pressure: float = Field(3.0, description="pressure ceiling [bar]")

    @field_validator("amplitude")
    @classmethod
    def validate_amplitude(cls, v):
        if v is not None and v < 0:
            raise ValueError("amplitude must be non-negative")
        return v

    @field_validator("frequency", "duration", "max_pressure")
    @classmethod
    def validate_positive(cls, v, info):
        if not v > 0:
            raise ValueError(f"{info.field_name} must be strictly positive")
        return v

    @field_validator("phase_shift")
    @classmethod
    def validate_phase(cls, v):
        if v is not None and not 0.0 <= v < 2.0 * math.pi:
            raise ValueError("phase_shift must lie in [0, 2 pi)")
        return v

    @property
    def period(self) -> float:
        return 1.0 / self.frequency

    @property
    def phase(self) -> float:
        if self.phase_shift is not None:
            return self.phase_shift
        return DEFAULT_PHASE_SHIFT[self.kind]

    def resolved_amplitude(self, params: RobotParams) -> float:
        """Amplitude in metres, checked against dl_max."""
        A = DEFAULT_AMPLITUDE_FRACTION * params.dl_max if self.amplitude is None else self.amplitude
        if A > params.dl_max:
            raise InputDomainError(f"amplitude {A} m exceeds dl_max {params.dl_max} m", "amplitude", A)
        return A


def rolling_lengths(spec: GaitSpec, t: float, params: RobotParams) -> np.ndarray:
    """PMA length changes l_ij(t) = A/2 (1 + sin(2 pi f t + (j-1) 2pi/3 + (i-1) phi))."""
    if t < 0:
        raise InputDomainError(f"t={t} must be non-negative", "t", t)
    A = spec.resolved_amplitude(params)
    i = np.repeat(np.arange(3), 3)
    j = np.tile(np.arange(3), 3)
    phase = 2.0 * math.pi * spec.frequency * t + j * PMA_SPACING + i * spec.phase
    lengths = 0.5 * A * (1.0 + np.sin(phase))
    return np.clip(lengths, 0.0, params.dl_max)


def gait_pressures(spec: GaitSpec, t: float, params: RobotParams) -> np.ndarray:
    """Pressures [bar] of the gait at time t, capped at ``max_pressure``."""
    pressures = length_to_pressure(rolling_lengths(spec, t, params), params)
    return np.minimum(pressures, spec.max_pressure)


def check_pressure_ceiling(spec: GaitSpec, params: RobotParams) -> float:
    """Peak pressure the gait asks for; logs a warning when it will be clamped."""
    A = spec.resolved_amplitude(params)
    peak = float(length_to_pressure(np.full(N_ACTUATED, A), params)[0])
    if peak > spec.max_pressure:
        logger.warning(f"gait peak pressure {peak:.3f} bar clamped to {spec.max_pressure} bar")
    return peak


class GaitController:
    """Pressure control input for the integrator, with the gait starting at ``t_start``.

    Before ``t_start`` every PMA is vented.
    """

    def __init__(self, spec: GaitSpec, params: RobotParams, t_start: float = 0.0):
        self.spec = spec
        self.params = params
        self.t_start = t_start
        self.peak_pressure = check_pressure_ceiling(spec, params)

    def __call__(self, t: float) -> np.ndarray:
        if t < self.t_start:
            return np.zeros(N_ACTUATED)
        return gait_pressures(self.spec, t - self.t_start, self.params)


@dataclass
class JointTrajectory:
    """Sampled length changes [m] and pressures [bar] of all nine PMAs."""

    times: np.ndarray
    lengths: np.ndarray
    pressures: np.ndarray

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float).reshape(-1)
        self.lengths = np.asarray(self.lengths, dtype=float).reshape(-1, N_ACTUATED)
        self.pressures = np.asarray(self.pressures, dtype=float).reshape(-1, N_ACTUATED)
        if not (self.times.size == self.lengths.shape[0] == self.pressures.shape[0]):
            raise InputDomainError("times, lengths and pressures must have matching rows", "samples")

    def __len__(self) -> int:
        return self.times.size

    @property
    def samples(self) -> List[Tuple[float, np.ndarray, np.ndarray]]:
        return [(float(t), l, p) for t, l, p in zip(self.times, self.lengths, self.pressures)]

    @staticmethod
    def header() -> List[str]:
        return (
            ["t [s]"]
            + [f"l_{name} [m]" for name in PMA_NAMES]
            + [f"P_{name} [bar]" for name in PMA_NAMES]
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header())
        for t, l, p in zip(self.times, self.lengths, self.pressures):
            writer.writerow([repr(float(t))] + [repr(float(x)) for x in l] + [repr(float(x)) for x in p])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "JointTrajectory":
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header != cls.header():
            raise InputDomainError("unexpected joint trajectory header", "header", header)
        rows = np.array([[float(x) for x in row] for row in reader if row], dtype=float)
        if rows.size == 0:
            rows = np.zeros((0, 1 + 2 * N_ACTUATED))
        return cls(rows[:, 0], rows[:, 1:1 + N_ACTUATED], rows[:, 1 + N_ACTUATED:])


def build_trajectory(
    spec: GaitSpec,
    params: RobotParams,
    rate: float = 30.0,
    duration: Optional[float] = None,
) -> JointTrajectory:
    """Sample the gait at ``rate`` Hz over ``duration`` seconds (one period by default)."""
    if not rate > 0:
        raise InputDomainError(f"rate={rate} must be positive", "rate", rate)
    duration = spec.period if duration is None else duration
    check_pressure_ceiling(spec, params)
    n = int(math.floor(duration * rate + 1e-9))
    times = np.arange(n + 1) / rate
    lengths = np.array([rolling_lengths(spec, t, params) for t in times])
    pressures = np.array([gait_pressures(spec, t, params) for t in times])
    return JointTrajectory(times, lengths, pressures)
