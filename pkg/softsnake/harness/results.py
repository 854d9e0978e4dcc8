"""Result records of drop tests and gait experiments."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..core.params import RobotParams
from ..integrator.simulate import Trajectory
from ..kinematics.grid import SkinGrid
from ..kinematics.transforms import chain_points
from .config import ExperimentConfig
from .digest import ConfigDigest
from .metrics import GaitMetrics

SETTLE_VELOCITY = 1e-3  # m/s
PENETRATION_MARGIN = 5e-3  # m


def backbone_series(trajectory: Trajectory, grid: SkinGrid, params: RobotParams) -> np.ndarray:
    """World backbone positions at the grid's axial stations, shape (T, stations, 3)."""
    sections = np.array([i - 1 for i, _ in grid.xi_samples])
    local = np.array([loc for _, loc in grid.xi_samples])
    offsets = np.zeros((sections.size, 3))
    return np.array([chain_points(s.q, sections, local, offsets, params) for s in trajectory.states])


@dataclass
class DropReport:
    """Outcome of releasing the vented snake above the ground."""

    settled: bool
    settle_time: Optional[float]
    final_base_height: float
    final_min_z: float
    min_z_after_settle: float
    static_penetration: float
    free_fall: bool

    @property
    def within_penetration_bound(self) -> bool:
        """Lowest skin point never sank past the static estimate plus 5 mm once at rest."""
        return self.min_z_after_settle >= -(self.static_penetration + PENETRATION_MARGIN)

    @property
    def resting_on_ground(self) -> bool:
        return -PENETRATION_MARGIN <= self.final_min_z <= 0.0

    @classmethod
    def from_trajectory(cls, trajectory: Trajectory, params: RobotParams, contact_enabled: bool = True) -> "DropReport":
        max_vz = np.asarray(trajectory.max_vz)
        min_z = np.asarray(trajectory.min_z)
        times = trajectory.times

        # first sample after which every skin point stays below the velocity threshold
        moving = np.flatnonzero(max_vz >= SETTLE_VELOCITY)
        first = 0 if moving.size == 0 else int(moving[-1]) + 1
        settled = first < len(times)
        rest = min_z[first:] if settled else min_z[-1:]
        return cls(
            settled=settled,
            settle_time=float(times[first]) if settled else None,
            final_base_height=float(trajectory.base_positions[-1, 2]),
            final_min_z=float(min_z[-1]),
            min_z_after_settle=float(np.min(rest)),
            static_penetration=params.m_total * params.g / params.K_g,
            free_fall=not contact_enabled,
        )

    def to_dict(self) -> Dict:
        return {
            "settled": self.settled,
            "settle_time_s": self.settle_time,
            "final_base_height_m": self.final_base_height,
            "final_min_z_m": self.final_min_z,
            "min_z_after_settle_m": self.min_z_after_settle,
            "static_penetration_m": self.static_penetration,
            "within_penetration_bound": self.within_penetration_bound,
            "resting_on_ground": self.resting_on_ground,
            "free_fall": self.free_fall,
        }


@dataclass
class ExperimentResults:
    """Everything one experiment produced."""

    config: ExperimentConfig
    trajectory: Trajectory
    backbone: Optional[np.ndarray] = None
    drop_report: Optional[DropReport] = None
    metrics: Optional[GaitMetrics] = None
    reference: Optional[Dict] = None
    files: List[str] = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.config.name

    @property
    def config_digest(self) -> str:
        return ConfigDigest().calculate(self.config)

    def summary(self) -> Dict:
        """Deterministic result document: no wall-clock timings."""
        doc = {
            "experiment": self.name,
            "config_digest": self.config_digest,
            "method": self.trajectory.method,
            "samples": len(self.trajectory),
            "t_start_s": float(self.trajectory.times[0]),
            "t_end_s": float(self.trajectory.times[-1]),
            "integration": dict(self.trajectory.stats),
            "max_limit_violation_m": self.trajectory.max_limit_violation(self.config.robot),
        }
        if self.drop_report is not None:
            doc["drop"] = self.drop_report.to_dict()
        if self.metrics is not None:
            doc["gait"] = self.config.gait.model_dump(mode="json")
            doc["amplitude_m"] = self.config.gait.resolved_amplitude(self.config.robot)
            doc["metrics"] = self.metrics.to_dict()
        if self.reference is not None:
            doc["reference"] = self.reference
        return doc
