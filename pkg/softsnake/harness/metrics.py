"""Locomotion metrics of gait trajectories."""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from ..contact.ground import ContactMap
from ..core.exceptions import InputDomainError
from ..gaits.rolling import GaitKind, GaitSpec
from ..integrator.simulate import Trajectory

MIN_CYCLES = 3
CM = 100.0

# Travelling velocities (Vx, Vy) in cm/s published for the three-section snake:
# the numerical model and the physical prototype, per gait.
REFERENCE_VELOCITIES = {
    GaitKind.PLANAR_ROLLING: {"numerical": (3.51, 9.39), "prototype": (3.31, 9.01)},
    GaitKind.SPATIAL_ROLLING: {"numerical": (0.67, 7.77), "prototype": (0.61, 7.12)},
}
REFERENCE_TOLERANCE = 0.5


@dataclass
class GaitMetrics:
    """Mean base velocity [cm/s] over whole gait cycles, after the first."""

    Vx: float
    Vy: float
    net_displacement: float
    cycles_used: int
    window: Tuple[float, float]
    contact_history: List[ContactMap] = field(default_factory=list)

    @property
    def speed(self) -> float:
        return math.hypot(self.Vx, self.Vy)

    def to_dict(self) -> Dict:
        active = [m.n_active for m in self.contact_history]
        return {
            "Vx_cm_s": self.Vx,
            "Vy_cm_s": self.Vy,
            "speed_cm_s": self.speed,
            "net_displacement_m": self.net_displacement,
            "cycles_used": self.cycles_used,
            "window_s": list(self.window),
            "contact_samples": len(active),
            "mean_active_contacts": float(np.mean(active)) if active else 0.0,
            "max_active_contacts": int(max(active)) if active else 0,
        }


def compute_metrics(trajectory: Trajectory, gait: GaitSpec) -> GaitMetrics:
    """Least-squares slopes of base x(t) and y(t) over complete gait cycles.

    The first cycle is discarded as transient and the fit runs over every
    remaining complete cycle.

    Raises:
        InputDomainError: if the trajectory covers fewer than three cycles.
    """
    t = trajectory.times
    if t.size < 2:
        raise InputDomainError("trajectory has fewer than two samples", "trajectory", int(t.size))
    t = t - t[0]
    period = gait.period
    cycles = int(math.floor(t[-1] / period + 1e-9))
    if cycles < MIN_CYCLES:
        raise InputDomainError(
            f"trajectory spans {t[-1]:.3f} s, {cycles} cycles; at least {MIN_CYCLES} are required",
            "duration",
            float(t[-1]),
        )

    start, end = period, cycles * period
    eps = 1e-9 * period
    window = (t >= start - eps) & (t <= end + eps)
    xy = trajectory.base_positions[:, :2]
    slope_x = np.polyfit(t[window], xy[window, 0], 1)[0]
    slope_y = np.polyfit(t[window], xy[window, 1], 1)[0]
    return GaitMetrics(
        Vx=float(slope_x * CM),
        Vy=float(slope_y * CM),
        net_displacement=float(np.linalg.norm(xy[-1] - xy[0])),
        cycles_used=cycles - 1,
        window=(float(start), float(end)),
        contact_history=list(trajectory.contact_maps),
    )


def compare_to_reference(metrics: GaitMetrics, kind: GaitKind) -> Dict:
    """Simulated velocities next to the published numerical and prototype values.

    ``error_pct`` follows (V_N - V_P) / V_N * 100 with V_N the simulated and
    V_P the prototype velocity. ``within_tolerance`` compares magnitudes to
    the published numerical model at +-50 %.
    """
    kind = GaitKind(kind)
    ref = REFERENCE_VELOCITIES[kind]
    report = {}
    for k, (axis, value) in enumerate((("Vx", metrics.Vx), ("Vy", metrics.Vy))):
        numerical = ref["numerical"][k]
        prototype = ref["prototype"][k]
        magnitude = abs(value)
        error = (magnitude - prototype) / magnitude * 100.0 if magnitude > 0 else None
        report[axis] = {
            "simulated_cm_s": value,
            "published_numerical_cm_s": numerical,
            "published_prototype_cm_s": prototype,
            "error_pct": error,
            "within_tolerance": bool(abs(magnitude - numerical) <= REFERENCE_TOLERANCE * numerical),
        }
    report["within_tolerance"] = all(report[a]["within_tolerance"] for a in ("Vx", "Vy"))
    return report
