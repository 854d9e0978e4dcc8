"""Time integration of the snake dynamics."""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..contact.ground import ContactMap
from ..core.exceptions import InputDomainError
from ..core.params import RobotParams
from ..core.state import N_ACTUATED, N_BASE, SimState, as_vector
from ..kinematics.grid import SkinGrid
from .config import IntegratorConfig
from .solvers import make_stepper
from .system import Control, DynamicsSystem

logger = logging.getLogger(__name__)


@dataclass
class Trajectory:
    """Simulated states and contact maps at the output rate."""

    states: List[SimState]
    contact_maps: List[ContactMap] = field(default_factory=list)
    min_z: np.ndarray = field(default_factory=lambda: np.zeros(0))
    max_vz: np.ndarray = field(default_factory=lambda: np.zeros(0))
    method: str = ""
    stats: dict = field(default_factory=dict)
    execution_time: float = 0.0

    def __len__(self) -> int:
        return len(self.states)

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.states])

    @property
    def q(self) -> np.ndarray:
        return np.array([s.q for s in self.states])

    @property
    def qdot(self) -> np.ndarray:
        return np.array([s.qdot for s in self.states])

    @property
    def base_positions(self) -> np.ndarray:
        return self.q[:, :3]

    @property
    def base_angles(self) -> np.ndarray:
        return self.q[:, 3:N_BASE]

    @property
    def joint_lengths(self) -> np.ndarray:
        return self.q[:, N_BASE:]

    @property
    def final(self) -> SimState:
        return self.states[-1]

    def max_limit_violation(self, params: RobotParams) -> float:
        return max((s.limit_violation(params) for s in self.states), default=0.0)


def output_times(t0: float, duration: float, rate: float) -> np.ndarray:
    """Sample times t0, t0 + 1/rate, ... up to and including t0 + duration."""
    n = int(math.floor(duration * rate + 1e-9))
    times = t0 + np.arange(n + 1) / rate
    if times[-1] < t0 + duration - 1e-12:
        times = np.append(times, t0 + duration)
    return times


def rhs(
    state: SimState,
    pressures,
    params: RobotParams,
    grid: Optional[SkinGrid] = None,
    contact_enabled: bool = True,
) -> np.ndarray:
    """Time derivative [qdot; qdd] of a state under constant pressures [bar]."""
    pressures = as_vector(pressures, N_ACTUATED, "pressures")
    system = DynamicsSystem(params, lambda t: pressures, grid, contact_enabled)
    return system(state.t, state.y)


def integrate(
    initial: SimState,
    control: Optional[Control],
    duration: float,
    cfg: IntegratorConfig,
    params: RobotParams,
    grid: Optional[SkinGrid] = None,
    contact_enabled: bool = True,
) -> Trajectory:
    """Integrate from ``initial`` for ``duration`` seconds.

    Args:
        initial: starting state.
        control: maps time [s] to the nine PMA pressures [bar]; None means zero.
        duration: simulated time [s].
        cfg: integrator configuration.
        params: robot parameters.
        grid: contact grid; the default 31 x 10 skin grid when omitted.
        contact_enabled: include the ground.

    Returns:
        Trajectory sampled at cfg.output_rate, including both end points.

    Raises:
        StiffnessError: if the step size underflows.
        DivergenceError: if the state becomes non-finite.
    """
    if not duration > 0:
        raise InputDomainError(f"duration={duration} must be positive", "duration", duration)
    if not initial.is_finite():
        raise InputDomainError("initial state must be finite", "initial", initial.to_dict())

    system = DynamicsSystem(params, control, grid, contact_enabled)
    stepper = make_stepper(cfg)
    t_samples = output_times(initial.t, duration, cfg.output_rate)
    logger.info(
        f"Integrating {duration:g} s with {stepper.method.value} "
        f"({len(t_samples)} samples, contact {'on' if contact_enabled else 'off'})"
    )

    start = time.time()
    ys = stepper.integrate(system, initial.y, t_samples)

    states, maps, min_z, max_vz = [], [], [], []
    warned = False
    for t, y in zip(t_samples, ys):
        state, cmap, z, vz = system.sample(float(t), y)
        states.append(state)
        maps.append(cmap)
        min_z.append(z)
        max_vz.append(vz)
        if not warned and state.limit_violation(params) > cfg.limit_warning:
            logger.warning(
                f"PMA length change left [0, {params.dl_max}] by "
                f"{state.limit_violation(params) * 1e3:.1f} mm at t={t:.3f} s"
            )
            warned = True

    elapsed = time.time() - start
    logger.info(f"Integration finished in {elapsed:.1f} s ({system.stats.rhs_evaluations} rhs evaluations)")
    return Trajectory(
        states=states,
        contact_maps=maps,
        min_z=np.array(min_z),
        max_vz=np.array(max_vz),
        method=stepper.method.value,
        stats=system.stats.to_dict(),
        execution_time=elapsed,
    )
