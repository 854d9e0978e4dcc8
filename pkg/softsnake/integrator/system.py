"""State-space form of the snake dynamics, y = [q; qdot]."""

import logging
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.linalg import solve

from ..contact.ground import ContactEvaluation, ContactMap, evaluate_contact
from ..core.exceptions import DivergenceError
from ..core.params import RobotParams
from ..core.state import N_ACTUATED, N_DOF, SimState, as_vector
from ..dynamics.eom import actuation_vector, eom_terms, solve_inertia
from ..kinematics.grid import SkinGrid, skin_grid

logger = logging.getLogger(__name__)

Control = Callable[[float], np.ndarray]


class IntegrationStats:
    """Counters collected while integrating."""

    def __init__(self):
        self.rhs_evaluations = 0
        self.fixed_steps = 0
        self.jacobian_evaluations = 0
        self.lu_decompositions = 0
        self.max_active_contacts = 0

    def to_dict(self) -> dict:
        return {
            "rhs_evaluations": self.rhs_evaluations,
            "fixed_steps": self.fixed_steps,
            "jacobian_evaluations": self.jacobian_evaluations,
            "lu_decompositions": self.lu_decompositions,
            "max_active_contacts": self.max_active_contacts,
        }


class DynamicsSystem:
    """Binds parameters, control input and ground to the equations of motion.

    Instances are callable as ``f(t, y)`` for scipy's ODE solvers. The last
    finite state seen is kept so failures can report it.
    """

    def __init__(
        self,
        params: RobotParams,
        control: Optional[Control] = None,
        grid: Optional[SkinGrid] = None,
        contact_enabled: bool = True,
    ):
        self.params = params
        self.control = control
        self.grid = grid if grid is not None else skin_grid(params)
        self.contact_enabled = contact_enabled
        self.stats = IntegrationStats()
        self.last_t: Optional[float] = None
        self.last_y: Optional[np.ndarray] = None

    @property
    def last_state(self) -> Optional[SimState]:
        if self.last_y is None:
            return None
        return SimState.from_y(self.last_t, self.last_y)

    def pressures(self, t: float) -> np.ndarray:
        if self.control is None:
            return np.zeros(N_ACTUATED)
        return as_vector(self.control(t), N_ACTUATED, "pressures")

    def contact(self, q: np.ndarray, qdot: np.ndarray, linearize: bool = False) -> Optional[ContactEvaluation]:
        if not self.contact_enabled:
            return None
        result = evaluate_contact(q, qdot, self.grid, self.params, linearize=linearize)
        self.stats.max_active_contacts = max(self.stats.max_active_contacts, result.n_active)
        return result

    def accelerations(self, t: float, q: np.ndarray, qdot: np.ndarray) -> np.ndarray:
        tau = actuation_vector(self.pressures(t), self.params)
        terms = eom_terms(q, qdot, self.params, tau)
        ev = self.contact(q, qdot)
        wrench = None if ev is None else ev.wrench
        return solve_inertia(terms.M, terms.generalized_forces(qdot, wrench))

    def _check_finite(self, t: float, y: np.ndarray) -> None:
        if not np.all(np.isfinite(y)):
            raise DivergenceError(
                f"state became non-finite at t={t:.6g} s", t=t, last_state=self.last_state
            )
        self.last_t, self.last_y = float(t), np.array(y, dtype=float)

    def __call__(self, t: float, y: np.ndarray) -> np.ndarray:
        self._check_finite(t, y)
        self.stats.rhs_evaluations += 1
        q, qdot = y[:N_DOF], y[N_DOF:]
        return np.concatenate([qdot, self.accelerations(t, q, qdot)])

    def semi_implicit_step(self, t: float, y: np.ndarray, dt: float) -> np.ndarray:
        """One linearly implicit Euler step.

        Damping and the velocity slope of the contact forces are taken at the
        new velocity: (M + dt (D + Dc)) v+ = M v + dt (f + Dc v), q+ = q + dt v+.
        """
        self._check_finite(t, y)
        q, qdot = y[:N_DOF], y[N_DOF:]
        tau = actuation_vector(self.pressures(t), self.params)
        terms = eom_terms(q, qdot, self.params, tau)
        f = terms.tau - terms.C @ qdot - terms.G
        A = terms.M + dt * terms.D
        b = terms.M @ qdot
        ev = self.contact(q, qdot, linearize=True)
        if ev is not None:
            f = f + ev.wrench
            A = A + dt * ev.damping
            b = b + dt * (ev.damping @ qdot)
        b = b + dt * f
        v_next = solve(A, b)
        self.stats.fixed_steps += 1
        y_next = np.concatenate([q + dt * v_next, v_next])
        self._check_finite(t + dt, y_next)
        return y_next

    def sample(self, t: float, y: np.ndarray) -> Tuple[SimState, ContactMap, float, float]:
        """Output record at a sample time.

        Returns:
            (state, contact map, lowest skin point z [m], largest skin point |vz| [m/s])
        """
        state = SimState.from_y(t, y)
        ev = evaluate_contact(state.q, state.qdot, self.grid, self.params, records=True)
        cmap = ev.contact_map(t) if self.contact_enabled else ContactMap(t=t)
        max_vz = max((abs(pt.v[2]) for pt in ev.points), default=0.0)
        return state, cmap, ev.min_z, float(max_vz)
