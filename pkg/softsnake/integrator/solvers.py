"""Time-stepping schemes."""

import logging
import math
from abc import ABC, abstractmethod

import numpy as np
from scipy.integrate import BDF, Radau

from ..core.exceptions import StiffnessError
from ..core.state import SimState
from .config import IntegrationMethod, IntegratorConfig, StiffSolver
from .system import DynamicsSystem

logger = logging.getLogger(__name__)

_SOLVERS = {StiffSolver.BDF: BDF, StiffSolver.RADAU: Radau}


class Stepper(ABC):
    """Abstract base class for integration schemes."""

    def __init__(self, cfg: IntegratorConfig):
        self.cfg = cfg

    @abstractmethod
    def integrate(self, system: DynamicsSystem, y0: np.ndarray, t_samples: np.ndarray) -> np.ndarray:
        """Integrate from t_samples[0] and return the states at every sample, shape (n, 30)."""
        pass

    @property
    @abstractmethod
    def method(self) -> IntegrationMethod:
        pass

    def _project(self, system: DynamicsSystem, t: float, y: np.ndarray) -> np.ndarray:
        if not self.cfg.project_limits:
            return y
        return SimState.from_y(t, y).projected(system.params).y


class ImplicitAdaptiveStepper(Stepper):
    """Variable-order stiff solver from scipy (BDF or Radau) with error control.

    The Jacobian of the right-hand side is approximated by finite
    differences and refreshed by the solver when Newton iterations stall.
    """

    @property
    def method(self) -> IntegrationMethod:
        return IntegrationMethod.IMPLICIT_ADAPTIVE

    def _solve(self, system: DynamicsSystem, y0: np.ndarray, t_eval: np.ndarray) -> np.ndarray:
        cfg = self.cfg
        solver = _SOLVERS[cfg.solver](
            system,
            float(t_eval[0]),
            np.asarray(y0, dtype=float),
            float(t_eval[-1]),
            max_step=cfg.max_step,
            rtol=cfg.rel_tol,
            atol=cfg.abs_tol,
        )
        out = np.empty((len(t_eval), solver.n))
        out[0] = y0
        k = 1
        try:
            while solver.status == "running":
                message = solver.step()
                if solver.status == "failed":
                    t_fail = system.last_t if system.last_t is not None else solver.t
                    raise StiffnessError(
                        f"{cfg.solver.value} failed at t={t_fail:.6g} s: {message}",
                        t=t_fail,
                        last_state=SimState.from_y(solver.t, solver.y),
                    )
                # the final step is clipped to t_bound and may be arbitrarily short
                if solver.status == "running" and solver.step_size < cfg.min_step:
                    raise StiffnessError(
                        f"{cfg.solver.value} step size {solver.step_size:.3g} s fell below "
                        f"min_step={cfg.min_step:.3g} s at t={solver.t:.6g} s",
                        t=float(solver.t),
                        last_state=SimState.from_y(solver.t, solver.y),
                    )
                if k < len(t_eval) and t_eval[k] <= solver.t:
                    dense = solver.dense_output()
                    while k < len(t_eval) and t_eval[k] <= solver.t:
                        out[k] = dense(t_eval[k])
                        k += 1
        finally:
            system.stats.jacobian_evaluations += int(solver.njev)
            system.stats.lu_decompositions += int(solver.nlu)
        out[k:] = solver.y
        return out

    def integrate(self, system: DynamicsSystem, y0: np.ndarray, t_samples: np.ndarray) -> np.ndarray:
        if not self.cfg.project_limits:
            return self._solve(system, y0, t_samples)

        ys = [np.asarray(y0, dtype=float)]
        for a, b in zip(t_samples[:-1], t_samples[1:]):
            y = self._solve(system, ys[-1], np.array([a, b]))[-1]
            ys.append(self._project(system, b, y))
        return np.array(ys)


class SemiImplicitStepper(Stepper):
    """Fixed-step linearly implicit Euler; each output interval is split into
    equal substeps no longer than ``fixed_step``."""

    @property
    def method(self) -> IntegrationMethod:
        return IntegrationMethod.SEMI_IMPLICIT_FIXED

    def integrate(self, system: DynamicsSystem, y0: np.ndarray, t_samples: np.ndarray) -> np.ndarray:
        ys = [np.asarray(y0, dtype=float)]
        for a, b in zip(t_samples[:-1], t_samples[1:]):
            n_sub = max(1, math.ceil((b - a) / self.cfg.fixed_step - 1e-9))
            dt = (b - a) / n_sub
            y = ys[-1]
            for k in range(n_sub):
                y = self._project(system, a + (k + 1) * dt, system.semi_implicit_step(a + k * dt, y, dt))
            ys.append(y)
        logger.debug(f"semi-implicit integration took {system.stats.fixed_steps} steps")
        return np.array(ys)


def make_stepper(cfg: IntegratorConfig) -> Stepper:
    """Stepper for the configured method."""
    steppers = {
        IntegrationMethod.IMPLICIT_ADAPTIVE: ImplicitAdaptiveStepper,
        IntegrationMethod.SEMI_IMPLICIT_FIXED: SemiImplicitStepper,
    }
    return steppers[cfg.method](cfg)
