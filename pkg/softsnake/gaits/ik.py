"""Optimization-based inverse kinematics of the backbone."""

import logging
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import least_squares

from ..autodiff.jet import Jet
from ..core.exceptions import ConvergenceError, InputDomainError
from ..core.params import RobotParams
from ..core.state import N_ACTUATED, N_BASE, N_DOF, as_vector, check_lengths
from ..kinematics.transforms import chain_points, split_axial

logger = logging.getLogger(__name__)

MIN_TARGETS = 4


def backbone_samples(q_r, xi, params: RobotParams) -> np.ndarray:
    """Base-relative backbone points (r = 0) at global coordinates ``xi``."""
    q = np.concatenate([np.zeros(N_BASE), np.asarray(q_r, dtype=float)])
    sections, local = split_axial(xi)
    return chain_points(q, sections, local, np.zeros((len(sections), 3)), params)


def ik_fit(
    target_backbone: Sequence[Sequence[float]],
    initial_guess,
    params: RobotParams,
    xi: Optional[Sequence[float]] = None,
    max_iterations: int = 200,
    on_iteration: Optional[Callable[[np.ndarray, float], None]] = None,
) -> np.ndarray:
    """Length changes whose backbone best matches the target points.

    Minimizes the sum of squared distances between backbone samples and
    targets with a bounded trust-region least-squares solver, using exact
    Jacobians from forward-mode differentiation of the kinematics.

    Args:
        target_backbone: M >= 4 points relative to the floating base.
        initial_guess: nine length changes within [0, dl_max].
        params: robot parameters.
        xi: global axial coordinate of every target; equally spaced on
            [0, 3] when omitted.
        max_iterations: function evaluation budget.
        on_iteration: called with (q_r, squared residual) at the initial
            guess and after every accepted trust-region step.

    Returns:
        The fitted q_r.

    Raises:
        InputDomainError: for too few targets or an out-of-range guess.
        ConvergenceError: if the budget runs out; carries the best iterate.
    """
    targets = np.asarray(target_backbone, dtype=float)
    if targets.ndim != 2 or targets.shape[1] != 3:
        raise InputDomainError("targets must be a sequence of 3-vectors", "target_backbone", targets.shape)
    if targets.shape[0] < MIN_TARGETS:
        raise InputDomainError(
            f"at least {MIN_TARGETS} targets are required, got {targets.shape[0]}",
            "target_backbone",
            targets.shape[0],
        )
    x0 = as_vector(initial_guess, N_ACTUATED, "initial_guess")
    check_lengths(x0, params)

    xi = np.linspace(0.0, float(params.n_sections), targets.shape[0]) if xi is None else np.asarray(xi, float)
    sections, local = split_axial(xi)
    offsets = np.zeros((targets.shape[0], 3))

    def residual(q_r):
        q = np.concatenate([np.zeros(N_BASE), q_r])
        return (chain_points(q, sections, local, offsets, params) - targets).ravel()

    def jacobian(q_r):
        q = Jet.variables(np.concatenate([np.zeros(N_BASE), q_r]), 1)
        p = chain_points(q, sections, local, offsets, params)
        # trf only re-linearises at accepted iterates
        if on_iteration is not None:
            on_iteration(np.array(q_r), float(np.sum((p.val - targets) ** 2)))
        return p.grad[:, :, N_BASE:N_DOF].reshape(-1, N_ACTUATED)

    result = least_squares(
        residual,
        x0,
        jac=jacobian,
        bounds=(0.0, params.dl_max),
        method="trf",
        gtol=1e-8,
        ftol=1e-12,
        xtol=1e-15,
        max_nfev=max_iterations,
    )
    sq_residual = float(2.0 * result.cost)
    if result.status == 0:
        raise ConvergenceError(
            f"IK did not converge within {max_iterations} evaluations (residual {sq_residual:.3e})",
            best=result.x,
            residual=sq_residual,
            iterations=int(result.nfev),
        )
    if np.any(result.active_mask != 0):
        logger.warning(f"IK solution rests on a length bound for {int(np.sum(result.active_mask != 0))} PMAs")
    logger.debug(f"IK converged after {result.nfev} evaluations, residual {sq_residual:.3e}")
    return np.clip(result.x, 0.0, params.dl_max)
