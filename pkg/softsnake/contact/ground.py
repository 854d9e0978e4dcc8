"""Spring-damper ground contact with regularized anisotropic friction."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..autodiff.jet import Jet
from ..core.exceptions import InputDomainError
from ..core.params import RobotParams
from ..core.state import N_DOF, as_vector
from ..kinematics.grid import SkinGrid
from ..kinematics.transforms import chain_points, configuration_vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ContactPoint:
    """One skin sample with its world position, velocity and ground reaction."""

    xi: float
    sigma: float
    p: np.ndarray
    v: np.ndarray
    F: np.ndarray
    in_contact: bool

    def to_dict(self) -> dict:
        return {
            "xi": self.xi,
            "sigma": self.sigma,
            "p": self.p.tolist(),
            "v": self.v.tolist(),
            "F": self.F.tolist(),
            "in_contact": self.in_contact,
        }


@dataclass
class ContactMap:
    """In-contact samples (xi, sigma, F_z) at one output time."""

    t: float
    xi: np.ndarray = field(default_factory=lambda: np.zeros(0))
    sigma: np.ndarray = field(default_factory=lambda: np.zeros(0))
    F_z: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def n_active(self) -> int:
        return int(self.xi.size)

    @property
    def total_normal_force(self) -> float:
        return float(self.F_z.sum())

    def rows(self) -> List[Tuple[float, float, float, float]]:
        return [(self.t, float(x), float(s), float(f)) for x, s, f in zip(self.xi, self.sigma, self.F_z)]


@dataclass
class ContactEvaluation:
    """Generalized contact force plus optional per-point records and linearization."""

    wrench: np.ndarray
    points: List[ContactPoint]
    n_active: int
    damping: Optional[np.ndarray] = None
    min_z: float = float("inf")

    def contact_map(self, t: float) -> ContactMap:
        active = [pt for pt in self.points if pt.in_contact]
        return ContactMap(
            t=t,
            xi=np.array([pt.xi for pt in active]),
            sigma=np.array([pt.sigma for pt in active]),
            F_z=np.array([pt.F[2] for pt in active]),
        )


def normal_force(z: float, zdot: float, params: RobotParams) -> float:
    """Ground normal force -1/2 (1 - sign z)(K_g z + B_g zdot), clamped to be non-adhesive."""
    raw = -0.5 * (1.0 - np.sign(z)) * (params.K_g * z + params.B_g * zdot)
    return float(max(0.0, raw))


def reaction_force(F_z: float, vx: float, vy: float, params: RobotParams) -> np.ndarray:
    """Normal plus friction force; friction opposes sliding through tanh(v / v_eps).

    Raises:
        InputDomainError: if F_z is negative.
    """
    if F_z < 0:
        raise InputDomainError(f"normal force F_z={F_z} must be non-negative", "F_z", F_z)
    return F_z * np.array([
        -params.mu_x * np.tanh(vx / params.v_eps),
        -params.mu_y * np.tanh(vy / params.v_eps),
        1.0,
    ])


def _forces(z: np.ndarray, v: np.ndarray, params: RobotParams):
    """Vectorised forces of penetrating points and the slope dF_z/dv_z."""
    raw = -(params.K_g * z + params.B_g * v[:, 2])
    F_z = np.maximum(raw, 0.0)
    dFz = np.where(raw > 0.0, -params.B_g, 0.0)
    tx = np.tanh(v[:, 0] / params.v_eps)
    ty = np.tanh(v[:, 1] / params.v_eps)
    F = np.stack([-params.mu_x * tx * F_z, -params.mu_y * ty * F_z, F_z], axis=-1)
    return F, F_z, dFz, tx, ty


def _velocity_jacobian(F_z, dFz, tx, ty, params: RobotParams) -> np.ndarray:
    """dF/dv of every point, shape (m, 3, 3)."""
    m = F_z.size
    dF = np.zeros((m, 3, 3))
    dF[:, 0, 0] = -params.mu_x * F_z * (1.0 - tx * tx) / params.v_eps
    dF[:, 1, 1] = -params.mu_y * F_z * (1.0 - ty * ty) / params.v_eps
    dF[:, 0, 2] = -params.mu_x * tx * dFz
    dF[:, 1, 2] = -params.mu_y * ty * dFz
    dF[:, 2, 2] = dFz
    return dF


def evaluate_contact(
    qv: np.ndarray,
    qdot: np.ndarray,
    grid: SkinGrid,
    params: RobotParams,
    records: bool = False,
    linearize: bool = False,
) -> ContactEvaluation:
    """Contact wrench over the grid.

    A float pass locates the penetrating points; derivatives are only taken
    for those unless per-point records are requested.
    """
    xi, sections, local, sigma = grid.flatten()
    offsets = grid.offsets()
    n = xi.size

    if records:
        candidates = np.arange(n)
    else:
        p_all = chain_points(qv, sections, local, offsets, params)
        candidates = np.flatnonzero(p_all[:, 2] < 0.0)

    wrench = np.zeros(N_DOF)
    damping = np.zeros((N_DOF, N_DOF)) if linearize else None
    if candidates.size == 0:
        min_z = float(p_all[:, 2].min()) if n and not records else float("inf")
        return ContactEvaluation(wrench, [], 0, damping, min_z)

    p = chain_points(
        Jet.variables(qv, 1), sections[candidates], local[candidates], offsets[candidates], params
    )
    pos, J = p.val, p.grad
    vel = J @ qdot
    active = pos[:, 2] < 0.0

    F = np.zeros_like(pos)
    if np.any(active):
        F_a, F_z, dFz, tx, ty = _forces(pos[active, 2], vel[active], params)
        F[active] = F_a
        J_a = J[active]
        wrench = np.einsum("kai,ka->i", J_a, F_a)
        if linearize:
            dF = _velocity_jacobian(F_z, dFz, tx, ty, params)
            damping = -np.einsum("kai,kab,kbj->ij", J_a, dF, J_a)

    points: List[ContactPoint] = []
    if records:
        for k in range(n):
            points.append(
                ContactPoint(
                    xi=float(xi[k]),
                    sigma=float(sigma[k]),
                    p=pos[k].copy(),
                    v=vel[k].copy(),
                    F=F[k].copy(),
                    in_contact=bool(active[k]),
                )
            )
    return ContactEvaluation(wrench, points, int(active.sum()), damping, float(pos[:, 2].min()))


def contact_wrench(
    q,
    qdot,
    grid: SkinGrid,
    params: RobotParams,
    records: bool = True,
    enabled: bool = True,
) -> Tuple[np.ndarray, List[ContactPoint]]:
    """Generalized contact force sum J^T F over the grid and the per-point records.

    With ``enabled=False`` the ground is removed: the wrench is zero and the
    records carry zero forces.
    """
    qv = configuration_vector(q)
    qd = as_vector(qdot, N_DOF, "qdot")
    result = evaluate_contact(qv, qd, grid, params, records=records)
    if not enabled:
        points = [
            ContactPoint(pt.xi, pt.sigma, pt.p, pt.v, np.zeros(3), False) for pt in result.points
        ]
        return np.zeros(N_DOF), points
    logger.debug(f"{result.n_active} of {grid.n_points} skin points in contact")
    return result.wrench, result.points
