"""Lagrangian equations of motion of the floating-base snake.

    M(q) qdd + (C(q, qd) + D) qd + G(q) = [0; tau_e] + sum_jk J_jk^T F_jk

M is assembled from the mass quadrature as sum_k m_k J_k^T J_k. Its partial
derivatives come from second-order jets of the same points, so the Coriolis
matrix built from Christoffel symbols is consistent with M to round-off.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, eigvalsh

from ..autodiff.jet import Jet
from ..core.exceptions import InputDomainError, NumericalDegeneracyError
from ..core.params import BAR, RobotParams
from ..core.state import N_ACTUATED, N_BASE, N_DOF, as_vector
from ..kinematics.transforms import chain_points, configuration_vector
from .quadrature import MassSamples, mass_samples

logger = logging.getLogger(__name__)


@dataclass
class EomTerms:
    """Every term of the equations of motion at one state."""

    M: np.ndarray
    C: np.ndarray
    D: np.ndarray
    G: np.ndarray
    tau: np.ndarray

    def generalized_forces(self, qdot: np.ndarray, contact: Optional[np.ndarray] = None) -> np.ndarray:
        """Right-hand side tau + contact - (C + D) qdot - G."""
        f = self.tau - (self.C + self.D) @ qdot - self.G
        if contact is not None:
            f = f + contact
        return f

    def to_dict(self) -> dict:
        return {k: getattr(self, k).tolist() for k in ("M", "C", "D", "G", "tau")}


@dataclass(frozen=True)
class EnergyBreakdown:
    """Kinetic, gravitational and elastic energy [J]."""

    kinetic: float
    gravitational: float
    elastic: float

    @property
    def total(self) -> float:
        return self.kinetic + self.gravitational + self.elastic

    def to_dict(self) -> dict:
        return {
            "kinetic": self.kinetic,
            "gravitational": self.gravitational,
            "elastic": self.elastic,
            "total": self.total,
        }


# -- assembly helpers ------------------------------------------------------


def _mass_points(qv, params: RobotParams, order: int, n_nodes: Optional[int] = None):
    samples = mass_samples(params, n_nodes)
    x = Jet.variables(qv, order)
    p = chain_points(x, samples.sections, samples.xi, samples.offsets, params)
    return samples, p


def _inertia(samples: MassSamples, J: np.ndarray) -> np.ndarray:
    M = np.einsum("k,kai,kaj->ij", samples.weights, J, J)
    return 0.5 * (M + M.T)


def _inertia_derivative(samples: MassSamples, J: np.ndarray, H: np.ndarray) -> np.ndarray:
    # dM[u, v, h] = dM_uv / dq_h
    A = np.einsum("k,kauh,kav->uvh", samples.weights, H, J)
    return A + A.transpose(1, 0, 2)


def _coriolis(dM: np.ndarray, qdot: np.ndarray) -> np.ndarray:
    # C[v, u] = sum_h Gamma_vuh qdot_h with Christoffel symbols of the first kind
    return 0.5 * (
        np.einsum("vuh,h->vu", dM, qdot)
        + np.einsum("vhu,h->vu", dM, qdot)
        - np.einsum("huv,h->vu", dM, qdot)
    )


def _conservative(qv: np.ndarray, samples: MassSamples, J: np.ndarray, params: RobotParams) -> np.ndarray:
    G = params.g * np.einsum("k,ki->i", samples.weights, J[:, 2, :])
    G[N_BASE:] += params.K_elastic * qv[N_BASE:]
    return G


def damping_matrix(params: RobotParams) -> np.ndarray:
    """Diagonal damping: zero on the floating base, D_damp on every PMA."""
    return np.diag(np.concatenate([np.zeros(N_BASE), np.full(N_ACTUATED, params.D_damp)]))


def _velocity(qdot) -> np.ndarray:
    return as_vector(qdot, N_DOF, "qdot")


# -- public operations -----------------------------------------------------


def inertia_matrix(q, params: RobotParams, n_nodes: Optional[int] = None) -> np.ndarray:
    """Generalized inertia matrix M(q), 15x15, symmetric positive definite."""
    qv = configuration_vector(q)
    samples, p = _mass_points(qv, params, 1, n_nodes)
    return _inertia(samples, p.grad)


def mass_matrix_derivative(q, params: RobotParams) -> np.ndarray:
    """Partial derivatives dM[u, v, h] = dM_uv/dq_h, shape (15, 15, 15)."""
    qv = configuration_vector(q)
    samples, p = _mass_points(qv, params, 2)
    return _inertia_derivative(samples, p.grad, p.hess)


def coriolis_matrix(q, qdot, params: RobotParams) -> np.ndarray:
    """Coriolis and centrifugal matrix C(q, qdot) from Christoffel symbols."""
    return _coriolis(mass_matrix_derivative(q, params), _velocity(qdot))


def conservative_forces(q, params: RobotParams, n_nodes: Optional[int] = None) -> np.ndarray:
    """Elastic K q_r on the actuated coordinates plus the gravity load on all 15."""
    qv = configuration_vector(q)
    samples, p = _mass_points(qv, params, 1, n_nodes)
    return _conservative(qv, samples, p.grad, params)


def actuation_vector(pressures, params: RobotParams) -> np.ndarray:
    """Generalized actuation [0_6; P * 1e5 * A_pma] from nine gauge pressures in bar.

    Raises:
        InputDomainError: if any pressure is negative or above p_max.
    """
    pressures = as_vector(pressures, N_ACTUATED, "pressures")
    for k, P in enumerate(pressures):
        if not 0.0 <= P <= params.p_max:
            name = f"P_{k // 3 + 1}{k % 3 + 1}"
            raise InputDomainError(f"pressure {name}={P:.6g} bar outside [0, {params.p_max}]", name, float(P))
    tau = np.zeros(N_DOF)
    tau[N_BASE:] = pressures * BAR * params.pma_area
    return tau


def eom_terms(q, qdot, params: RobotParams, tau=None) -> EomTerms:
    """All equation-of-motion terms from a single second-order kinematic pass."""
    qv = configuration_vector(q)
    qd = _velocity(qdot)
    samples, p = _mass_points(qv, params, 2)
    J, H = p.grad, p.hess
    return EomTerms(
        M=_inertia(samples, J),
        C=_coriolis(_inertia_derivative(samples, J, H), qd),
        D=damping_matrix(params),
        G=_conservative(qv, samples, J, params),
        tau=np.zeros(N_DOF) if tau is None else as_vector(tau, N_DOF, "tau"),
    )


def solve_inertia(M: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve M x = rhs by Cholesky factorization.

    Raises:
        NumericalDegeneracyError: if M is not numerically positive definite.
    """
    try:
        factor = cho_factor(M, lower=True)
    except (LinAlgError, ValueError) as e:
        min_eig = None
        if np.all(np.isfinite(M)):
            min_eig = float(eigvalsh(M, subset_by_index=[0, 0])[0])
        logger.debug(f"Cholesky factorization failed: {e}")
        raise NumericalDegeneracyError(
            f"inertia matrix is not positive definite (min eigenvalue {min_eig})",
            min_eigenvalue=min_eig,
        ) from e
    return cho_solve(factor, rhs)


def forward_dynamics(q, qdot, tau, contact_generalized, params: RobotParams) -> np.ndarray:
    """Generalized accelerations from Eq. M qdd = tau + contact - (C + D) qd - G."""
    terms = eom_terms(q, qdot, params, tau)
    contact = as_vector(contact_generalized, N_DOF, "contact_generalized")
    return solve_inertia(terms.M, terms.generalized_forces(_velocity(qdot), contact))


def total_energy(q, qdot, params: RobotParams) -> EnergyBreakdown:
    """Kinetic, gravitational and elastic energy of a state."""
    qv = configuration_vector(q)
    qd = _velocity(qdot)
    samples, p = _mass_points(qv, params, 1)
    M = _inertia(samples, p.grad)
    heights = p.val[:, 2]
    q_r = qv[N_BASE:]
    return EnergyBreakdown(
        kinetic=float(0.5 * qd @ M @ qd),
        gravitational=float(params.g * samples.weights @ heights),
        elastic=float(0.5 * params.K_elastic * q_r @ q_r),
    )
