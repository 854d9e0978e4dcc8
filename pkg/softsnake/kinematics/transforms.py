"""Homogeneous transforms of backbone and skin points.

Every routine below is written against :mod:`softsnake.autodiff.jet`, so the
same code evaluates plain poses (float arrays) or poses carrying first and
second derivatives with respect to the 15 generalized coordinates (jets).

Conventions:

* Section frames: z along the backbone tangent at the section origin; PMA j
  is mounted at angle (j-1)*2pi/3 about z on radius r_p.
* Junctions: the tip of sections 1 and 2 is followed by a rigid spacer of
  length d_rigid along the local z axis and a rotation by mount_offset about
  it. The spacer behind section 3 is the end cap and carries no frame.
* Floating base: R_b = Ry(beta) @ Rx(alpha) @ Rz(gamma). The roll about the
  backbone is innermost, so a snake lying along world X (beta = pi/2) rolls
  through any angle without meeting the gimbal singularity, which sits at
  alpha = +-pi/2 (backbone parallel to world Y).
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..autodiff import jet as ad
from ..autodiff.jet import Jet
from ..core.exceptions import InputDomainError
from ..core.params import RobotParams
from ..core.state import N_BASE, N_DOF, JointState, as_vector, check_lengths
from .arc import bending_coordinates, check_fraction, sinc_terms, versine_terms

IDENTITY = np.eye(3)


@dataclass(frozen=True)
class Pose:
    """Rotation R and position p [m] of a frame, i.e. a homogeneous transform."""

    R: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "R", np.asarray(self.R, dtype=float).reshape(3, 3))
        object.__setattr__(self, "p", np.asarray(self.p, dtype=float).reshape(3))

    @classmethod
    def identity(cls) -> "Pose":
        return cls(IDENTITY.copy(), np.zeros(3))

    @property
    def matrix(self) -> np.ndarray:
        """4x4 homogeneous transformation matrix."""
        T = np.eye(4)
        T[:3, :3] = self.R
        T[:3, 3] = self.p
        return T

    def compose(self, other: "Pose") -> "Pose":
        return Pose(self.R @ other.R, self.p + self.R @ other.p)

    def orthonormality_error(self) -> float:
        return float(np.max(np.abs(self.R.T @ self.R - IDENTITY)))


# -- generic building blocks (floats or jets) --------------------------------


def _batch_ndim(items) -> int:
    return len(np.broadcast_shapes(*[np.shape(ad.value(it)) for it in items]))


def _vector(items):
    return ad.stack(items, axis=_batch_ndim(items))


def _matrix(rows):
    stacked = [_vector(row) for row in rows]
    return ad.stack(stacked, axis=_batch_ndim(stacked) - 1)


def rot_x(a):
    c, s = ad.cos(a), ad.sin(a)
    return _matrix([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rot_y(a):
    c, s = ad.cos(a), ad.sin(a)
    return _matrix([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rot_z(a):
    c, s = ad.cos(a), ad.sin(a)
    return _matrix([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def base_rotation(alpha, beta, gamma):
    """Floating-base orientation Ry(beta) @ Rx(alpha) @ Rz(gamma)."""
    return ad.matmul(ad.matmul(rot_y(beta), rot_x(alpha)), rot_z(gamma))


def section_frame(lengths, xi, params: RobotParams):
    """Backbone rotations and positions of one section at the fractions ``xi``.

    Uses R = I + F [w]x + G [w]x^2 with the rotation vector
    w = xi * (-v, u, 0), F = sin(t)/t, G = (1 - cos t)/t^2 and t = |w|, so the
    result is analytic in the length changes, straight sections included.

    Returns:
        (R, p) with shapes xi.shape + (3, 3) and xi.shape + (3,).
    """
    l1, l2, l3 = lengths
    u, v, s = bending_coordinates(l1, l2, l3, params)
    xi = np.asarray(xi, dtype=float)

    wx = -v * xi
    wy = u * xi
    theta_sq = wx * wx + wy * wy
    F = ad.chain(theta_sq, *sinc_terms(ad.value(theta_sq)))
    G = ad.chain(theta_sq, *versine_terms(ad.value(theta_sq)))

    Gwx, Gwy = G * wx, G * wy
    Fwx, Fwy = F * wx, F * wy
    R = _matrix([
        [1.0 - Gwy * wy, Gwx * wy, Fwy],
        [Gwx * wy, 1.0 - Gwx * wx, -Fwx],
        [-Fwy, Fwx, 1.0 - G * theta_sq],
    ])
    sxi = s * xi
    p = _vector([sxi * Gwy, -(sxi * Gwx), sxi * F])
    return R, p


def radial_offsets(sigma, radius) -> np.ndarray:
    """Skin offsets Rz(sigma) @ (r, 0, 0) in the section frame, shape (N, 3)."""
    sigma = np.atleast_1d(np.asarray(sigma, dtype=float))
    radius = np.broadcast_to(np.asarray(radius, dtype=float), sigma.shape)
    return np.stack([radius * np.cos(sigma), radius * np.sin(sigma), np.zeros_like(sigma)], axis=-1)


def split_axial(xi) -> Tuple[np.ndarray, np.ndarray]:
    """Split global axial coordinates into 0-based section indices and local fractions."""
    xi = np.asarray(xi, dtype=float)
    section = np.minimum(np.floor(xi), 2).astype(int)
    return section, xi - section


def chain_points(
    qv,
    sections: Sequence[int],
    xi_local: Sequence[float],
    offsets: np.ndarray,
    params: RobotParams,
    rotations: bool = False,
):
    """World positions of points attached to the snake.

    Args:
        qv: generalized coordinates, a float 15-vector or a 15-entry Jet.
        sections: 0-based section index of each point.
        xi_local: fraction along that section, in [0, 1].
        offsets: (N, 3) offsets expressed in the local section frame.
        params: robot parameters.
        rotations: also return the world rotation of each section frame.

    Returns:
        ``p`` of shape (N, 3), or ``(p, R)`` with R of shape (N, 3, 3).
    """
    sections = np.asarray(sections, dtype=int).reshape(-1)
    xi_local = np.asarray(xi_local, dtype=float).reshape(-1)
    offsets = np.asarray(offsets, dtype=float).reshape(-1, 3)

    R_b = base_rotation(qv[3], qv[4], qv[5])
    p_b = _vector([qv[0], qv[1], qv[2]])
    mount = rot_z(params.mount_offset)
    spacer = np.array([0.0, 0.0, params.d_rigid])

    base_R, base_p = IDENTITY, np.zeros(3)
    parts_p, parts_R, order = [], [], []
    last = int(sections.max())
    for i in range(last + 1):
        idx = np.flatnonzero(sections == i)
        has_tip = i < last
        eval_xi = np.append(xi_local[idx], 1.0) if has_tip else xi_local[idx]
        if eval_xi.size == 0:
            continue
        k = N_BASE + 3 * i
        R_s, p_s = section_frame((qv[k], qv[k + 1], qv[k + 2]), eval_xi, params)

        if idx.size:
            m = idx.size
            R_k, p_k = R_s[:m], p_s[:m]
            if np.any(offsets[idx]):
                p_k = p_k + ad.matvec(R_k, offsets[idx])
            A = ad.matmul(R_b, base_R)
            parts_p.append(p_b + ad.matvec(R_b, base_p) + ad.matvec(A, p_k))
            if rotations:
                parts_R.append(ad.matmul(A, R_k))
            order.append(idx)

        if has_tip:
            R_t, p_t = R_s[eval_xi.size - 1], p_s[eval_xi.size - 1]
            tip_p = p_t + ad.matvec(R_t, spacer)
            base_p = base_p + ad.matvec(base_R, tip_p)
            base_R = ad.matmul(base_R, ad.matmul(R_t, mount))

    inverse = np.argsort(np.concatenate(order))
    p = ad.concatenate(parts_p)[inverse]
    if rotations:
        return p, ad.concatenate(parts_R)[inverse]
    return p


# -- public operations ------------------------------------------------------


QLike = Union[JointState, np.ndarray, Sequence[float]]


def configuration_vector(q: QLike, params: Optional[RobotParams] = None) -> np.ndarray:
    """Flat 15-vector from a JointState or array; checks actuation bounds when params given."""
    if isinstance(q, JointState):
        vec = q.q
    else:
        vec = as_vector(q, N_DOF, "q")
    if params is not None:
        check_lengths(vec[N_BASE:], params)
    return vec


def _check_radius(r) -> float:
    r = float(r)
    if r < 0:
        raise InputDomainError(f"radius r={r} must be non-negative", "r", r)
    return r


def section_htm(lengths, xi, params: RobotParams) -> Pose:
    """Pose of the backbone point at fraction ``xi`` of one section.

    Raises:
        InputDomainError: for length changes outside [0, dl_max] or xi outside [0, 1].
    """
    lengths = as_vector(lengths, 3, "lengths")
    check_lengths(lengths, params)
    xi = check_fraction(xi, 1.0)
    R, p = section_frame(tuple(lengths), np.array([xi]), params)
    return Pose(R[0], p[0])


def skin_htm(lengths, xi, sigma, r, params: RobotParams) -> Pose:
    """Section pose followed by Rz(sigma) and a translation r along the new +X."""
    r = _check_radius(r)
    R_sigma = rot_z(float(sigma))
    return section_htm(lengths, xi, params).compose(Pose(R_sigma, R_sigma @ np.array([r, 0.0, 0.0])))


def full_htm(q: QLike, xi, sigma, r, params: RobotParams) -> Pose:
    """World pose of the skin point (xi, sigma, r), xi in [0, 3]."""
    qv = configuration_vector(q, params)
    xi = check_fraction(xi, 3.0)
    r = _check_radius(r)
    section, local = split_axial([xi])
    p, R = chain_points(qv, section, local, radial_offsets(sigma, r), params, rotations=True)
    return Pose(R[0] @ rot_z(float(sigma)), p[0])


def position_jacobian(q: QLike, xi, sigma, r, params: RobotParams) -> np.ndarray:
    """3x15 Jacobian of the full_htm position with respect to q."""
    qv = configuration_vector(q, params)
    xi = check_fraction(xi, 3.0)
    r = _check_radius(r)
    section, local = split_axial([xi])
    p = chain_points(Jet.variables(qv, 1), section, local, radial_offsets(sigma, r), params)
    return p.grad[0].copy()
