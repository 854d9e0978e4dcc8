"""Configuration and simulation state records."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .exceptions import InputDomainError
from .params import RobotParams

N_BASE = 6
N_ACTUATED = 9
N_DOF = N_BASE + N_ACTUATED


def as_vector(value, size: int, name: str) -> np.ndarray:
    """Coerce to a finite float vector of the given size."""
    arr = np.asarray(value, dtype=float).reshape(-1)
    if arr.shape != (size,):
        raise InputDomainError(f"{name} must have {size} entries, got {arr.size}", name, arr.size)
    if not np.all(np.isfinite(arr)):
        raise InputDomainError(f"{name} must be finite", name, arr.tolist())
    return arr


@dataclass(frozen=True)
class JointState:
    """Floating-base configuration q = [q_b, q_r] with optional velocity.

    q_b = [x_b, y_b, z_b, alpha, beta, gamma]; q_r holds the nine PMA length
    changes in section-major order [l_11, l_12, l_13, l_21, ..., l_33].
    """

    q_b: np.ndarray
    q_r: np.ndarray
    qdot: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "q_b", as_vector(self.q_b, N_BASE, "q_b"))
        object.__setattr__(self, "q_r", as_vector(self.q_r, N_ACTUATED, "q_r"))
        if self.qdot is not None:
            object.__setattr__(self, "qdot", as_vector(self.qdot, N_DOF, "qdot"))

    @property
    def q(self) -> np.ndarray:
        return np.concatenate([self.q_b, self.q_r])

    @classmethod
    def from_vector(cls, q, qdot=None) -> "JointState":
        q = as_vector(q, N_DOF, "q")
        return cls(q_b=q[:N_BASE], q_r=q[N_BASE:], qdot=qdot)

    @classmethod
    def zeros(cls) -> "JointState":
        return cls(q_b=np.zeros(N_BASE), q_r=np.zeros(N_ACTUATED))


def check_lengths(lengths: np.ndarray, params: RobotParams, offset: int = 0) -> None:
    """Raise InputDomainError naming the first PMA outside [0, dl_max]."""
    for k, value in enumerate(np.asarray(lengths, dtype=float).reshape(-1)):
        if not 0.0 <= value <= params.dl_max:
            index = offset + k
            name = f"l_{index // 3 + 1}{index % 3 + 1}"
            raise InputDomainError(
                f"PMA {name} length change {value:.6g} m outside [0, {params.dl_max}]",
                name,
                float(value),
            )


@dataclass
class SimState:
    """Time-stamped point (t, q, qdot) of a simulated trajectory."""

    t: float
    q: np.ndarray
    qdot: np.ndarray = field(default_factory=lambda: np.zeros(N_DOF))

    def __post_init__(self):
        self.t = float(self.t)
        self.q = np.asarray(self.q, dtype=float).reshape(N_DOF)
        self.qdot = np.asarray(self.qdot, dtype=float).reshape(N_DOF)

    @property
    def y(self) -> np.ndarray:
        """Flat 30-vector [q; qdot]."""
        return np.concatenate([self.q, self.qdot])

    @classmethod
    def from_y(cls, t: float, y: np.ndarray) -> "SimState":
        y = np.asarray(y, dtype=float)
        return cls(t=t, q=y[:N_DOF].copy(), qdot=y[N_DOF:].copy())

    @property
    def joint_state(self) -> JointState:
        return JointState.from_vector(self.q, self.qdot)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.q)) and np.all(np.isfinite(self.qdot)))

    def limit_violation(self, params: RobotParams) -> float:
        """Largest distance of q_r outside [0, dl_max] (0 when within bounds)."""
        q_r = self.q[N_BASE:]
        below = np.max(-q_r, initial=0.0)
        above = np.max(q_r - params.dl_max, initial=0.0)
        return float(max(below, above, 0.0))

    def projected(self, params: RobotParams) -> "SimState":
        """Clip q_r into [0, dl_max] and drop velocities pointing further out."""
        q = self.q.copy()
        qdot = self.qdot.copy()
        q_r = q[N_BASE:]
        qd_r = qdot[N_BASE:]
        low = q_r < 0.0
        high = q_r > params.dl_max
        qd_r[low & (qd_r < 0.0)] = 0.0
        qd_r[high & (qd_r > 0.0)] = 0.0
        q[N_BASE:] = np.clip(q_r, 0.0, params.dl_max)
        qdot[N_BASE:] = qd_r
        return SimState(t=self.t, q=q, qdot=qdot)

    def to_dict(self) -> dict:
        return {"t": self.t, "q": self.q.tolist(), "qdot": self.qdot.tolist()}
