"""Shared fixtures for the softsnake test suite."""

import numpy as np
import pytest

from softsnake.core.params import RobotParams
from softsnake.core.state import N_ACTUATED, N_DOF
from softsnake.kinematics.grid import skin_grid


@pytest.fixture
def params():
    return RobotParams()


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


@pytest.fixture
def grid(params):
    return skin_grid(params)


def random_configuration(rng, params, margin=0.005):
    """Reachable q with q_r strictly inside its bounds and alpha away from +-pi/2."""
    q = np.zeros(N_DOF)
    q[:3] = rng.uniform(-0.5, 0.5, 3)
    q[3] = rng.uniform(-1.0, 1.0)
    q[4] = rng.uniform(-np.pi, np.pi)
    q[5] = rng.uniform(-np.pi, np.pi)
    q[6:] = rng.uniform(margin, params.dl_max - margin, N_ACTUATED)
    return q


def random_velocity(rng, scale=0.5):
    return rng.normal(scale=scale, size=N_DOF)


@pytest.fixture
def random_states(rng, params):
    """Callable producing n seeded (q, qdot) pairs."""

    def make(n):
        return [(random_configuration(rng, params), random_velocity(rng)) for _ in range(n)]

    return make
