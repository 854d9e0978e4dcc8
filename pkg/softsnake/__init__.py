"""softsnake - dynamics simulator for a three-section pneumatic soft robotic snake.

Floating-base constant-curvature kinematics, Lagrangian equations of motion,
a compliant ground with anisotropic friction and stiff time integration,
with drop-test and rolling-gait experiments on top.
"""

from softsnake.core.exceptions import (
    ConfigError,
    ConvergenceError,
    DivergenceError,
    InputDomainError,
    NumericalDegeneracyError,
    SoftSnakeError,
    StiffnessError,
    StorageError,
)
from softsnake.core.params import RobotParams
from softsnake.core.state import JointState, SimState
from softsnake.dynamics.eom import forward_dynamics
from softsnake.harness.config import ExperimentConfig, load_config
from softsnake.harness.experiments import run_drop_test, run_gait
from softsnake.integrator.config import IntegratorConfig
from softsnake.integrator.simulate import integrate
from softsnake.kinematics.transforms import full_htm

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DivergenceError",
    "InputDomainError",
    "NumericalDegeneracyError",
    "SoftSnakeError",
    "StiffnessError",
    "StorageError",
    "RobotParams",
    "JointState",
    "SimState",
    "forward_dynamics",
    "ExperimentConfig",
    "load_config",
    "run_drop_test",
    "run_gait",
    "IntegratorConfig",
    "integrate",
    "full_htm",
]
