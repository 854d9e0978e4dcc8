"""Length-to-pressure mapping of the extension PMAs."""

import numpy as np

from ..core.params import RobotParams
from ..core.state import N_ACTUATED, as_vector, check_lengths


def length_to_pressure(lengths, params: RobotParams) -> np.ndarray:
    """Gauge pressures [bar] that statically produce the given length changes.

    The default map is affine, P = l / c with c = dl_max / p_max; a
    ``pressure_calibration`` table in the parameters replaces it by linear
    interpolation.

    Raises:
        InputDomainError: if a length change is outside [0, dl_max].
    """
    lengths = as_vector(lengths, N_ACTUATED, "lengths")
    check_lengths(lengths, params)
    table = params.pressure_calibration
    if table is None:
        return lengths / params.length_per_bar
    xs, ps = zip(*table)
    return np.interp(lengths, xs, ps)


def pressure_to_length(pressures, params: RobotParams) -> np.ndarray:
    """Inverse of :func:`length_to_pressure` for the static equilibrium length."""
    pressures = np.asarray(pressures, dtype=float)
    table = params.pressure_calibration
    if table is None:
        return pressures * params.length_per_bar
    xs, ps = zip(*table)
    return np.interp(pressures, ps, xs)
