"""Discretisation of the snake's skin into contact sample points."""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..core.exceptions import InputDomainError
from ..core.params import RobotParams
from .transforms import radial_offsets


@dataclass(frozen=True)
class SkinGrid:
    """Product grid of axial stations and radial angles on the skin.

    ``xi_samples`` holds (section index i in 1..3, local fraction) pairs.
    Flattened point arrays are axial-major: point ``j * n_radial + k`` is
    station j at angle k, which is also the fixed summation order of contact
    wrenches.
    """

    xi_samples: Tuple[Tuple[int, float], ...]
    sigma_samples: Tuple[float, ...]
    radius: float

    @property
    def n_axial(self) -> int:
        return len(self.xi_samples)

    @property
    def n_radial(self) -> int:
        return len(self.sigma_samples)

    @property
    def n_points(self) -> int:
        return self.n_axial * self.n_radial

    @property
    def axial_coordinates(self) -> np.ndarray:
        """Global xi in [0, 3] of every axial station."""
        return np.array([i - 1 + local for i, local in self.xi_samples])

    def flatten(self):
        """Per-point arrays (xi, 0-based section, local fraction, sigma)."""
        sections = np.repeat([i - 1 for i, _ in self.xi_samples], self.n_radial)
        local = np.repeat([loc for _, loc in self.xi_samples], self.n_radial)
        sigma = np.tile(np.asarray(self.sigma_samples, dtype=float), self.n_axial)
        return sections + local, sections, local, sigma

    def offsets(self) -> np.ndarray:
        _, _, _, sigma = self.flatten()
        return radial_offsets(sigma, self.radius)

    def subset(self, stations) -> "SkinGrid":
        """Grid restricted to the given axial station indices."""
        return SkinGrid(tuple(self.xi_samples[j] for j in stations), self.sigma_samples, self.radius)


def skin_grid(params: RobotParams, n_axial: int = 31, n_radial: int = 10) -> SkinGrid:
    """Uniform grid of n_axial stations over xi in [0, 3] and n_radial angles 2 pi k / n."""
    if n_axial < 2:
        raise InputDomainError(f"n_axial={n_axial} must be at least 2", "n_axial", n_axial)
    if n_radial < 1:
        raise InputDomainError(f"n_radial={n_radial} must be at least 1", "n_radial", n_radial)

    stations = []
    for xi in np.linspace(0.0, float(params.n_sections), n_axial):
        i = min(int(math.floor(xi)) + 1, params.n_sections)
        stations.append((i, float(xi - (i - 1))))
    sigma = tuple(2.0 * math.pi * k / n_radial for k in range(n_radial))
    return SkinGrid(tuple(stations), sigma, params.r_s)
