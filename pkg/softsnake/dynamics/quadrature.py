"""Mass quadrature over the three bending sections."""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from numpy.polynomial.legendre import leggauss

from ..core.params import RobotParams
from ..kinematics.transforms import radial_offsets

RING_POINTS = 3


@dataclass(frozen=True)
class MassSamples:
    """Point masses standing in for the continuous slices of every section.

    Each Gauss-Legendre node along a section carries a ring of three equal
    masses at the gyration radius, so that the slice has the principal
    moments of a thin disk of radius r_s. A zero gyration radius collapses
    the ring onto the backbone.
    """

    sections: np.ndarray
    xi: np.ndarray
    offsets: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return int(self.weights.size)

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())


@lru_cache(maxsize=32)
def _build(n_sections: int, n_nodes: int, section_mass: float, ring_radius: float) -> MassSamples:
    nodes, weights = leggauss(n_nodes)
    nodes = 0.5 * (nodes + 1.0)
    weights = 0.5 * weights * section_mass

    if ring_radius > 0.0:
        sigma = np.array([2.0 * math.pi * k / RING_POINTS for k in range(RING_POINTS)])
        ring = radial_offsets(sigma, ring_radius)
        share = 1.0 / RING_POINTS
    else:
        ring = np.zeros((1, 3))
        share = 1.0

    per_node = ring.shape[0]
    sections = np.repeat(np.arange(n_sections), n_nodes * per_node)
    xi = np.tile(np.repeat(nodes, per_node), n_sections)
    offsets = np.tile(ring, (n_sections * n_nodes, 1))
    w = np.tile(np.repeat(weights * share, per_node), n_sections)
    for arr in (sections, xi, offsets, w):
        arr.setflags(write=False)
    return MassSamples(sections=sections, xi=xi, offsets=offsets, weights=w)


def mass_samples(params: RobotParams, n_nodes: Optional[int] = None) -> MassSamples:
    """Quadrature points and masses for ``params`` (n_nodes per section)."""
    n = params.quadrature_nodes if n_nodes is None else int(n_nodes)
    return _build(params.n_sections, n, params.section_mass, params.ring_radius)
