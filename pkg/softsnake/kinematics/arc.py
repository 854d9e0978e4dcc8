"""Constant-curvature arc parameters of a three-PMA bending section."""

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from ..core.exceptions import InputDomainError
from ..core.params import RobotParams
from ..core.state import as_vector, check_lengths

SQRT3 = math.sqrt(3.0)

# Below this value of theta^2 the trigonometric ratios use their Taylor series.
SMALL_ANGLE_SQ = 0.25
_SERIES_TERMS = 12


@dataclass(frozen=True)
class ArcParameters:
    """Curvature kappa [1/m], bending-plane angle phi [rad], arc length s [m]."""

    kappa: float
    phi: float
    s: float

    @property
    def bend_angle(self) -> float:
        return self.kappa * self.s


def bending_coordinates(l1, l2, l3, params: RobotParams):
    """Bending vector (u, v) = kappa*s*(cos phi, sin phi) and arc length s.

    All three are linear in the length changes, so they stay smooth through
    the straight configuration. PMA j sits at angle (j-1)*2pi/3 on radius r_p
    and the section bends away from the PMAs that extend most.
    """
    scale = 1.0 / (3.0 * params.r_p)
    u = (l2 + l3 - 2.0 * l1) * scale
    v = (l3 - l2) * (SQRT3 * scale)
    s = (l1 + l2 + l3) * (1.0 / 3.0) + params.L0
    return u, v, s


def arc_params(lengths, params: RobotParams) -> ArcParameters:
    """Arc parameters of one section from its three PMA length changes.

    Raises:
        InputDomainError: if a length change lies outside [0, dl_max].
    """
    l1, l2, l3 = as_vector(lengths, 3, "lengths")
    check_lengths((l1, l2, l3), params)

    total = l1 + l2 + l3
    s = params.L0 + total / 3.0
    disc = l1 * l1 + l2 * l2 + l3 * l3 - l1 * l2 - l2 * l3 - l1 * l3
    if disc < params.eps_straight ** 2:
        return ArcParameters(kappa=0.0, phi=0.0, s=s)

    kappa = 2.0 * math.sqrt(disc) / (params.r_p * (3.0 * params.L0 + total))
    phi = math.atan2(SQRT3 * (l3 - l2), l2 + l3 - 2.0 * l1)
    if phi <= -math.pi:
        phi += 2.0 * math.pi
    return ArcParameters(kappa=kappa, phi=phi, s=s)


def _series_coefficients(offset: int) -> np.ndarray:
    return np.array(
        [(-1.0) ** k / math.factorial(2 * k + offset) for k in range(_SERIES_TERMS)]
    )


_SINC_SERIES = _series_coefficients(1)
_VERSINE_SERIES = _series_coefficients(2)


def _series_terms(x: np.ndarray, coeffs: np.ndarray):
    d1 = P.polyder(coeffs)
    d2 = P.polyder(d1)
    return P.polyval(x, coeffs), P.polyval(x, d1), P.polyval(x, d2)


def _via_root(t, g, g_t, g_tt):
    """Derivatives in x = t^2 of a function known in t."""
    f1 = g_t / (2.0 * t)
    f2 = (t * g_tt - g_t) / (4.0 * t ** 3)
    return g, f1, f2


def _split(x, series_coeffs, closed_form):
    x = np.asarray(x, dtype=float)
    small = x < SMALL_ANGLE_SQ
    xs = np.where(small, x, 0.0)
    t = np.sqrt(np.where(small, 1.0, x))
    series = _series_terms(xs, series_coeffs)
    closed = closed_form(t)
    return tuple(np.where(small, a, b) for a, b in zip(series, closed))


def _sinc_closed(t):
    s, c = np.sin(t), np.cos(t)
    g = s / t
    g_t = (t * c - s) / t ** 2
    g_tt = (-t * t * s - 2.0 * t * c + 2.0 * s) / t ** 3
    return _via_root(t, g, g_t, g_tt)


def _versine_closed(t):
    s, c = np.sin(t), np.cos(t)
    omc = 1.0 - c
    g = omc / t ** 2
    g_t = (t * s - 2.0 * omc) / t ** 3
    g_tt = (t * t * c - 4.0 * t * s + 6.0 * omc) / t ** 4
    return _via_root(t, g, g_t, g_tt)


def sinc_terms(theta_sq):
    """sin(t)/t as a function of x = t^2, with first and second x-derivatives."""
    return _split(theta_sq, _SINC_SERIES, _sinc_closed)


def versine_terms(theta_sq):
    """(1 - cos t)/t^2 as a function of x = t^2, with x-derivatives."""
    return _split(theta_sq, _VERSINE_SERIES, _versine_closed)


def check_fraction(xi, upper: float, name: str = "xi") -> float:
    xi = float(xi)
    if not 0.0 <= xi <= upper:
        raise InputDomainError(f"{name}={xi} outside [0, {upper}]", name, xi)
    return xi
