"""Plate-scattering model of one IRS element and the resulting path losses.

Each element is treated as a perfectly conducting rectangular plate lit by a
TE, x-polarised plane wave arriving in the yz-plane. Only the incidence polar
angle enters the pattern; the Tx azimuth does not. All quantities are linear
(no dB) and distances are in meters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import IrsGrid, Placement, element_distances, wavelength_from_frequency


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)


def dbm_to_watts(dbm):
    return 1e-3 * db_to_linear(dbm)


@dataclass(frozen=True)
class RfParams:
    """Radio parameters of a link. Gains are linear, powers in watts."""

    freq: float
    wavelength: float
    kappa_abs: float
    gain_tx: float
    gain_rx: float
    power_tx: float
    noise_density: float
    bandwidth: float

    def __post_init__(self):
        for name in ("freq", "wavelength", "gain_tx", "gain_rx", "power_tx", "noise_density", "bandwidth"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")
        if self.kappa_abs < 0:
            raise ValueError("absorption coefficient must be non-negative")

    @classmethod
    def from_db(
        cls,
        freq: float = 300e9,
        kappa_abs: float = 0.0033,
        gain_tx_dbi: float = 20.0,
        gain_rx_dbi: float = 20.0,
        power_tx_dbm: float = 10.0,
        noise_density_dbm_hz: float = -174.0,
        bandwidth: float = 10e9,
        nominal_wavelength: float | None = None,
    ) -> "RfParams":
        """Build from datasheet units. Defaults are the 300 GHz reference link."""
        return cls(
            freq=float(freq),
            wavelength=wavelength_from_frequency(freq, nominal_wavelength),
            kappa_abs=float(kappa_abs),
            gain_tx=float(db_to_linear(gain_tx_dbi)),
            gain_rx=float(db_to_linear(gain_rx_dbi)),
            power_tx=float(dbm_to_watts(power_tx_dbm)),
            noise_density=float(dbm_to_watts(noise_density_dbm_hz)),
            bandwidth=float(bandwidth),
        )

    @property
    def wavenumber(self) -> float:
        return 2 * math.pi / self.wavelength

    @property
    def noise_power(self) -> float:
        return self.noise_density * self.bandwidth


_HALF_PI = math.pi / 2 + 1e-12


@dataclass(frozen=True)
class ScatterAngles:
    """Incidence polar ``theta_t``, observation polar ``theta_r`` and scattering-plane azimuth ``phi_r``.

    Negative polar values are accepted so an observation sweep can cross
    broadside (theta_r in [-pi/2, pi/2]); terminals behind the surface are not.
    """

    theta_t: float
    theta_r: float
    phi_r: float

    def __post_init__(self):
        if abs(self.theta_t) > _HALF_PI or abs(self.theta_r) > _HALF_PI:
            raise ValueError("polar angles must lie in [-pi/2, pi/2] (terminal in front of the surface)")

    @classmethod
    def from_placements(cls, tx: Placement, rx: Placement) -> "ScatterAngles":
        return cls(tx.polar, rx.polar, rx.azimuth)


def incidence_factor(theta_t):
    return np.cos(theta_t) ** 2


def observation_factor(theta_r, phi_r):
    return np.cos(theta_r) ** 2 * np.cos(phi_r) ** 2 + np.sin(phi_r) ** 2


def pattern_f(angles: ScatterAngles) -> float:
    """Element scattering pattern, in [0, 1]."""
    return float(incidence_factor(angles.theta_t) * observation_factor(angles.theta_r, angles.phi_r))


def sinc(t):
    """Unnormalised sinc, sin(t)/t."""
    return np.sinc(np.asarray(t, dtype=float) / np.pi)


def _sinc_arguments(grid: IrsGrid, angles: ScatterAngles, wavelength: float):
    x = math.pi * grid.elem_len_x / wavelength * np.sin(angles.theta_r) * np.cos(angles.phi_r)
    y = math.pi * grid.elem_len_y / wavelength * (np.sin(angles.theta_r) * np.sin(angles.phi_r) - np.sin(angles.theta_t))
    return x, y


def scattered_field_sq_approx(e_i_sq: float, grid: IrsGrid, angles: ScatterAngles, d_r: float, wavelength: float):
    """Squared scattered E-field with both sinc factors set to one."""
    if d_r <= 0:
        raise ValueError("observation distance must be positive")
    area = grid.elem_len_x * grid.elem_len_y
    return (area / wavelength) ** 2 * e_i_sq / d_r**2 * pattern_f(angles)


def scattered_field_sq_exact(e_i_sq: float, grid: IrsGrid, angles: ScatterAngles, d_r: float, wavelength: float):
    """Squared physical-optics scattered E-field of one plate element."""
    x, y = _sinc_arguments(grid, angles, wavelength)
    return scattered_field_sq_approx(e_i_sq, grid, angles, d_r, wavelength) * float(sinc(x) ** 2 * sinc(y) ** 2)


def _check_positive(*arrays):
    for a in arrays:
        if np.any(np.asarray(a) <= 0):
            raise ValueError("distances must be positive")


def element_path_loss(params: RfParams, grid: IrsGrid, d_t, d_r, angles: ScatterAngles):
    """Tx-element-Rx path loss through one element (linear, <= 1).

    ``d_t`` and ``d_r`` may be arrays of matching shape.
    """
    _check_positive(d_t, d_r)
    d_t = np.asarray(d_t, dtype=float)
    d_r = np.asarray(d_r, dtype=float)
    area = grid.elem_len_x * grid.elem_len_y
    spreading = params.gain_tx * params.gain_rx * area**2 / (4 * math.pi * d_t * d_r) ** 2
    pl = spreading * pattern_f(angles) * np.exp(-params.kappa_abs * (d_t + d_r))
    return float(pl) if pl.ndim == 0 else pl


def tx_path_loss_factor(params: RfParams, grid: IrsGrid, d_t, theta_t: float):
    """Tx-to-element share of the element path loss.

    Together with :func:`rx_path_loss_factor` this multiplies back to
    :func:`element_path_loss`.
    """
    _check_positive(d_t)
    d_t = np.asarray(d_t, dtype=float)
    area = grid.elem_len_x * grid.elem_len_y
    return params.gain_tx * area * incidence_factor(theta_t) * np.exp(-params.kappa_abs * d_t) / (4 * math.pi * d_t**2)


def rx_path_loss_factor(params: RfParams, grid: IrsGrid, d_r, theta_r: float, phi_r: float):
    _check_positive(d_r)
    d_r = np.asarray(d_r, dtype=float)
    area = grid.elem_len_x * grid.elem_len_y
    return (
        params.gain_rx * area * observation_factor(theta_r, phi_r) * np.exp(-params.kappa_abs * d_r)
        / (4 * math.pi * d_r**2)
    )


def path_loss_map(params: RfParams, grid: IrsGrid, tx: Placement, rx: Placement) -> np.ndarray:
    """Per-element path loss with exact distances and the reference-element angle triple."""
    angles = ScatterAngles.from_placements(tx, rx)
    return element_path_loss(params, grid, element_distances(tx.cart, grid), element_distances(rx.cart, grid), angles)


def mimo_path_loss(params: RfParams, d_d):
    """Line-of-sight Friis loss of the direct link including molecular absorption."""
    _check_positive(d_d)
    d_d = np.asarray(d_d, dtype=float)
    pl = (
        params.gain_tx * params.gain_rx * params.wavelength**2 / (4 * math.pi * d_d) ** 2
        * np.exp(-params.kappa_abs * d_d)
    )
    return float(pl) if pl.ndim == 0 else pl
